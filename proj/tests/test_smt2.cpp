#include <catch2/catch_amalgamated.hpp>

#include "nrasat/smt2.hpp"

using namespace nrasat;
using nrasat::smt2::parse;
using nrasat::smt2::ParseError;

TEST_CASE("parse a basic script") {
    auto sc = parse("(set-logic QF_NRA)\n"
                    "(declare-fun x () Real)(declare-fun y () Real)\n"
                    "(assert (<= (+ (* y y) x 1) 0))(check-sat)");
    CHECK(sc.logic_set);
    REQUIRE(sc.commands.size() == 2);
    CHECK(sc.commands[0].kind == smt2::Script::Command::Kind::assert_);
    // the assertion is a single normalized atom: y^2 + x + 1 <= 0
    const smt2::BExpr& e = sc.commands[0].expr;
    REQUIRE(e.op == smt2::BExpr::Op::lit);
    const Atom& a = sc.atoms[e.lit.atom];
    CHECK(a.op == PolyOp::le);
    CHECK(a.poly.degree(1) == 2);
    CHECK(a.poly.degree(0) == 1);
}

TEST_CASE("parse errors carry position and kind") {
    CHECK_THROWS_AS(parse("(set-logic QF_LIA)"), ParseError);
    CHECK_THROWS_AS(parse("(assert (< x 1))"), ParseError);          // unknown symbol
    CHECK_THROWS_AS(parse("(declare-fun f (Real) Real)"), ParseError);  // arity
    CHECK_THROWS_AS(parse("(declare-fun x () Int)"), ParseError);    // sort
    CHECK_THROWS_AS(parse("(assert (forall ((q Real)) (> q 0)))"), ParseError);
    CHECK_THROWS_AS(parse("(assert"), ParseError);                   // lexical / unbalanced
    try {
        parse("(set-logic QF_LIA)");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unsupported logic") != std::string::npos);
    }
}

TEST_CASE("decimals and rationals are exact") {
    auto sc = parse("(declare-fun x () Real)(assert (= x 2.5))(check-sat)");
    const Atom& a = sc.atoms[sc.commands[0].expr.lit.atom];
    // 2x - 5 = 0 normalized primitive
    CHECK(a.poly == Rational(2) * Polynomial::variable(0) - Polynomial::constant(5));
    auto sc2 = parse("(declare-fun x () Real)(assert (= x (/ 1 3)))(check-sat)");
    const Atom& a2 = sc2.atoms[sc2.commands[0].expr.lit.atom];
    CHECK(a2.poly == Rational(3) * Polynomial::variable(0) - Polynomial::constant(1));
}

TEST_CASE("polynomial normalization maps equal atoms to one identity") {
    auto sc = parse("(declare-fun y () Real)"
                    "(assert (>= (* y y) 0))(assert (<= (- (* y y)) 0))"
                    "(assert (> (^ y 2) 1))(assert (> (* y y) 1))(check-sat)");
    CHECK(sc.commands[0].expr.lit == sc.commands[1].expr.lit);
    CHECK(sc.commands[2].expr.lit == sc.commands[3].expr.lit);
}

TEST_CASE("example clause parses into the expected literals") {
    auto sc = parse("(declare-fun b () Bool)(declare-fun x () Real)(declare-fun y () Real)"
                    "(assert (or b (> (+ y x) 0) (> (* y y) 2)))(check-sat)");
    const smt2::BExpr& e = sc.commands[0].expr;
    REQUIRE(e.op == smt2::BExpr::Op::or_);
    REQUIRE(e.kids.size() == 3);
    CHECK(sc.atoms[e.kids[0].lit.atom].kind == Atom::Kind::boolean);
    CHECK(sc.atoms[e.kids[1].lit.atom].op == PolyOp::gt);
}

TEST_CASE("to_cnf: already clausal input stays flat") {
    auto sc = parse("(declare-fun a () Bool)(declare-fun b () Bool)"
                    "(declare-fun c () Bool)(declare-fun d () Bool)"
                    "(assert (or a b))(assert (or c d))(check-sat)");
    auto clauses = smt2::to_cnf(sc);
    CHECK(clauses.size() == 2);
    CHECK(sc.vars.num_bool() == 4);  // no auxiliaries
}

TEST_CASE("to_cnf: Tseitin for or-over-and") {
    auto sc = parse("(declare-fun a () Bool)(declare-fun b () Bool)(declare-fun c () Bool)"
                    "(assert (or (and a b) c))(check-sat)");
    auto clauses = smt2::to_cnf(sc);
    CHECK(sc.vars.num_bool() == 4);  // one auxiliary
    CHECK(clauses.size() == 4);      // defining clauses (3) + (t v c)
}

TEST_CASE("to_cnf: implication eliminates into a clause") {
    auto sc = parse("(declare-fun a () Bool)(declare-fun b () Bool)"
                    "(assert (=> a b))(check-sat)");
    auto clauses = smt2::to_cnf(sc);
    REQUIRE(clauses.size() == 1);
    REQUIRE(clauses[0].size() == 2);
    CHECK(clauses[0][0].neg != clauses[0][1].neg);
}

TEST_CASE("to_cnf equisatisfiability on boolean abstractions") {
    // All boolean shapes up to 4 atoms: compare truth-table satisfiability of
    // the original formula with CNF satisfiability (over extended vars).
    struct Shape {
        const char* text;
        int nvars;
    };
    std::vector<Shape> shapes = {
        {"(or (and a b) c)", 3},
        {"(and (or a b) (or (not a) c))", 3},
        {"(not (and a b))", 2},
        {"(not (or (and a b) (and c d)))", 4},
        {"(=> (and a b) (or c d))", 4},
        {"(ite a b c)", 3},
        {"(or (and a (not b)) (and (not a) b))", 2},
        {"(and a (or b (and c (not d))))", 4},
    };
    const char* names[] = {"a", "b", "c", "d"};
    for (auto& sh : shapes) {
        std::string decls;
        for (int i = 0; i < sh.nvars; ++i)
            decls += "(declare-fun " + std::string(names[i]) + " () Bool)";
        auto sc = parse(decls + "(assert " + sh.text + ")(check-sat)");
        auto clauses = smt2::to_cnf(sc);
        std::size_t total = sc.vars.num_bool();
        // brute-force truth tables
        auto lit_true = [&](Literal l, unsigned assign) {
            BoolVar b = sc.atoms[l.atom].bvar;
            bool v = (assign >> b) & 1;
            return v != l.neg;
        };
        bool orig_sat = false, cnf_sat = false;
        for (unsigned assign = 0; assign < (1u << total); ++assign) {
            std::function<bool(const smt2::BExpr&)> ev = [&](const smt2::BExpr& e) -> bool {
                switch (e.op) {
                    case smt2::BExpr::Op::lit: return lit_true(e.lit, assign);
                    case smt2::BExpr::Op::not_: return !ev(e.kids[0]);
                    case smt2::BExpr::Op::true_: return true;
                    case smt2::BExpr::Op::false_: return false;
                    case smt2::BExpr::Op::and_: {
                        for (auto& k : e.kids)
                            if (!ev(k)) return false;
                        return true;
                    }
                    case smt2::BExpr::Op::or_: {
                        for (auto& k : e.kids)
                            if (ev(k)) return true;
                        return false;
                    }
                }
                return false;
            };
            if ((assign >> sh.nvars) == 0 && ev(sc.commands[0].expr)) orig_sat = true;
            bool all = true;
            for (auto& cls : clauses) {
                bool sat = false;
                for (Literal l : cls)
                    if (lit_true(l, assign)) sat = true;
                if (!sat) all = false;
            }
            if (all) cnf_sat = true;
        }
        CHECK(orig_sat == cnf_sat);
    }
}

TEST_CASE("round-trip: printing a parsed assertion reparses identically") {
    auto sc = parse("(declare-fun x () Real)(declare-fun y () Real)"
                    "(assert (<= (+ (* y y) x 1) 0))"
                    "(assert (> (- (* 3 x y) (/ 1 2)) 0))(check-sat)");
    for (std::size_t i = 0; i < 2; ++i) {
        Literal l = sc.commands[i].expr.lit;
        std::string printed = literal_to_string(
            sc.atoms, l, [&](ArithVar v) { return sc.vars.arith_name(v); }, &sc.vars);
        auto sc2 = parse("(declare-fun x () Real)(declare-fun y () Real)(assert " + printed +
                         ")(check-sat)");
        Literal l2 = sc2.commands[0].expr.lit;
        CHECK(sc2.atoms[l2.atom].poly == sc.atoms[l.atom].poly);
        CHECK(sc2.atoms[l2.atom].op == sc.atoms[l.atom].op);
        CHECK(l2.neg == l.neg);
    }
}

TEST_CASE("let bindings with standard scoping") {
    auto sc = parse("(declare-fun x () Real)"
                    "(assert (let ((s (* x x))) (> (+ s s) 1)))(check-sat)");
    const Atom& a = sc.atoms[sc.commands[0].expr.lit.atom];
    CHECK(a.poly.degree(0) == 2);
}

TEST_CASE("model printing") {
    auto sc = parse("(declare-fun x () Real)(declare-fun y () Real)(declare-fun b () Bool)"
                    "(assert (> x 0))(check-sat)(get-model)");
    Model m;
    m.arith.resize(2);
    m.arith[0] = RAValue(Rational(-2));
    m.arith[1] = RAValue(Rational(0));
    m.booleans = {LBool::false_};
    std::string out = smt2::print_model(sc, sc.vars, m);
    CHECK(out.find("(define-fun x () Real (- 2))") != std::string::npos);
    CHECK(out.find("(define-fun y () Real 0)") != std::string::npos);
    CHECK(out.find("(define-fun b () Bool false)") != std::string::npos);
    // algebraic value rendering
    auto roots = real_roots(upoly::ZPoly{Integer(-2), Integer(0), Integer(1)});
    m.arith[1] = roots[1];
    std::string out2 = smt2::print_model(sc, sc.vars, m);
    CHECK(out2.find("root(y^2 - 2, 2)") != std::string::npos);
    CHECK(out2.find("1.41421") != std::string::npos);
}

TEST_CASE("end-to-end: parse, solve, model") {
    auto sc = parse("(set-logic QF_NRA)(declare-fun x () Real)(declare-fun y () Real)"
                    "(assert (<= (+ (* y y) x 1) 0))(check-sat)");
    smt2::Script view = sc;
    Solver solver(smt2::to_formula(std::move(sc)), EngineConfig{});
    Result r = solver.solve();
    REQUIRE(r.verdict == Verdict::sat);
    std::string out = smt2::print_model(view, solver.vars(), r.model);
    CHECK(out.find("define-fun x") != std::string::npos);
}
