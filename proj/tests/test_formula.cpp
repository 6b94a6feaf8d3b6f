#include <catch2/catch_amalgamated.hpp>

#include "nrasat/formula.hpp"

using namespace nrasat;

namespace {
const ArithVar X = 0, Y = 1;
Polynomial px() { return Polynomial::variable(X); }
Polynomial py() { return Polynomial::variable(Y); }
Polynomial k(long c) { return Polynomial::constant(Rational(c)); }
}  // namespace

TEST_CASE("atom normalization identity") {
    AtomTable at;
    // p >= 0 and -p <= 0 yield the same atom.
    AtomId a = at.mk_poly(py() - px(), PolyOp::ge);
    AtomId b = at.mk_poly(px() - py(), PolyOp::le);
    CHECK(a == b);
    // scaling by a positive rational collapses too
    AtomId c = at.mk_poly(Rational(2, 3) * (py() - px()), PolyOp::ge);
    CHECK(a == c);
    // hash-consing is stable
    CHECK(at.mk_poly(py() - px(), PolyOp::ge) == a);
    CHECK_THROWS_AS(at.mk_poly(k(3), PolyOp::ge), std::invalid_argument);
}

TEST_CASE("literal negation folding") {
    AtomTable at;
    Literal l1 = mk_poly_literal(at, px(), PolyOp::lt, true);  // not(x<0) => x>=0
    CHECK(!l1.neg);
    CHECK(at[l1.atom].op == PolyOp::ge);
    Literal l2 = mk_poly_literal(at, px(), PolyOp::eq, true);  // disequality stays negated
    CHECK(l2.neg);
    CHECK(at[l2.atom].op == PolyOp::eq);
}

TEST_CASE("evaluate_literal three-valued") {
    AtomTable at;
    ArithAssignment al;
    auto bools = [](BoolVar b) { return b == 0 ? LBool::false_ : LBool::undef; };
    Literal lb{at.mk_bool(0), false};
    CHECK(evaluate_literal(at, lb, al, bools) == LBool::false_);
    CHECK(evaluate_literal(at, negate(lb), al, bools) == LBool::true_);

    Literal gt2 = mk_poly_literal(at, py() * py() - k(2), PolyOp::gt, false);
    al.set(X, RAValue(Rational(0)));
    CHECK(evaluate_literal(at, gt2, al, bools) == LBool::undef);

    Literal sum = mk_poly_literal(at, py() + px(), PolyOp::gt, false);
    al.set(Y, RAValue(Rational(1)));
    CHECK(evaluate_literal(at, sum, al, bools) == LBool::true_);

    // root atom evaluation incl. out-of-range semantics
    AtomId ra = at.mk_root(Y, PolyOp::lt, 1, py() * py() - k(2));
    CHECK(evaluate_literal(at, Literal{ra, false}, al, bools) == LBool::false_);  // 1 < -sqrt2 ?
    AtomId oor = at.mk_root(Y, PolyOp::lt, 5, py() * py() - k(2));
    CHECK(evaluate_literal(at, Literal{oor, false}, al, bools) == LBool::false_);
    CHECK(evaluate_literal(at, Literal{oor, true}, al, bools) == LBool::true_);
}

TEST_CASE("clause vars") {
    AtomTable at;
    Literal lb{at.mk_bool(3), false};
    Literal lp = mk_poly_literal(at, py() + px(), PolyOp::gt, false);
    auto vs = clause_vars(at, {lb, lp, lb});
    REQUIRE(vs.size() == 3);
    CHECK(vs[0] == Var::boolean(3));
    CHECK(vs[1] == Var::arith(X));
    CHECK(vs[2] == Var::arith(Y));
}

TEST_CASE("rendering literals") {
    AtomTable at;
    auto name = [](ArithVar v) { return v == 0 ? "x" : "y"; };
    Literal l = mk_poly_literal(at, py() * py() + px() + k(1), PolyOp::le, false);
    CHECK(literal_to_string(at, l, name) == "(<= (+ (^ y 2) x 1) 0)");
    Literal neq = mk_poly_literal(at, px(), PolyOp::eq, true);
    CHECK(literal_to_string(at, neq, name) == "(not (= x 0))");
    AtomId ra = at.mk_root(Y, PolyOp::lt, 2, py() * py() - k(2));
    CHECK(literal_to_string(at, Literal{ra, false}, name) ==
          "(< y (root (+ (^ y 2) (- 2)) 2 y))");
}
