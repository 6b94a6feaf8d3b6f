#include <catch2/catch_amalgamated.hpp>

#include "nrasat/families.hpp"
#include "nrasat/smt2.hpp"

using namespace nrasat;

namespace {
Result solve_text(const std::string& text, const EngineConfig& cfg = EngineConfig{}) {
    smt2::Script sc = smt2::parse(text);
    Solver solver(smt2::to_formula(std::move(sc)), cfg);
    return solver.solve();
}
}  // namespace

TEST_CASE("path_case family: satisfiable, look-ahead avoids conflicts") {
    for (int n : {2, 5, 9}) {
        std::string text = families::path_case(n);
        Result la = solve_text(text);
        CHECK(la.verdict == Verdict::sat);
        CHECK(la.stats.conflicts == 0);

        EngineConfig lower;
        lower.literal_decision = LiteralDecision::lower_degree;
        Result ld = solve_text(text, lower);
        CHECK(ld.verdict == Verdict::sat);
        CHECK(ld.stats.conflicts > 0);  // the decoy literal comes first
    }
}

TEST_CASE("block_case(1): UNSAT via the shortcut") {
    Result r = solve_text(families::block_case(1));
    CHECK(r.verdict == Verdict::unsat);
    CHECK(r.stats.lemmas_learned == 0);
    CHECK(r.stats.explain_calls == 0);
}

TEST_CASE("block_case(n): UNSAT through resolution across stages") {
    for (int n : {2, 4}) {
        Result r = solve_text(families::block_case(n));
        CHECK(r.verdict == Verdict::unsat);
        CHECK(r.stats.conflicts >= 1);
    }
}

TEST_CASE("fixed_chain: satisfiable with all variables at forced values") {
    std::string text = families::fixed_chain(3);
    smt2::Script sc = smt2::parse(text);
    smt2::Script view = sc;
    Solver solver(smt2::to_formula(std::move(sc)), EngineConfig{});
    Result r = solver.solve();
    REQUIRE(r.verdict == Verdict::sat);
    // u3 = 1, u2 = 2, u1 = 3
    CHECK(compare(*r.model.arith[2], RAValue(Rational(1))) == 0);
    CHECK(compare(*r.model.arith[1], RAValue(Rational(2))) == 0);
    CHECK(compare(*r.model.arith[0], RAValue(Rational(3))) == 0);
    // prop-vsids needs no conflicts: every stage is a fixed case
    CHECK(r.stats.conflicts == 0);
}

TEST_CASE("family verdicts agree across heuristic modes") {
    for (auto gen : {families::path_case, families::block_case, families::fixed_chain}) {
        for (int n : {2, 3}) {
            std::string text = gen(n);
            std::optional<Verdict> expect;
            for (Mode m : {Mode::nlsat_static, Mode::vsids, Mode::prop_vsids}) {
                for (LiteralDecision d :
                     {LiteralDecision::look_ahead, LiteralDecision::lower_degree}) {
                    EngineConfig cfg;
                    cfg.mode = m;
                    cfg.literal_decision = d;
                    Result r = solve_text(text, cfg);
                    REQUIRE(r.verdict != Verdict::unknown);
                    if (!expect)
                        expect = r.verdict;
                    else
                        CHECK(*expect == r.verdict);
                }
            }
        }
    }
}

TEST_CASE("generator rejects bad input") {
    CHECK_THROWS_AS(families::generate("nope", 3), std::invalid_argument);
    CHECK_THROWS_AS(families::path_case(0), std::invalid_argument);
}
