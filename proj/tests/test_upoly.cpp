#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nrasat/upoly.hpp"
#include "test_util.hpp"

using namespace nrasat;
using namespace nrasat::upoly;

namespace {
ZPoly zp(std::initializer_list<long> cs) {
    ZPoly p;
    for (long c : cs) p.push_back(Integer(c));
    normalize(p);
    return p;
}
}  // namespace

TEST_CASE("descartes isolation basics") {
    auto rs = isolate_roots(zp({-2, 0, 1}));  // x^2 - 2
    REQUIRE(rs.size() == 2);
    CHECK(!rs[0].exact);
    CHECK(!rs[1].exact);
    CHECK(rs[0].hi <= 0);
    CHECK(rs[1].lo >= 0);

    auto rs2 = isolate_roots(zp({8, 6, 1}));  // (x+2)(x+4)
    REQUIRE(rs2.size() == 2);
    CHECK((rs2[0].exact && rs2[0].value == -4));
    CHECK((rs2[1].exact && rs2[1].value == -2));

    CHECK(isolate_roots(zp({3, 0, 1})).empty());  // x^2 + 3
    CHECK_THROWS_AS(isolate_roots(ZPoly{}), std::invalid_argument);
}

TEST_CASE("rational roots found exactly") {
    // (3x-1)(x+3)(x-1)^2
    ZPoly p = mul(mul(zp({-1, 3}), zp({3, 1})), mul(zp({-1, 1}), zp({-1, 1})));
    auto rs = isolate_roots(p);
    REQUIRE(rs.size() == 3);
    CHECK((rs[0].exact && rs[0].value == -3));
    CHECK((rs[1].exact && rs[1].value == Rational(1, 3)));
    CHECK((rs[2].exact && rs[2].value == 1));
}

TEST_CASE("isolation against Sturm and float sampling on random polynomials") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 120; ++round) {
        unsigned deg = 1 + rng() % 8;
        ZPoly p(deg + 1);
        for (auto& c : p) c = Integer(static_cast<long>(rng() % 21) - 10);
        normalize(p);
        if (degree(p) < 1) continue;
        auto rs = isolate_roots(p);
        // Sturm count agrees.
        CHECK(static_cast<int>(rs.size()) == count_real_roots(square_free_part(p)));
        // Intervals pairwise disjoint and ordered.
        for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
            Rational hi_a = rs[i].exact ? rs[i].value : rs[i].hi;
            Rational lo_b = rs[i + 1].exact ? rs[i + 1].value : rs[i + 1].lo;
            CHECK(hi_a <= lo_b);
        }
        // Every float-sampled sign change lies in some isolating interval.
        double bound = 0;
        for (auto& c : p) bound = std::max(bound, std::abs(c.get_d()));
        double lead = std::abs(p.back().get_d());
        double B = 1 + bound / lead;
        auto fval = [&](double x) {
            double r = 0;
            for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i].get_d();
            return r;
        };
        int steps = 2000;
        for (int s = 0; s < steps; ++s) {
            double x0 = -B + 2 * B * s / steps, x1 = -B + 2 * B * (s + 1) / steps;
            if (fval(x0) * fval(x1) < 0) {
                bool covered = false;
                for (auto& r : rs) {
                    double lo = r.exact ? r.value.get_d() : r.lo.get_d();
                    double hi = r.exact ? r.value.get_d() : r.hi.get_d();
                    if (hi >= x0 - 1e-9 && lo <= x1 + 1e-9) covered = true;
                }
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("sturm interval counting") {
    ZPoly p = zp({-1, -1, 0, 1});  // x^3 - x - 1, one real root ~1.3247
    CHECK(count_real_roots(p) == 1);
    CHECK(count_roots_in(p, Rational(1), Rational(2)) == 1);
    CHECK(count_roots_in(p, Rational(-2), Rational(1)) == 0);
}

TEST_CASE("gcd and square-free part") {
    ZPoly a = mul(zp({-1, 1}), zp({-2, 1}));  // (x-1)(x-2)
    ZPoly b = mul(zp({-1, 1}), zp({3, 1}));   // (x-1)(x+3)
    CHECK(gcd(a, b) == zp({-1, 1}));
    ZPoly sq = mul(zp({-1, 1}), zp({-1, 1}));
    CHECK(square_free_part(sq) == zp({-1, 1}));
}

TEST_CASE("nonzero root lower bound") {
    ZPoly p = zp({-2, 0, 1});
    Rational m = nonzero_root_lower_bound(p);
    CHECK(m > 0);
    CHECK(m < Rational(15, 10));  // sqrt(2) is a root, bound must be below it
}
