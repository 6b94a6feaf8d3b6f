#include <catch2/catch_amalgamated.hpp>

#include "nrasat/interval_set.hpp"
#include "test_util.hpp"

using namespace nrasat;

namespace {
IntervalSet closed(long a, long b) {
    return IntervalSet::interval(Bound::lo_closed(ExtValue(RAValue(Rational(a)))),
                                 Bound::hi_closed(ExtValue(RAValue(Rational(b)))));
}
IntervalSet open(long a, long b) {
    return IntervalSet::interval(Bound::lo_open(ExtValue(RAValue(Rational(a)))),
                                 Bound::hi_open(ExtValue(RAValue(Rational(b)))));
}

/// Random interval set over small integer bounds.
IntervalSet rand_set(std::mt19937_64& rng) {
    std::vector<Interval> ivs;
    unsigned n = rng() % 4;
    for (unsigned i = 0; i < n; ++i) {
        long a = static_cast<long>(rng() % 21) - 10;
        long b = a + static_cast<long>(rng() % 6);
        bool lo_open = rng() & 1, hi_open = rng() & 1;
        ExtValue ea{RAValue(Rational(a))}, eb{RAValue(Rational(b))};
        Interval iv{lo_open ? Bound::lo_open(ea) : Bound::lo_closed(ea),
                    hi_open ? Bound::hi_open(eb) : Bound::hi_closed(eb)};
        ivs.push_back(iv);
    }
    if (n && (rng() % 4 == 0)) ivs.push_back({Bound::minus_inf(), ivs[0].hi});
    return IntervalSet::from_intervals(std::move(ivs));
}

bool canonical(const IntervalSet& s) {
    const auto& ivs = s.intervals();
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        if (compare(ivs[i].lo, ivs[i].hi) > 0) return false;
        if (i + 1 < ivs.size()) {
            // disjoint and non-adjacent
            if (compare(ivs[i + 1].lo, ivs[i].hi) <= 0) return false;
            if (compare(ivs[i + 1].lo.value, ivs[i].hi.value) == 0 &&
                ivs[i + 1].lo.eps == ivs[i].hi.eps + 1)
                return false;
        }
    }
    return true;
}
}  // namespace

TEST_CASE("complement examples") {
    CHECK(complement(IntervalSet::empty_set()) == IntervalSet::full_set());
    CHECK(complement(closed(2, 4)).to_string() == "(-oo, 2) ∪ (4, +oo)");
    auto roots = real_roots(upoly::ZPoly{Integer(-2), Integer(0), Integer(1)});
    auto ex1 = set_union(IntervalSet::interval(Bound::minus_inf(), Bound::hi_open(ExtValue(roots[0]))),
                         IntervalSet::interval(Bound::lo_open(ExtValue(RAValue(Rational(0)))),
                                               Bound::plus_inf()));
    IntervalSet c = complement(ex1);
    REQUIRE(c.intervals().size() == 1);
    CHECK(compare(c.intervals()[0].lo.value.value, roots[0]) == 0);
    CHECK(!c.intervals()[0].lo_open());
    CHECK(compare(c.intervals()[0].hi.value.value, RAValue(Rational(0))) == 0);
    CHECK(!c.intervals()[0].hi_open());
}

TEST_CASE("union examples (paper interval views)") {
    auto c1 = set_union(closed(-4, -2), closed(2, 4));
    CHECK(c1.to_string() == "[-4, -2] ∪ [2, 4]");
    CHECK(set_union(c1, IntervalSet::empty_set()) == c1);
}

TEST_CASE("intersection examples: path and block cases") {
    auto c1 = set_union(closed(-4, -2), closed(2, 4));
    auto c2 = set_union(closed(-6, -5), closed(1, 5));
    CHECK(set_intersect(c1, c2) == closed(2, 4));
    auto c3 = set_union(closed(-6, -5), closed(5, 6));
    CHECK(set_intersect(c1, c3).empty());
    CHECK(set_intersect(c1, IntervalSet::full_set()) == c1);
}

TEST_CASE("post-lemma feasible set narrowing") {
    auto d1 = set_union(closed(-7, -2), closed(2, 8));
    auto d2 = set_union(closed(-11, -10), closed(-6, 5));
    auto lemma = set_union(closed(3, 4), closed(7, 8));
    auto pre = set_intersect(d1, d2);
    CHECK(pre == set_union(closed(-6, -2), closed(2, 5)));
    CHECK(set_intersect(pre, lemma) == closed(3, 4));
}

TEST_CASE("classify") {
    CHECK(IntervalSet::empty_set().classify() == IntervalSet::Class::empty);
    CHECK(closed(2, 2).classify() == IntervalSet::Class::single_point);
    CHECK(closed(2, 2).point_value().rational_value() == 2);
    auto norm = set_union(IntervalSet::interval(Bound::minus_inf(),
                                                Bound::hi_closed(ExtValue(RAValue(Rational(-2))))),
                          closed(2, 6));
    CHECK(norm.classify() == IntervalSet::Class::other);
}

TEST_CASE("contains") {
    CHECK(closed(2, 4).contains(RAValue(Rational(3))));
    CHECK(!closed(-6, -5).contains(RAValue(Rational(3))));
    auto pos = IntervalSet::interval(Bound::lo_open(ExtValue(RAValue(Rational(0)))),
                                     Bound::plus_inf());
    CHECK(!pos.contains(RAValue(Rational(0))));
}

TEST_CASE("pick_witness preference order") {
    CHECK(closed(2, 2).pick_witness().rational_value() == 2);
    CHECK(closed(2, 4).pick_witness().rational_value() == 2);
    auto roots = real_roots(upoly::ZPoly{Integer(-2), Integer(0), Integer(1)});
    auto ex1 = set_union(IntervalSet::interval(Bound::minus_inf(), Bound::hi_open(ExtValue(roots[0]))),
                         IntervalSet::interval(Bound::lo_open(ExtValue(RAValue(Rational(0)))),
                                               Bound::plus_inf()));
    CHECK(ex1.pick_witness().rational_value() == 1);
    // single irrational point
    auto pt = IntervalSet::point(roots[1]);
    CHECK(compare(pt.pick_witness(), roots[1]) == 0);
    CHECK_THROWS_AS(IntervalSet::empty_set().pick_witness(), std::invalid_argument);
}

TEST_CASE("interval-algebra property suite") {
    std::mt19937_64 rng(20240809);
    int checks = 0;
    for (int round = 0; round < 2500; ++round) {
        IntervalSet a = rand_set(rng), b = rand_set(rng);
        // canonical outputs
        CHECK(canonical(a));
        CHECK(canonical(set_union(a, b)));
        CHECK(canonical(set_intersect(a, b)));
        CHECK(canonical(complement(a)));
        // double complement
        CHECK(complement(complement(a)) == a);
        // De Morgan
        CHECK(complement(set_union(a, b)) == set_intersect(complement(a), complement(b)));
        CHECK(complement(set_intersect(a, b)) == set_union(complement(a), complement(b)));
        // membership consistency
        for (int probe = 0; probe < 4; ++probe) {
            Rational r = testutil::rand_rational(rng, 12, 3);
            RAValue v(r);
            bool in_a = a.contains(v), in_b = b.contains(v);
            CHECK(set_union(a, b).contains(v) == (in_a || in_b));
            CHECK(set_intersect(a, b).contains(v) == (in_a && in_b));
            CHECK(complement(a).contains(v) == !in_a);
            ++checks;
        }
        if (!a.empty()) CHECK(a.contains(a.pick_witness()));
        checks += 7;
    }
    CHECK(checks >= 10000);
}
