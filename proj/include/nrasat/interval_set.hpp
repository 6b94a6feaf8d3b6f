#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrasat/real_alg.hpp"

namespace nrasat {

// ---------------------------------------------------------------------------
// Boundaries: a value plus an epsilon offset in {-1, 0, +1} standing for
// "just below", "at", "just above". Lower endpoints use {0 closed, +1 open},
// upper endpoints use {-1 open, 0 closed}; infinities are always open.
// ---------------------------------------------------------------------------
struct Bound {
    ExtValue value;
    int eps = 0;

    static Bound lo_open(const ExtValue& v) { return {v, +1}; }
    static Bound lo_closed(const ExtValue& v) { return {v, 0}; }
    static Bound hi_open(const ExtValue& v) { return {v, -1}; }
    static Bound hi_closed(const ExtValue& v) { return {v, 0}; }
    static Bound minus_inf() { return {ExtValue::minus_inf(), +1}; }
    static Bound plus_inf() { return {ExtValue::plus_inf(), -1}; }
};

inline int compare(const Bound& a, const Bound& b) {
    int c = compare(a.value, b.value);
    if (c != 0) return c;
    return a.eps < b.eps ? -1 : (a.eps > b.eps ? 1 : 0);
}

/// One maximal interval; nonempty iff lo <= hi in boundary order.
struct Interval {
    Bound lo, hi;

    bool lo_open() const { return lo.eps == +1 || !lo.value.is_finite(); }
    bool hi_open() const { return hi.eps == -1 || !hi.value.is_finite(); }
    bool is_point() const {
        return lo.value.is_finite() && hi.value.is_finite() && lo.eps == 0 && hi.eps == 0 &&
               compare(lo.value, hi.value) == 0;
    }
};

inline std::optional<Interval> intersect_iv(const Interval& a, const Interval& b) {
    Interval r;
    r.lo = compare(a.lo, b.lo) >= 0 ? a.lo : b.lo;
    r.hi = compare(a.hi, b.hi) <= 0 ? a.hi : b.hi;
    if (compare(r.lo, r.hi) > 0) return std::nullopt;
    return r;
}

// ---------------------------------------------------------------------------
// IntervalSet: canonical ordered union of disjoint, non-adjacent intervals.
// ---------------------------------------------------------------------------
class IntervalSet {
  public:
    IntervalSet() = default;

    static IntervalSet empty_set() { return IntervalSet(); }
    static IntervalSet full_set() {
        IntervalSet s;
        s.ivs_.push_back({Bound::minus_inf(), Bound::plus_inf()});
        return s;
    }
    static IntervalSet point(const RAValue& v) {
        IntervalSet s;
        ExtValue e(v);
        s.ivs_.push_back({Bound::lo_closed(e), Bound::hi_closed(e)});
        return s;
    }
    static IntervalSet interval(const Bound& lo, const Bound& hi) {
        IntervalSet s;
        if (compare(lo, hi) <= 0) s.ivs_.push_back({lo, hi});
        return s;
    }
    /// Canonicalize an arbitrary interval list (drops empties, sorts, merges).
    static IntervalSet from_intervals(std::vector<Interval> ivs) {
        std::vector<Interval> keep;
        for (auto& iv : ivs)
            if (compare(iv.lo, iv.hi) <= 0) keep.push_back(iv);
        std::sort(keep.begin(), keep.end(),
                  [](const Interval& a, const Interval& b) { return compare(a.lo, b.lo) < 0; });
        IntervalSet s;
        for (auto& iv : keep) {
            if (!s.ivs_.empty() && mergeable(s.ivs_.back(), iv)) {
                if (compare(iv.hi, s.ivs_.back().hi) > 0) s.ivs_.back().hi = iv.hi;
            } else {
                s.ivs_.push_back(iv);
            }
        }
        return s;
    }

    bool empty() const { return ivs_.empty(); }
    bool full() const {
        return ivs_.size() == 1 && !ivs_[0].lo.value.is_finite() && !ivs_[0].hi.value.is_finite();
    }
    const std::vector<Interval>& intervals() const { return ivs_; }

    enum class Class { empty, single_point, other };
    /// Spec op classify: {empty, single_point(value), other}.
    Class classify() const {
        if (ivs_.empty()) return Class::empty;
        if (ivs_.size() == 1 && ivs_[0].is_point()) return Class::single_point;
        return Class::other;
    }
    RAValue point_value() const {
        assert(classify() == Class::single_point);
        return ivs_[0].lo.value.value;
    }

    bool contains(const RAValue& x) const {
        for (auto& iv : ivs_) {
            int cl = iv.lo.value.is_finite() ? compare(x, iv.lo.value.value)
                                             : (iv.lo.value.kind == ExtValue::neg_inf ? 1 : -1);
            if (cl < 0 || (cl == 0 && iv.lo.eps != 0)) continue;
            int ch = iv.hi.value.is_finite() ? compare(x, iv.hi.value.value)
                                             : (iv.hi.value.kind == ExtValue::pos_inf ? -1 : 1);
            if (ch < 0 || (ch == 0 && iv.hi.eps == 0)) return true;
        }
        return false;
    }

    friend IntervalSet complement(const IntervalSet& s) {
        if (s.ivs_.empty()) return full_set();
        IntervalSet r;
        if (s.ivs_.front().lo.value.kind != ExtValue::neg_inf)
            r.ivs_.push_back({Bound::minus_inf(), pred(s.ivs_.front().lo)});
        for (std::size_t i = 0; i + 1 < s.ivs_.size(); ++i)
            r.ivs_.push_back({succ(s.ivs_[i].hi), pred(s.ivs_[i + 1].lo)});
        if (s.ivs_.back().hi.value.kind != ExtValue::pos_inf)
            r.ivs_.push_back({succ(s.ivs_.back().hi), Bound::plus_inf()});
        return r;
    }

    friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
        std::vector<Interval> all = a.ivs_;
        all.insert(all.end(), b.ivs_.begin(), b.ivs_.end());
        return from_intervals(std::move(all));
    }

    friend IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
        IntervalSet r;
        std::size_t i = 0, j = 0;
        while (i < a.ivs_.size() && j < b.ivs_.size()) {
            if (auto iv = intersect_iv(a.ivs_[i], b.ivs_[j])) r.ivs_.push_back(*iv);
            if (compare(a.ivs_[i].hi, b.ivs_[j].hi) <= 0)
                ++i;
            else
                ++j;
        }
        return r;
    }

    friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
        if (a.ivs_.size() != b.ivs_.size()) return false;
        for (std::size_t i = 0; i < a.ivs_.size(); ++i)
            if (compare(a.ivs_[i].lo, b.ivs_[i].lo) != 0 ||
                compare(a.ivs_[i].hi, b.ivs_[i].hi) != 0)
                return false;
        return true;
    }
    friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

    bool subset_of(const IntervalSet& o) const { return set_intersect(*this, o) == *this; }
    bool disjoint_from(const IntervalSet& o) const { return set_intersect(*this, o).empty(); }

    /// Spec op pick_witness: a value in the set, rational whenever one exists,
    /// preferring 0, then small integers, then small denominators.
    RAValue pick_witness() const {
        if (ivs_.empty()) throw std::invalid_argument("pick_witness: empty set");
        if (contains(RAValue(Rational(0)))) return RAValue(Rational(0));
        // Integer tier.
        std::optional<Integer> best_int;
        auto consider_int = [&](const Integer& n) {
            if (!best_int) {
                best_int = n;
                return;
            }
            Integer an = n < 0 ? Integer(-n) : n, ab = *best_int < 0 ? Integer(-*best_int) : *best_int;
            if (an < ab || (an == ab && n > *best_int)) best_int = n;
        };
        // 0 is not in the set here, so every interval lies entirely on one
        // side of 0; the best integer sits at the inner end.
        Bound zero_lo{ExtValue(RAValue(Rational(0))), 0};
        for (auto& iv : ivs_) {
            if (iv.is_point()) {
                const RAValue& v = iv.lo.value.value;
                if (v.is_rational() && is_integer(v.rational_value()))
                    consider_int(v.rational_value().get_num());
                continue;
            }
            bool positive = compare(iv.lo, zero_lo) > 0;
            if (positive) {
                Integer a = iv.lo.eps == 0 ? iv.lo.value.value.ceil() : iv.lo.value.value.floor() + 1;
                if (a <= 0) a = 1;
                if (!iv.hi.value.is_finite()) {
                    consider_int(a);
                } else {
                    Integer b = iv.hi.eps == 0 ? iv.hi.value.value.floor()
                                               : iv.hi.value.value.ceil() - 1;
                    if (a <= b) consider_int(a);
                }
            } else {
                Integer b = iv.hi.eps == 0 ? iv.hi.value.value.floor() : iv.hi.value.value.ceil() - 1;
                if (b >= 0) b = -1;
                if (!iv.lo.value.is_finite()) {
                    consider_int(b);
                } else {
                    Integer a = iv.lo.eps == 0 ? iv.lo.value.value.ceil()
                                               : iv.lo.value.value.floor() + 1;
                    if (a <= b) consider_int(b);
                }
            }
        }
        if (best_int) return RAValue(Rational(*best_int));
        // Fraction tier: per-interval simplest rational, then global best by
        // (denominator, |numerator|, sign).
        std::optional<Rational> best_rat;
        auto consider_rat = [&](const Rational& q) {
            if (!best_rat) {
                best_rat = q;
                return;
            }
            const Rational& c = *best_rat;
            if (q.get_den() < c.get_den() ||
                (q.get_den() == c.get_den() && rat_abs(q) < rat_abs(c)) ||
                (q.get_den() == c.get_den() && rat_abs(q) == rat_abs(c) && q > c))
                best_rat = q;
        };
        for (auto& iv : ivs_) {
            if (iv.is_point()) {
                const RAValue& v = iv.lo.value.value;
                if (v.is_rational()) consider_rat(v.rational_value());
                continue;
            }
            consider_rat(preferred_in_interval(iv));
        }
        if (best_rat) return RAValue(*best_rat);
        // Only irrational point intervals: take the smallest.
        return ivs_.front().lo.value.value;
    }

    std::string to_string() const {
        if (ivs_.empty()) return "∅";
        std::string s;
        for (std::size_t i = 0; i < ivs_.size(); ++i) {
            if (i) s += " ∪ ";
            const Interval& iv = ivs_[i];
            s += iv.lo_open() ? "(" : "[";
            s += bound_str(iv.lo.value);
            s += ", ";
            s += bound_str(iv.hi.value);
            s += iv.hi_open() ? ")" : "]";
        }
        return s;
    }

  private:
    static std::string bound_str(const ExtValue& v) {
        if (v.kind == ExtValue::neg_inf) return "-oo";
        if (v.kind == ExtValue::pos_inf) return "+oo";
        if (v.value.is_rational()) return nrasat::to_string(v.value.rational_value());
        char buf[48];
        snprintf(buf, sizeof buf, "~%.6g", v.value.to_double());
        return buf;
    }

    static Bound pred(const Bound& lo) {  // hi bound of the gap before `lo`
        assert(lo.eps == 0 || lo.eps == +1);
        return {lo.value, lo.eps - 1};
    }
    static Bound succ(const Bound& hi) {  // lo bound of the gap after `hi`
        assert(hi.eps == 0 || hi.eps == -1);
        return {hi.value, hi.eps + 1};
    }

    static bool mergeable(const Interval& a, const Interval& b) {
        // b.lo sorted >= a.lo; merge on overlap or exact adjacency.
        if (compare(b.lo, a.hi) <= 0) return true;
        return compare(b.lo.value, a.hi.value) == 0 && b.lo.eps == a.hi.eps + 1;
    }

    /// Preferred rational inside a non-point interval (0 and integers are
    /// handled by the caller's earlier tiers but the same order is harmless).
    static Rational preferred_in_interval(const Interval& iv) {
        RatBound lo, hi;
        if (!iv.lo.value.is_finite()) {
            lo.finite = false;
        } else if (iv.lo.value.value.is_rational()) {
            lo = {true, iv.lo.value.value.rational_value(), iv.lo.eps != 0};
        } else {
            lo = {true, iv.lo.value.value.upper(), false};
        }
        if (!iv.hi.value.is_finite()) {
            hi.finite = false;
        } else if (iv.hi.value.value.is_rational()) {
            hi = {true, iv.hi.value.value.rational_value(), iv.hi.eps != 0};
        } else {
            hi = {true, iv.hi.value.value.lower(), false};
        }
        std::size_t guard = 0;
        while (lo.finite && hi.finite &&
               (lo.value > hi.value || (lo.value == hi.value && (lo.strict || hi.strict)))) {
            assert(++guard < 100000);
            if (iv.lo.value.is_finite() && !iv.lo.value.value.is_rational()) {
                iv.lo.value.value.refine();
                lo = {true, iv.lo.value.value.upper(), false};
            }
            if (iv.hi.value.is_finite() && !iv.hi.value.value.is_rational()) {
                iv.hi.value.value.refine();
                hi = {true, iv.hi.value.value.lower(), false};
            }
        }
        return preferred_rational_in(lo, hi);
    }

    std::vector<Interval> ivs_;
};

inline IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
inline IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
inline IntervalSet complement(const IntervalSet& s);

}  // namespace nrasat
