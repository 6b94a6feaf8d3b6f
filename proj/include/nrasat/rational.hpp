#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nrasat {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign_of(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }
inline int sign_of(const Integer& z) { return mpz_sgn(z.get_mpz_t()); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer rat_floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer rat_ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline std::size_t hash_combine(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

inline std::size_t hash_integer(const Integer& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i)
        h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
    return h;
}

inline std::size_t hash_rational(const Rational& q) {
    return hash_combine(hash_integer(q.get_num()), hash_integer(q.get_den()));
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

/// Parse a decimal literal like "2.5" into the exact rational 5/2.
inline Rational rational_from_decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("bad decimal literal: " + text);
    Rational num(digits);
    Integer den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r = num / Rational(den);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Preferred-rational selection inside a rational range.
// Preference order: 0, then the smallest-magnitude integer, then the
// smallest-denominator rational (Stern-Brocot).
// ---------------------------------------------------------------------------

struct RatBound {
    bool finite = false;   // false => -inf (lower) / +inf (upper)
    Rational value;
    bool strict = true;    // open endpoint
};

namespace detail {

// Simplest (smallest-denominator) rational in a range with lo >= 0.
// hi absent means +inf. Continued-fraction recursion: if no admissible
// integer exists, the range lies in one integer cell and the reciprocal
// of the fractional part is recursed on.
inline Rational simplest_nonneg(const Rational& lo, bool lo_strict,
                                const std::optional<Rational>& hi, bool hi_strict) {
    Integer n0 = rat_floor(lo);
    Integer c = (Rational(n0) == lo && !lo_strict) ? n0 : n0 + 1;
    if (!hi || Rational(c) < *hi || (Rational(c) == *hi && !hi_strict))
        return Rational(c);
    Rational a = lo - Rational(n0);   // in [0,1)
    Rational b = *hi - Rational(n0);  // in (a,1]
    std::optional<Rational> rhi;
    if (a != 0) rhi = 1 / a;
    Rational r = simplest_nonneg(1 / b, hi_strict, rhi, lo_strict);
    return Rational(n0) + 1 / r;
}

}  // namespace detail

/// A rational in the given range following the preference order above.
/// The range must be nonempty (and non-degenerate unless the single point is
/// rational and admissible).
inline Rational preferred_rational_in(const RatBound& lo, const RatBound& hi) {
    auto lo_ok = [&](const Rational& q) {
        return !lo.finite || (lo.strict ? q > lo.value : q >= lo.value);
    };
    auto hi_ok = [&](const Rational& q) {
        return !hi.finite || (hi.strict ? q < hi.value : q <= hi.value);
    };
    Rational zero(0);
    if (lo_ok(zero) && hi_ok(zero)) return zero;
    // Smallest-magnitude integer.
    std::optional<Integer> a0, b0;  // integer range [a0, b0]
    if (lo.finite) {
        Integer a = rat_ceil(lo.value);
        if (lo.strict && Rational(a) == lo.value) a += 1;
        a0 = a;
    }
    if (hi.finite) {
        Integer b = rat_floor(hi.value);
        if (hi.strict && Rational(b) == hi.value) b -= 1;
        b0 = b;
    }
    if (!lo.finite && !hi.finite) return zero;  // handled above, defensive
    bool have_int;
    if (a0 && b0) have_int = *a0 <= *b0;
    else have_int = true;  // one side unbounded => integers exist
    if (have_int) {
        if (a0 && *a0 > 0) return Rational(*a0);
        if (b0 && *b0 < 0) return Rational(*b0);
        return zero;  // unreachable: a range spanning 0 admits 0
    }
    // No integer: both bounds finite, range inside one integer cell.
    if (lo.value >= 0)
        return detail::simplest_nonneg(lo.value, lo.strict, hi.value, hi.strict);
    return -detail::simplest_nonneg(-hi.value, hi.strict,
                                    std::optional<Rational>(-lo.value), lo.strict);
}

}  // namespace nrasat
