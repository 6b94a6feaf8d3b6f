#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nrasat/polynomial.hpp"
#include "nrasat/rational.hpp"

namespace nrasat::upoly {

/// Dense univariate polynomial over Z; coefficient of x^i at index i,
/// no trailing (leading) zeros, empty vector = zero polynomial.
using ZPoly = std::vector<Integer>;

inline void normalize(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool is_zero(const ZPoly& p) { return p.empty(); }
inline int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Strip integer content, keep the leading sign.
inline ZPoly primitive(ZPoly p) {
    normalize(p);
    if (p.empty()) return p;
    Integer g = 0;
    for (auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p) c /= g;
    return p;
}

/// Convert a Polynomial that is univariate in v into a ZPoly with the same
/// roots and the same sign function up to a positive rational factor.
inline ZPoly from_polynomial(const Polynomial& p, ArithVar v) {
    auto cs = p.coeffs_wrt(v);
    Integer den_lcm = 1;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        if (!c.is_constant())
            throw std::invalid_argument("from_polynomial: not univariate");
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.constant_value().get_den_mpz_t());
    }
    ZPoly z(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].is_zero()) continue;
        Rational q = cs[i].constant_value() * Rational(den_lcm);
        assert(is_integer(q));
        z[i] = q.get_num();
    }
    normalize(z);
    return primitive(std::move(z));
}

inline Rational eval(const ZPoly& p, const Rational& x) {
    Rational r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + Rational(*it);
    return r;
}
inline int sign_at(const ZPoly& p, const Rational& x) { return sign_of(eval(p, x)); }

inline ZPoly derivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    return d;
}

inline ZPoly neg_x(ZPoly p) {  // p(-x)
    for (std::size_t i = 1; i < p.size(); i += 2) p[i] = -p[i];
    return p;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

/// Exact division by a primitive factor; throws when not divisible.
inline ZPoly exact_div(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw std::invalid_argument("upoly exact_div by zero");
    if (a.empty()) return {};
    std::vector<Rational> rem(a.begin(), a.end());
    int da = degree(a), db = degree(b);
    if (da < db) throw std::invalid_argument("upoly exact_div: not divisible");
    std::vector<Rational> quot(da - db + 1);
    Rational lb(b.back());
    for (int k = da - db; k >= 0; --k) {
        Rational q = rem[k + db] / lb;
        quot[k] = q;
        for (int j = 0; j <= db; ++j) rem[k + j] -= q * Rational(b[j]);
    }
    for (auto& r : rem)
        if (r != 0) throw std::invalid_argument("upoly exact_div: nonzero remainder");
    Integer den = 1;
    for (auto& q : quot) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    ZPoly z(quot.size());
    for (std::size_t i = 0; i < quot.size(); ++i) {
        Rational q = quot[i] * Rational(den);
        z[i] = q.get_num();
    }
    normalize(z);
    return primitive(std::move(z));
}

/// Univariate gcd over Q, returned integer-primitive with positive lead.
inline ZPoly gcd(ZPoly a, ZPoly b) {
    normalize(a);
    normalize(b);
    if (a.empty()) return primitive(std::move(b));
    if (b.empty()) return primitive(std::move(a));
    std::vector<Rational> f(a.begin(), a.end()), g(b.begin(), b.end());
    auto deg = [](const std::vector<Rational>& p) { return static_cast<int>(p.size()) - 1; };
    auto norm = [](std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    if (deg(f) < deg(g)) std::swap(f, g);
    while (!g.empty()) {
        // f mod g
        while (deg(f) >= deg(g) && !f.empty()) {
            Rational q = f.back() / g.back();
            int shift = deg(f) - deg(g);
            for (int j = 0; j <= deg(g); ++j) f[j + shift] -= q * g[j];
            norm(f);
        }
        std::swap(f, g);
    }
    Integer den = 1;
    for (auto& q : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    ZPoly z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) z[i] = Rational(f[i] * Rational(den)).get_num();
    normalize(z);
    z = primitive(std::move(z));
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

inline ZPoly square_free_part(const ZPoly& p) {
    if (degree(p) <= 1) return primitive(p);
    ZPoly g = gcd(p, derivative(p));
    if (degree(g) == 0) return primitive(p);
    return exact_div(primitive(p), g);
}

inline int sign_variations(const ZPoly& p) {
    int v = 0, last = 0;
    for (auto& c : p) {
        int s = sign_of(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline ZPoly taylor_shift_1(ZPoly p) {  // p(x+1)
    int n = degree(p);
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) p[j] += p[j + 1];
    return p;
}

inline ZPoly reverse_poly(const ZPoly& p) {
    ZPoly r(p.rbegin(), p.rend());
    normalize(r);
    return r;
}

/// Number of sign variations of (x+1)^n p(1/(x+1)) — a Descartes bound on the
/// roots of p in the open unit interval (0,1); endpoint roots do not count.
inline int var_count_01(const ZPoly& p) {
    return sign_variations(taylor_shift_1(reverse_poly(p)));
}

/// Smallest power of two strictly greater than every |root| (Cauchy bound).
inline Rational root_bound_pow2(const ZPoly& p) {
    assert(!p.empty());
    Rational maxq(0);
    Rational lead((p.back() < 0 ? -p.back() : p.back()));
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        Rational q(p[i] < 0 ? -p[i] : p[i]);
        q /= lead;
        if (q > maxq) maxq = q;
    }
    Rational bound = maxq + 1;
    Rational b(1);
    while (b <= bound) b *= 2;
    return b;
}

struct RootLoc {
    bool exact = false;
    Rational value;        // exact root when exact
    Rational lo, hi;       // open isolating interval otherwise, p(lo),p(hi) != 0
};

namespace detail {

// q represents p on (lo,hi) rescaled to (0,1): q(t) ~ p(lo + t*(hi-lo)).
// Invariant: q(0) != 0 and q(1) != 0.
inline void isolate01(ZPoly q, Rational lo, Rational hi, std::vector<RootLoc>& out) {
    int v = var_count_01(q);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({false, Rational(0), lo, hi});
        return;
    }
    Rational mid = (lo + hi) / 2;
    // left half: q(t/2) scaled to integers; right half: q((t+1)/2).
    ZPoly left(q.size());
    Integer pw = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        left[q.size() - 1 - i] = q[q.size() - 1 - i] * pw;
        pw *= 2;
    }
    normalize(left);
    ZPoly right = taylor_shift_1(left);
    if (!right.empty() && right[0] == 0) {
        // Exact root at the midpoint: record it and deflate so the halves
        // keep nonroot endpoints.
        out.push_back({true, mid, mid, mid});
        ZPoly factor = {Integer(-1), Integer(2)};  // 2t - 1
        q = exact_div(primitive(std::move(q)), factor);
        isolate01(std::move(q), lo, hi, out);
        return;
    }
    left = primitive(std::move(left));
    right = primitive(std::move(right));
    isolate01(std::move(left), lo, mid, out);
    isolate01(std::move(right), mid, hi, out);
}

/// Bounded rational-root extraction (rational root theorem with capped
/// divisor enumeration). Deflates found roots out of p.
inline std::vector<Rational> extract_rational_roots(ZPoly& p) {
    std::vector<Rational> roots;
    auto divisors_of = [](Integer n) {
        std::vector<Integer> ds;
        if (n < 0) n = -n;
        if (n == 0 || n > Integer(1) << 40) return ds;  // cap
        Integer i = 1;
        long steps = 0;
        while (i * i <= n) {
            if (n % i == 0) {
                ds.push_back(i);
                if (i * i != n) ds.push_back(n / i);
            }
            ++i;
            if (++steps > 200000) return std::vector<Integer>{};  // give up
        }
        std::sort(ds.begin(), ds.end());
        return ds;
    };
    bool found = true;
    while (found && degree(p) >= 1) {
        found = false;
        auto nums = divisors_of(p.front());
        auto dens = divisors_of(p.back());
        if (nums.empty() || dens.empty()) break;
        for (auto& u : nums) {
            for (auto& w : dens) {
                for (int s : {1, -1}) {
                    Rational cand(s > 0 ? u : Integer(-u), w);
                    cand.canonicalize();
                    if (eval(p, cand) == 0) {
                        roots.push_back(cand);
                        ZPoly factor = {Integer(-cand.get_num()), cand.get_den()};
                        p = exact_div(p, factor);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
    }
    return roots;
}

}  // namespace detail

/// Isolate all distinct real roots of p (exact rationals where detected,
/// otherwise open isolating intervals with nonroot endpoints), ascending.
/// Throws std::invalid_argument on the zero polynomial.
inline std::vector<RootLoc> isolate_roots(const ZPoly& p_in) {
    if (is_zero(p_in)) throw std::invalid_argument("isolate_roots: zero polynomial");
    std::vector<RootLoc> out;
    ZPoly p = primitive(p_in);
    // x = 0 roots
    std::size_t k = 0;
    while (k < p.size() && p[k] == 0) ++k;
    if (k > 0) {
        out.push_back({true, Rational(0), Rational(0), Rational(0)});
        p.erase(p.begin(), p.begin() + k);
    }
    if (degree(p) >= 1) {
        p = square_free_part(p);
        for (auto& r : detail::extract_rational_roots(p))
            if (r != 0) out.push_back({true, r, r, r});
        if (degree(p) >= 1) {
            Rational b = root_bound_pow2(p);
            // positive roots: p(b*t) on (0,1)
            {
                ZPoly q(p.size());
                Integer pw = 1;
                Integer bi = b.get_num();
                for (std::size_t i = 0; i < p.size(); ++i) {
                    q[i] = p[i] * pw;
                    pw *= bi;
                }
                detail::isolate01(primitive(std::move(q)), Rational(0), b, out);
            }
            // negative roots: mirror
            {
                ZPoly pm = neg_x(p);
                ZPoly q(pm.size());
                Integer pw = 1;
                Integer bi = b.get_num();
                for (std::size_t i = 0; i < pm.size(); ++i) {
                    q[i] = pm[i] * pw;
                    pw *= bi;
                }
                std::vector<RootLoc> neg;
                detail::isolate01(primitive(std::move(q)), Rational(0), b, neg);
                for (auto& r : neg) {
                    if (r.exact)
                        out.push_back({true, -r.value, -r.value, -r.value});
                    else
                        out.push_back({false, Rational(0), -r.hi, -r.lo});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RootLoc& a, const RootLoc& b) {
        Rational ka = a.exact ? a.value : a.lo;
        Rational kb = b.exact ? b.value : b.lo;
        return ka < kb;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Sturm sequences (used as an independent oracle and for exact root counting).
// ---------------------------------------------------------------------------

using QPoly = std::vector<Rational>;

inline std::vector<QPoly> sturm_chain(const ZPoly& p) {
    std::vector<QPoly> chain;
    QPoly s0(p.begin(), p.end());
    while (!s0.empty() && s0.back() == 0) s0.pop_back();
    if (s0.empty()) return chain;
    chain.push_back(s0);
    if (s0.size() > 1) {
        QPoly s1(s0.size() - 1);
        for (std::size_t i = 1; i < s0.size(); ++i) s1[i - 1] = s0[i] * Rational(static_cast<long>(i));
        chain.push_back(s1);
        while (chain.back().size() > 0) {
            const QPoly& a = chain[chain.size() - 2];
            const QPoly& b = chain.back();
            if (b.empty()) break;
            QPoly r = a;
            auto deg = [](const QPoly& q) { return static_cast<int>(q.size()) - 1; };
            while (static_cast<int>(r.size()) - 1 >= deg(b) && !r.empty()) {
                Rational q = r.back() / b.back();
                int shift = static_cast<int>(r.size()) - 1 - deg(b);
                for (int j = 0; j <= deg(b); ++j) r[j + shift] -= q * b[j];
                while (!r.empty() && r.back() == 0) r.pop_back();
            }
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain.push_back(r);
        }
    }
    return chain;
}

inline int sturm_var_at(const std::vector<QPoly>& chain, const Rational& x) {
    int v = 0, last = 0;
    for (auto& q : chain) {
        Rational val(0);
        for (auto it = q.rbegin(); it != q.rend(); ++it) val = val * x + *it;
        int s = sign_of(val);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline int sturm_var_at_inf(const std::vector<QPoly>& chain, bool positive) {
    int v = 0, last = 0;
    for (auto& q : chain) {
        if (q.empty()) continue;
        int s = sign_of(q.back());
        if (!positive && (q.size() - 1) % 2 == 1) s = -s;
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// Number of distinct real roots of p in the open interval (a, b).
/// Requires p(a) != 0 and p(b) != 0.
inline int count_roots_in(const ZPoly& p, const Rational& a, const Rational& b) {
    assert(sign_at(p, a) != 0 && sign_at(p, b) != 0);
    auto chain = sturm_chain(p);
    return sturm_var_at(chain, a) - sturm_var_at(chain, b);
}

inline int count_real_roots(const ZPoly& p) {
    auto chain = sturm_chain(p);
    return sturm_var_at_inf(chain, false) - sturm_var_at_inf(chain, true);
}

/// Positive lower bound on |r| over the nonzero roots r of p (Cauchy bound of
/// the reversed polynomial after stripping x^k).
inline Rational nonzero_root_lower_bound(const ZPoly& p) {
    assert(!is_zero(p));
    std::size_t k = 0;
    while (k < p.size() && p[k] == 0) ++k;
    ZPoly s(p.begin() + k, p.end());
    if (s.size() <= 1) return Rational(1);  // no nonzero roots
    Rational c0(s[0] < 0 ? -s[0] : s[0]);
    Rational maxq(0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        Rational q(s[i] < 0 ? -s[i] : s[i]);
        if (q > maxq) maxq = q;
    }
    return c0 / (c0 + maxq);
}

}  // namespace nrasat::upoly
