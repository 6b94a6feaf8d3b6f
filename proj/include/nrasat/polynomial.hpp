#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrasat/rational.hpp"
#include "nrasat/var.hpp"

namespace nrasat {

// ---------------------------------------------------------------------------
// Monomial: dense exponent vector over arithmetic variables, trailing zeros
// trimmed. Ordered graded-lexicographically (total degree first, then the
// exponent of the lowest-indexed variable decides).
// ---------------------------------------------------------------------------
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

    static Monomial one() { return Monomial(); }
    static Monomial var(ArithVar v, std::uint32_t e = 1) {
        std::vector<std::uint32_t> es(v + 1, 0);
        es[v] = e;
        return Monomial(std::move(es));
    }

    bool is_one() const { return exps_.empty(); }
    std::uint32_t exponent(ArithVar v) const { return v < exps_.size() ? exps_[v] : 0; }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto e : exps_) d += e;
        return d;
    }
    const std::vector<std::uint32_t>& exponents() const { return exps_; }

    Monomial operator*(const Monomial& o) const {
        std::vector<std::uint32_t> es(std::max(exps_.size(), o.exps_.size()), 0);
        for (std::size_t i = 0; i < es.size(); ++i) es[i] = exponent(i) + o.exponent(i);
        return Monomial(std::move(es));
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > o.exponent(i)) return false;
        return true;
    }
    Monomial divide(const Monomial& o) const {  // *this / o, assumes o.divides(*this)
        std::vector<std::uint32_t> es(exps_.size(), 0);
        for (std::size_t i = 0; i < exps_.size(); ++i) es[i] = exps_[i] - o.exponent(i);
        return Monomial(std::move(es));
    }
    /// Exponent of v zeroed out.
    Monomial without(ArithVar v) const {
        std::vector<std::uint32_t> es = exps_;
        if (v < es.size()) es[v] = 0;
        return Monomial(std::move(es));
    }

    int cmp(const Monomial& o) const {
        std::uint32_t da = total_degree(), db = o.total_degree();
        if (da != db) return da < db ? -1 : 1;
        std::size_t n = std::max(exps_.size(), o.exps_.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t ea = exponent(i), eb = o.exponent(i);
            if (ea != eb) return ea < eb ? -1 : 1;
        }
        return 0;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.cmp(b) < 0; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::size_t hash() const {
        std::size_t h = 0x517cc1b727220a95ULL;
        for (auto e : exps_) h = hash_combine(h, e);
        return h;
    }

  private:
    void trim() {
        while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    }
    std::vector<std::uint32_t> exps_;
};

// ---------------------------------------------------------------------------
// Polynomial: exact multivariate polynomial over the rationals. Terms are kept
// sorted in descending monomial order with no zero coefficients; the zero
// polynomial is the empty term list.
// ---------------------------------------------------------------------------
class Polynomial {
  public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Polynomial() = default;

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(const Rational& c) {
        Polynomial p;
        if (c != 0) p.terms_.push_back({Monomial::one(), c});
        return p;
    }
    static Polynomial variable(ArithVar v) {
        Polynomial p;
        p.terms_.push_back({Monomial::var(v), Rational(1)});
        return p;
    }
    static Polynomial term(const Rational& c, const Monomial& m) {
        Polynomial p;
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Rational constant_value() const {
        assert(is_constant());
        return terms_.empty() ? Rational(0) : terms_[0].coeff;
    }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::uint32_t total_degree() const {
        return terms_.empty() ? 0 : terms_.front().mono.total_degree();
    }
    std::uint32_t degree(ArithVar v) const {
        std::uint32_t d = 0;
        for (auto& t : terms_) d = std::max(d, t.mono.exponent(v));
        return d;
    }
    bool contains_var(ArithVar v) const {
        for (auto& t : terms_)
            if (t.mono.exponent(v) > 0) return true;
        return false;
    }
    std::vector<ArithVar> vars() const {
        std::vector<ArithVar> out;
        std::size_t n = 0;
        for (auto& t : terms_) n = std::max(n, t.mono.exponents().size());
        for (ArithVar v = 0; v < n; ++v)
            if (contains_var(v)) out.push_back(v);
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = a.terms_[i].mono.cmp(b.terms_[j].mono);
            if (c > 0)
                r.terms_.push_back(a.terms_[i++]);
            else if (c < 0)
                r.terms_.push_back(b.terms_[j++]);
            else {
                Rational s = a.terms_[i].coeff + b.terms_[j].coeff;
                if (s != 0) r.terms_.push_back({a.terms_[i].mono, s});
                ++i, ++j;
            }
        }
        while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
        while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::map<Monomial, Rational> acc;
        for (auto& ta : a.terms_)
            for (auto& tb : b.terms_) acc[ta.mono * tb.mono] += ta.coeff * tb.coeff;
        Polynomial r;
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (it->second != 0) r.terms_.push_back({it->first, it->second});
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) {
        if (c == 0) return Polynomial();
        Polynomial r = a;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(std::uint32_t e) const {
        Polynomial r = constant(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto& t : terms_) h = hash_combine(h, hash_combine(t.mono.hash(), hash_rational(t.coeff)));
        return h;
    }

    /// Exact value under a total assignment; callback maps var -> value and is
    /// expected to throw for unassigned variables.
    template <class Fn>
    Rational eval_with(Fn&& value_of) const {
        Rational sum(0);
        for (auto& t : terms_) {
            Rational prod = t.coeff;
            const auto& es = t.mono.exponents();
            for (ArithVar v = 0; v < es.size(); ++v) {
                if (es[v] == 0) continue;
                Rational x = value_of(v);
                for (std::uint32_t k = 0; k < es[v]; ++k) prod *= x;
            }
            sum += prod;
        }
        return sum;
    }

    /// Replace the variables in `partial` by exact rational values.
    Polynomial substitute(const std::map<ArithVar, Rational>& partial) const {
        Polynomial r;
        for (auto& t : terms_) {
            Rational c = t.coeff;
            std::vector<std::uint32_t> kept(t.mono.exponents());
            for (auto& [v, x] : partial) {
                std::uint32_t e = t.mono.exponent(v);
                if (e == 0) continue;
                for (std::uint32_t k = 0; k < e; ++k) c *= x;
                kept[v] = 0;
            }
            r += term(c, Monomial(std::move(kept)));
        }
        return r;
    }

    /// Partial derivative with respect to v.
    Polynomial derivative(ArithVar v) const {
        Polynomial r;
        for (auto& t : terms_) {
            std::uint32_t e = t.mono.exponent(v);
            if (e == 0) continue;
            std::vector<std::uint32_t> es(t.mono.exponents());
            es[v] = e - 1;
            r += term(t.coeff * Rational(e), Monomial(std::move(es)));
        }
        return r;
    }

    /// Coefficients of *this seen as a univariate polynomial in v;
    /// result[k] multiplies v^k.
    std::vector<Polynomial> coeffs_wrt(ArithVar v) const {
        std::vector<Polynomial> cs(degree(v) + 1);
        for (auto& t : terms_) {
            std::uint32_t e = t.mono.exponent(v);
            cs[e] += term(t.coeff, t.mono.without(v));
        }
        return cs;
    }
    static Polynomial from_coeffs_wrt(ArithVar v, const std::vector<Polynomial>& cs) {
        Polynomial r;
        Polynomial x = variable(v);
        for (std::size_t k = 0; k < cs.size(); ++k)
            if (!cs[k].is_zero()) r += cs[k] * x.pow(static_cast<std::uint32_t>(k));
        return r;
    }
    Polynomial leading_coeff(ArithVar v) const {
        std::uint32_t d = degree(v);
        Polynomial r;
        for (auto& t : terms_)
            if (t.mono.exponent(v) == d) r += term(t.coeff, t.mono.without(v));
        return r;
    }
    /// *this with its leading term in v dropped.
    Polynomial reductum(ArithVar v) const {
        std::uint32_t d = degree(v);
        if (d == 0) return Polynomial();
        Polynomial r;
        for (auto& t : terms_)
            if (t.mono.exponent(v) != d) r += term(t.coeff, t.mono);
        return r;
    }

    /// Positive rational c such that (1/c) * this has coprime integer
    /// coefficients; zero polynomial yields 1.
    Rational content() const {
        if (terms_.empty()) return Rational(1);
        Integer num_gcd = 0, den_lcm = 1;
        for (auto& t : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
        }
        Rational c(num_gcd, den_lcm);
        c.canonicalize();
        return c;
    }
    /// Integer-primitive part with positive leading coefficient.
    Polynomial primitive() const {
        if (terms_.empty()) return *this;
        Rational c = content();
        if (terms_.front().coeff < 0) c = -c;
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff /= c;
        return r;
    }

    std::string to_string() const;
    template <class NameFn>
    std::string to_string(NameFn&& name) const;

  private:
    std::vector<Term> terms_;
};

template <class NameFn>
std::string Polynomial::to_string(NameFn&& name) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c < 0) {
                s += "-";
                c = -c;
            }
        } else {
            s += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        bool coeff_shown = (c != 1) || t.mono.is_one();
        if (coeff_shown) s += nrasat::to_string(c);
        const auto& es = t.mono.exponents();
        bool star = coeff_shown;
        for (ArithVar v = 0; v < es.size(); ++v) {
            if (es[v] == 0) continue;
            if (star) s += "*";
            s += name(v);
            if (es[v] > 1) s += "^" + std::to_string(es[v]);
            star = true;
        }
    }
    return s;
}

inline std::string Polynomial::to_string() const {
    return to_string([](ArithVar v) { return "x" + std::to_string(v); });
}

// ---------------------------------------------------------------------------
// Exact evaluation and division helpers.
// ---------------------------------------------------------------------------

/// Exact value of p under a total rational assignment (map form).
/// Throws std::invalid_argument when a variable of p is unassigned.
inline Rational eval(const Polynomial& p, const std::map<ArithVar, Rational>& alpha) {
    return p.eval_with([&](ArithVar v) -> Rational {
        auto it = alpha.find(v);
        if (it == alpha.end())
            throw std::invalid_argument("eval: unassigned variable x" + std::to_string(v));
        return it->second;
    });
}

/// Exact quotient a / b; throws std::invalid_argument when b does not
/// divide a (or b is zero).
inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero");
    if (a.is_zero()) return Polynomial();
    if (b.is_constant()) return (Rational(1) / b.constant_value()) * a;
    Polynomial rem = a, quot;
    const auto& blead = b.terms().front();
    while (!rem.is_zero()) {
        const auto& rlead = rem.terms().front();
        if (!blead.mono.divides(rlead.mono))
            throw std::invalid_argument("exact_div: not divisible");
        Polynomial qt = Polynomial::term(rlead.coeff / blead.coeff, rlead.mono.divide(blead.mono));
        quot += qt;
        rem -= qt * b;
    }
    return quot;
}

namespace detail {

/// Pseudo-remainder of a by b with respect to v (up to a nonzero factor;
/// callers strip content afterwards, so the exact similarity constant is
/// irrelevant).
inline Polynomial prem_scaled(Polynomial a, const Polynomial& b, ArithVar v) {
    std::uint32_t db = b.degree(v);
    assert(db > 0 || !b.is_zero());
    Polynomial lb = b.leading_coeff(v);
    while (!a.is_zero() && a.degree(v) >= db) {
        std::uint32_t da = a.degree(v);
        Polynomial la = a.leading_coeff(v);
        Polynomial shift = Polynomial::variable(v).pow(da - db);
        a = lb * a - la * shift * b;
        assert(a.degree(v) < da || a.is_zero());
    }
    return a;
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

/// Content of p viewed in R[v]: gcd of its coefficient polynomials.
inline Polynomial content_wrt(const Polynomial& p, ArithVar v) {
    Polynomial g;
    for (auto& c : p.coeffs_wrt(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g.is_zero() ? Polynomial::constant(1) : g;
}

}  // namespace detail

/// Multivariate gcd over Q[x...], normalized integer-primitive with positive
/// leading coefficient; gcd(0,0) = 0, nonzero constants collapse to 1.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(1);
    ArithVar v = std::max(a.vars().back(), b.vars().back());
    if (!a.contains_var(v)) return gcd(a, detail::content_wrt(b, v));
    if (!b.contains_var(v)) return gcd(detail::content_wrt(a, v), b);
    Polynomial ca = detail::content_wrt(a, v), cb = detail::content_wrt(b, v);
    Polynomial f = exact_div(a, ca).primitive(), g = exact_div(b, cb).primitive();
    if (f.degree(v) < g.degree(v)) std::swap(f, g);
    while (!g.is_zero()) {
        Polynomial r = detail::prem_scaled(f, g, v);
        f = g;
        if (r.is_zero()) {
            g = Polynomial();
        } else if (r.degree(v) == 0) {
            // Coprime in v; the primitive-parts gcd is trivial.
            f = Polynomial::constant(1);
            g = Polynomial();
        } else {
            g = exact_div(r, detail::content_wrt(r, v)).primitive();
        }
    }
    Polynomial result = gcd(ca, cb) * (f.is_constant() ? Polynomial::constant(1)
                                                       : exact_div(f, detail::content_wrt(f, v)));
    return result.primitive();
}

/// Square-free part of p with respect to v: p with repeated v-factors divided
/// out, normalized primitive.
inline Polynomial square_free(const Polynomial& p, ArithVar v) {
    if (p.is_zero() || p.degree(v) == 0) return p.primitive();
    Polynomial g = gcd(p, p.derivative(v));
    if (g.is_constant()) return p.primitive();
    return exact_div(p.primitive(), g).primitive();
}

/// Res_v(a, b): exact resultant via fraction-free Bareiss elimination of the
/// Sylvester matrix (intermediates are determinantal minors, so divisions are
/// exact and growth stays subresultant-sized).
inline Polynomial resultant(const Polynomial& a, const Polynomial& b, ArithVar v) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("resultant: zero argument");
    std::uint32_t m = a.degree(v), l = b.degree(v);
    if (m == 0 && l == 0)
        throw std::invalid_argument("resultant: both arguments constant in the variable");
    if (m == 0) return a.pow(l);
    if (l == 0) return b.pow(m);
    std::size_t n = m + l;
    auto ac = a.coeffs_wrt(v), bc = b.coeffs_wrt(v);
    std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n));
    for (std::uint32_t r = 0; r < l; ++r)
        for (std::uint32_t k = 0; k <= m; ++k) M[r][r + k] = ac[m - k];
    for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t k = 0; k <= l; ++k) M[l + r][r + k] = bc[l - k];

    Polynomial prev = Polynomial::constant(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && M[piv][k].is_zero()) ++piv;
            if (piv == n) return Polynomial();  // singular: resultant is 0
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
        prev = M[k][k];
    }
    Polynomial det = M[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

/// disc_v(p) = (-1)^{n(n-1)/2} Res_v(p, dp/dv) / lc_v(p), exact.
inline Polynomial discriminant(const Polynomial& p, ArithVar v) {
    std::uint32_t n = p.degree(v);
    if (n == 0) throw std::invalid_argument("discriminant: degree zero in the variable");
    Polynomial res = resultant(p, p.derivative(v), v);
    Polynomial d = exact_div(res, p.leading_coeff(v));
    return (n * (n - 1) / 2) % 2 == 1 ? -d : d;
}

}  // namespace nrasat
