#pragma once

#include <cassert>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrasat/polynomial.hpp"
#include "nrasat/rational.hpp"
#include "nrasat/upoly.hpp"
#include "nrasat/var.hpp"

namespace nrasat {

// ---------------------------------------------------------------------------
// RAValue: exact real algebraic value. Either an exact rational or a root of
// a square-free integer polynomial isolated by an open rational interval
// (defining(lo) != 0 != defining(hi), exactly one root inside). Refinement
// shrinks the interval through a shared rep; the represented value never
// changes.
// ---------------------------------------------------------------------------
class RAValue {
    struct AlgRep {
        upoly::ZPoly def;
        mutable Rational lo, hi;
        mutable std::optional<Rational> exact;  // set when the root is discovered rational
    };

  public:
    RAValue() : rat_(0) {}
    RAValue(const Rational& q) : rat_(q) {}  // NOLINT: implicit by design
    RAValue(long n) : rat_(n) {}             // NOLINT

    static RAValue algebraic(upoly::ZPoly def, const Rational& lo, const Rational& hi) {
        assert(upoly::sign_at(def, lo) != 0 && upoly::sign_at(def, hi) != 0);
        RAValue v;
        v.alg_ = std::make_shared<AlgRep>(AlgRep{std::move(def), lo, hi, std::nullopt});
        return v;
    }

    bool is_rational() const { return !alg_ || alg_->exact.has_value(); }
    const Rational& rational_value() const {
        assert(is_rational());
        return alg_ ? *alg_->exact : rat_;
    }
    const upoly::ZPoly& defining() const {
        assert(alg_);
        return alg_->def;
    }

    Rational lower() const { return is_rational() ? rational_value() : alg_->lo; }
    Rational upper() const { return is_rational() ? rational_value() : alg_->hi; }
    Rational interval_width() const { return upper() - lower(); }

    /// Halve the isolating interval (no-op for rationals). Keeps the value.
    void refine() const {
        if (is_rational()) return;
        Rational mid = (alg_->lo + alg_->hi) / 2;
        int sm = upoly::sign_at(alg_->def, mid);
        if (sm == 0) {
            alg_->exact = mid;
            alg_->lo = alg_->hi = mid;
            return;
        }
        if (sm == upoly::sign_at(alg_->def, alg_->lo))
            alg_->lo = mid;
        else
            alg_->hi = mid;
    }
    void refine_below(const Rational& width) const {
        std::size_t guard = 0;
        while (!is_rational() && interval_width() >= width) {
            refine();
            assert(++guard < 100000);
        }
    }

    int sign() const {
        if (is_rational()) return sign_of(rational_value());
        for (;;) {
            if (alg_->lo >= 0) return 1;   // value > lo (open interval)
            if (alg_->hi <= 0) return -1;  // value < hi
            if (upoly::eval(alg_->def, Rational(0)) == 0) {
                // 0 is the unique root inside the interval.
                alg_->exact = Rational(0);
                alg_->lo = alg_->hi = Rational(0);
                return 0;
            }
            refine();
            if (is_rational()) return sign_of(rational_value());
        }
    }

    Integer floor() const {
        if (is_rational()) return rat_floor(rational_value());
        for (;;) {
            // Shrink until one integer cell, probing integer candidates exactly
            // (the value may be an undetected integer).
            Integer fl = rat_floor(alg_->lo), fh = rat_floor(alg_->hi);
            if (fl == fh) return fl;
            for (Integer n = fl + 1; n <= fh; ++n) {
                Rational qn(n);
                if (alg_->lo < qn && qn < alg_->hi && upoly::eval(alg_->def, qn) == 0) {
                    alg_->exact = qn;
                    alg_->lo = alg_->hi = qn;
                    return n;
                }
            }
            refine();
            if (is_rational()) return rat_floor(rational_value());
        }
    }
    Integer ceil() const {
        if (is_rational()) return rat_ceil(rational_value());
        Integer f = floor();
        if (is_rational()) return rat_ceil(rational_value());
        return f + 1;  // irrational: strictly between f and f+1
    }

    double to_double() const {
        refine_below(Rational(1, 1000000000));
        Rational mid = (lower() + upper()) / 2;
        return mpq_get_d(mid.get_mpq_t());
    }

    std::size_t rep_hash() const {
        if (is_rational()) return hash_rational(rational_value());
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto& c : alg_->def) h = hash_combine(h, hash_integer(c));
        return h;
    }

    friend int compare(const RAValue& a, const RAValue& b);

  private:
    Rational rat_;
    std::shared_ptr<AlgRep> alg_;

    friend class RAValueTestAccess;
};

inline int compare_rat_alg(const Rational& q, const RAValue& b) {
    // b algebraic (non-rational rep); result: sign of (q - b).
    for (;;) {
        if (b.is_rational()) {
            Rational d = q - b.rational_value();
            return sign_of(d);
        }
        if (q <= b.lower()) return -1;
        if (q >= b.upper()) return 1;
        if (upoly::eval(b.defining(), q) == 0) {
            // q is the unique root in the interval, i.e. q == b.
            return 0;
        }
        b.refine();
    }
}

inline int compare(const RAValue& a, const RAValue& b) {
    if (a.is_rational() && b.is_rational()) {
        Rational d = a.rational_value() - b.rational_value();
        return sign_of(d);
    }
    if (a.is_rational()) return compare_rat_alg(a.rational_value(), b);
    if (b.is_rational()) return -compare_rat_alg(b.rational_value(), a);
    for (;;) {
        if (a.is_rational() || b.is_rational()) return compare(a, b);
        if (a.upper() <= b.lower()) return -1;
        if (b.upper() <= a.lower()) return 1;
        Rational ilo = std::max(a.lower(), b.lower());
        Rational ihi = std::min(a.upper(), b.upper());
        upoly::ZPoly g = upoly::gcd(a.defining(), b.defining());
        if (upoly::degree(g) >= 1) {
            // Endpoints of the overlap are endpoints of an isolating interval,
            // hence nonroots of the respective defining polys and of g.
            if (upoly::sign_at(g, ilo) != 0 && upoly::sign_at(g, ihi) != 0 &&
                upoly::count_roots_in(g, ilo, ihi) >= 1)
                return 0;
        }
        a.refine();
        b.refine();
    }
}

inline bool operator==(const RAValue& a, const RAValue& b) { return compare(a, b) == 0; }
inline bool operator!=(const RAValue& a, const RAValue& b) { return compare(a, b) != 0; }
inline bool operator<(const RAValue& a, const RAValue& b) { return compare(a, b) < 0; }
inline bool operator<=(const RAValue& a, const RAValue& b) { return compare(a, b) <= 0; }
inline bool operator>(const RAValue& a, const RAValue& b) { return compare(a, b) > 0; }
inline bool operator>=(const RAValue& a, const RAValue& b) { return compare(a, b) >= 0; }

/// All distinct real roots of an integer univariate polynomial, ascending,
/// as exact values.
inline std::vector<RAValue> real_roots(const upoly::ZPoly& p) {
    if (upoly::is_zero(p)) throw std::invalid_argument("real_roots: zero polynomial");
    if (upoly::degree(p) == 0) return {};
    upoly::ZPoly sf = upoly::square_free_part(p);
    auto locs = upoly::isolate_roots(sf);
    // Defining polynomial for the irrational roots: sf with every discovered
    // exact root deflated out, so each isolating interval holds exactly one
    // of its roots and endpoints are nonroots.
    upoly::ZPoly def = sf;
    for (auto& loc : locs) {
        if (!loc.exact) continue;
        upoly::ZPoly factor = {Integer(-loc.value.get_num()), loc.value.get_den()};
        def = upoly::exact_div(def, factor);
    }
    std::vector<RAValue> out;
    for (auto& loc : locs) {
        if (loc.exact)
            out.push_back(RAValue(loc.value));
        else
            out.push_back(RAValue::algebraic(def, loc.lo, loc.hi));
    }
    return out;
}

/// Spec op: all distinct real roots of a univariate Polynomial, ascending.
inline std::vector<RAValue> isolate_roots(const Polynomial& p, ArithVar v) {
    if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
    if (p.degree(v) == 0) return {};
    return real_roots(upoly::from_polynomial(p, v));
}

// ---------------------------------------------------------------------------
// Extended real line values (interval endpoints).
// ---------------------------------------------------------------------------
struct ExtValue {
    enum Kind : std::uint8_t { neg_inf, finite, pos_inf };
    Kind kind = finite;
    RAValue value;

    ExtValue() = default;
    ExtValue(const RAValue& v) : kind(finite), value(v) {}  // NOLINT
    static ExtValue minus_inf() { return ExtValue{neg_inf, RAValue()}; }
    static ExtValue plus_inf() { return ExtValue{pos_inf, RAValue()}; }
    bool is_finite() const { return kind == finite; }

  private:
    ExtValue(Kind k, const RAValue& v) : kind(k), value(v) {}
};

inline int compare(const ExtValue& a, const ExtValue& b) {
    if (a.kind != ExtValue::finite || b.kind != ExtValue::finite) {
        int ka = a.kind == ExtValue::neg_inf ? -1 : (a.kind == ExtValue::pos_inf ? 1 : 0);
        int kb = b.kind == ExtValue::neg_inf ? -1 : (b.kind == ExtValue::pos_inf ? 1 : 0);
        return ka < kb ? -1 : (ka > kb ? 1 : 0);
    }
    return compare(a.value, b.value);
}

// ---------------------------------------------------------------------------
// Partial assignment of arithmetic variables to exact real values.
// ---------------------------------------------------------------------------
class ArithAssignment {
  public:
    bool assigned(ArithVar v) const { return v < vals_.size() && vals_[v].has_value(); }
    const RAValue& value(ArithVar v) const {
        if (!assigned(v))
            throw std::invalid_argument("unassigned variable x" + std::to_string(v));
        return *vals_[v];
    }
    void set(ArithVar v, const RAValue& x) {
        if (v >= vals_.size()) vals_.resize(v + 1);
        vals_[v] = x;
    }
    void unset(ArithVar v) {
        if (v < vals_.size()) vals_[v].reset();
    }
    std::size_t size() const { return vals_.size(); }

  private:
    std::vector<std::optional<RAValue>> vals_;
};

// ---------------------------------------------------------------------------
// Rational interval arithmetic (closed intervals) for refinement loops.
// ---------------------------------------------------------------------------
struct QIv {
    Rational lo, hi;
};

inline QIv qiv_point(const Rational& q) { return {q, q}; }
inline QIv qiv_add(const QIv& a, const QIv& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline QIv qiv_mul(const QIv& a, const QIv& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rational lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    return {lo, hi};
}
inline QIv qiv_pow(const QIv& a, std::uint32_t e) {
    QIv r = qiv_point(Rational(1));
    for (std::uint32_t i = 0; i < e; ++i) r = qiv_mul(r, a);
    return r;
}

/// Interval evaluation of p where each variable carries a closed rational box.
template <class BoxFn>
inline QIv eval_interval(const Polynomial& p, BoxFn&& box) {
    QIv sum = qiv_point(Rational(0));
    for (auto& t : p.terms()) {
        QIv prod = qiv_point(t.coeff);
        const auto& es = t.mono.exponents();
        for (ArithVar v = 0; v < es.size(); ++v)
            if (es[v] > 0) prod = qiv_mul(prod, qiv_pow(box(v), es[v]));
        sum = qiv_add(sum, prod);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Exact sign of p under a mixed rational/algebraic assignment.
// ---------------------------------------------------------------------------

namespace ra_detail {

/// Defining polynomial in `zvar` for the value q(alpha) where the remaining
/// variables of q all carry algebraic values. Built by iterated resultants of
/// z - q against the defining polynomials; the leading z-coefficient stays a
/// nonzero constant throughout, so the chain never degenerates.
inline Polynomial value_chain(const Polynomial& q, const std::vector<ArithVar>& alg_vars,
                              const ArithAssignment& alpha, ArithVar zvar) {
    Polynomial b = Polynomial::variable(zvar) - q;
    for (ArithVar u : alg_vars) {
        const upoly::ZPoly& def = alpha.value(u).defining();
        Polynomial defp;
        for (std::size_t i = 0; i < def.size(); ++i)
            defp += Polynomial::term(Rational(def[i]), Monomial::var(u, static_cast<std::uint32_t>(i)));
        b = resultant(defp, b, u);
    }
    assert(!b.is_zero());
    return b;
}

}  // namespace ra_detail

/// Exact sign of p(alpha); all variables of p must be assigned.
/// Mixed assignments reduce by substitution, then by a value-resultant chain
/// plus interval refinement with an exact zero certificate.
inline int sign_at(const Polynomial& p, const ArithAssignment& alpha) {
    // Substitute rational values.
    std::map<ArithVar, Rational> rats;
    std::vector<ArithVar> algs;
    for (ArithVar v : p.vars()) {
        const RAValue& x = alpha.value(v);  // throws when unassigned
        if (x.is_rational())
            rats.emplace(v, x.rational_value());
        else
            algs.push_back(v);
    }
    Polynomial q = p.substitute(rats);
    if (q.is_constant()) return sign_of(q.constant_value());

    if (algs.size() == 1) {
        ArithVar u = algs[0];
        const RAValue& a = alpha.value(u);
        upoly::ZPoly zq = upoly::from_polynomial(q, u);
        upoly::ZPoly g = upoly::gcd(zq, a.defining());
        if (upoly::degree(g) >= 1 && upoly::sign_at(g, a.lower()) != 0 &&
            upoly::sign_at(g, a.upper()) != 0 &&
            upoly::count_roots_in(g, a.lower(), a.upper()) >= 1)
            return 0;
        for (std::size_t guard = 0;; ++guard) {
            assert(guard < 100000);
            QIv iv = {a.lower(), a.upper()};
            Rational L(0), H(0);
            // Horner over the interval.
            QIv acc = qiv_point(Rational(zq.back()));
            for (std::size_t i = zq.size() - 1; i-- > 0;)
                acc = qiv_add(qiv_mul(acc, iv), qiv_point(Rational(zq[i])));
            L = acc.lo;
            H = acc.hi;
            if (L > 0) return 1;
            if (H < 0) return -1;
            a.refine();
            if (a.is_rational()) return upoly::sign_at(zq, a.rational_value());
        }
    }

    // Two or more algebraic coordinates: defining polynomial for the value,
    // then interval refinement with the nonzero-root lower bound as the zero
    // certificate.
    ArithVar zvar = 0;
    for (ArithVar v : q.vars()) zvar = std::max(zvar, v + 1);
    for (ArithVar v : algs) zvar = std::max(zvar, v + 1);
    Polynomial chain = ra_detail::value_chain(q, algs, alpha, zvar);
    upoly::ZPoly r = upoly::from_polynomial(chain, zvar);
    Rational bound = upoly::nonzero_root_lower_bound(r);
    for (std::size_t guard = 0;; ++guard) {
        assert(guard < 100000);
        QIv iv = eval_interval(q, [&](ArithVar v) -> QIv {
            auto it = std::find(algs.begin(), algs.end(), v);
            assert(it != algs.end());
            const RAValue& x = alpha.value(v);
            return {x.lower(), x.upper()};
        });
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        if (iv.lo > -bound && iv.hi < bound) return 0;
        bool all_rational = true;
        for (ArithVar v : algs) {
            alpha.value(v).refine();
            all_rational = all_rational && alpha.value(v).is_rational();
        }
        if (all_rational) return sign_at(p, alpha);  // degenerates to fewer algebraics
    }
}

// ---------------------------------------------------------------------------
// Root isolation of p in variable v under a partial assignment of all its
// other variables (values may be algebraic).
// ---------------------------------------------------------------------------

struct RootsResult {
    bool vanished = false;          // p(alpha, v) is identically zero
    std::vector<RAValue> roots;     // ascending, exact
};

inline RootsResult isolate_roots_under(const Polynomial& p, ArithVar v,
                                       const ArithAssignment& alpha) {
    RootsResult res;
    std::map<ArithVar, Rational> rats;
    std::vector<ArithVar> algs;
    for (ArithVar w : p.vars()) {
        if (w == v) continue;
        const RAValue& x = alpha.value(w);
        if (x.is_rational())
            rats.emplace(w, x.rational_value());
        else
            algs.push_back(w);
    }
    Polynomial q = p.substitute(rats);

    if (algs.empty()) {
        if (q.is_zero() || q.is_constant()) {
            res.vanished = q.is_zero();
            return res;
        }
        res.roots = isolate_roots(q, v);
        return res;
    }

    // Exact degree of q(alpha, v) via coefficient sign tests.
    auto coeffs = q.coeffs_wrt(v);
    int deg = -1;
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j) {
        if (coeffs[j].is_zero()) continue;
        if (sign_at(coeffs[j], alpha) != 0) {
            deg = j;
            break;
        }
    }
    if (deg < 0) {
        res.vanished = true;
        return res;
    }
    if (deg == 0) return res;  // nonzero constant: no roots
    Polynomial trimmed;
    for (int j = 0; j <= deg; ++j)
        if (!coeffs[j].is_zero())
            trimmed += coeffs[j] * Polynomial::variable(v).pow(static_cast<std::uint32_t>(j));

    // Candidate superset: a nonzero rational polynomial R(v) whose roots
    // include those of q(alpha, v).
    upoly::ZPoly R;
    if (algs.size() == 1) {
        ArithVar u = algs[0];
        const RAValue& a = alpha.value(u);
        upoly::ZPoly def = a.defining();
        for (;;) {
            Polynomial defp;
            for (std::size_t i = 0; i < def.size(); ++i)
                defp += Polynomial::term(Rational(def[i]), Monomial::var(u, static_cast<std::uint32_t>(i)));
            Polynomial g = gcd(defp, trimmed);
            if (g.degree(u) == 0) {
                R = upoly::from_polynomial(resultant(defp, trimmed, u), v);
                break;
            }
            // g divides the defining polynomial, hence is univariate in u.
            // alpha(u) cannot be a root of g: that would zero the certified
            // leading coefficient. Shrink the defining polynomial and retry.
            upoly::ZPoly gz = upoly::from_polynomial(g, u);
            def = upoly::exact_div(def, gz);
            assert(upoly::degree(def) >= 1);
        }
    } else {
        // Monicize so the value chain keeps a constant leading coefficient:
        // y = lc * v is a root of P~(y) = lc^(d-1) * trimmed(y / lc).
        ArithVar zv = v + 1;
        for (ArithVar w : trimmed.vars()) zv = std::max(zv, w + 1);
        for (ArithVar w : algs) zv = std::max(zv, w + 1);
        ArithVar yvar = zv, gamvar = zv + 1, zvar = zv + 2;
        Polynomial lc = coeffs[deg];
        auto tcs = trimmed.coeffs_wrt(v);
        Polynomial ptilde;
        for (int j = 0; j <= deg; ++j) {
            if (tcs[j].is_zero()) continue;
            ptilde += tcs[j] * lc.pow(static_cast<std::uint32_t>(deg - 1 - j)) *
                      Polynomial::variable(yvar).pow(static_cast<std::uint32_t>(j));
        }
        // Eliminate the algebraic variables; leading y-coefficient stays 1.
        Polynomial b = ptilde;
        for (ArithVar u : algs) {
            const upoly::ZPoly& def = alpha.value(u).defining();
            Polynomial defp;
            for (std::size_t i = 0; i < def.size(); ++i)
                defp += Polynomial::term(Rational(def[i]), Monomial::var(u, static_cast<std::uint32_t>(i)));
            b = resultant(defp, b, u);
        }
        upoly::ZPoly rt = upoly::from_polynomial(b, yvar);  // roots include lc(alpha)*rho
        // T(v) = Res_gamma(def_gamma, Rt'(gamma * v)) where gamma = lc(alpha)
        // and Rt' has the zero root stripped; then v = 0 re-added as candidate.
        std::size_t k = 0;
        while (k < rt.size() && rt[k] == 0) ++k;
        upoly::ZPoly rts(rt.begin() + k, rt.end());
        upoly::ZPoly vroot = {Integer(0), Integer(1)};
        if (rts.size() <= 1) {
            R = vroot;  // all y-roots are zero: only candidate is v = 0
        } else {
            Polynomial gchain = ra_detail::value_chain(lc, algs, alpha, gamvar);
            Polynomial rcomp;
            for (std::size_t i = 0; i < rts.size(); ++i)
                rcomp += Polynomial::term(Rational(rts[i]), Monomial::one()) *
                         Polynomial::variable(gamvar).pow(static_cast<std::uint32_t>(i)) *
                         Polynomial::variable(v).pow(static_cast<std::uint32_t>(i));
            Polynomial T = resultant(gchain, rcomp, gamvar);
            R = upoly::from_polynomial(T, v);
            R = upoly::mul(R, vroot);
        }
    }
    assert(!upoly::is_zero(R));

    // Filter candidates by exact sign evaluation.
    ArithAssignment ext = alpha;
    for (const RAValue& cand : real_roots(R)) {
        ext.set(v, cand);
        if (sign_at(trimmed, ext) == 0) res.roots.push_back(cand);
    }
    ext.unset(v);
    return res;
}

// ---------------------------------------------------------------------------
// Value selection between extended bounds.
// ---------------------------------------------------------------------------

inline int compare_value(const Rational& q, const RAValue& v) {
    if (v.is_rational()) {
        Rational d = q - v.rational_value();
        return sign_of(d);
    }
    return compare_rat_alg(q, v);
}

/// Spec op: a rational r with a < r < b, preferring 0, then small integers,
/// then small denominators.
inline Rational pick_rational_between(const ExtValue& a, const ExtValue& b) {
    assert(compare(a, b) < 0);
    auto admissible = [&](const Rational& q) {
        if (a.kind == ExtValue::finite && compare_value(q, a.value) <= 0) return false;
        if (b.kind == ExtValue::finite && compare_value(q, b.value) >= 0) return false;
        return true;
    };
    if (admissible(Rational(0))) return Rational(0);
    // Smallest-magnitude integer via exact floor/ceil of the endpoints.
    std::optional<Integer> ilo, ihi;
    if (a.kind == ExtValue::finite) ilo = a.value.floor() + 1;  // smallest integer > a
    if (b.kind == ExtValue::finite) ihi = b.value.ceil() - 1;   // largest integer < b
    bool have_int = (!ilo || !ihi) || *ilo <= *ihi;
    if (have_int) {
        if (ilo && *ilo > 0) return Rational(*ilo);
        if (ihi && *ihi < 0) return Rational(*ihi);
        assert(false && "integer range spanning zero always admits 0");
    }
    // Same integer cell: smallest-denominator rational. Reduce algebraic
    // endpoints to inward rational sub-bounds by refinement.
    RatBound lo, hi;
    auto lower_bound_of = [&]() {
        if (a.value.is_rational())
            lo = {true, a.value.rational_value(), true};
        else
            lo = {true, a.value.upper(), false};  // closed at the refined bound
    };
    auto upper_bound_of = [&]() {
        if (b.value.is_rational())
            hi = {true, b.value.rational_value(), true};
        else
            hi = {true, b.value.lower(), false};
    };
    lower_bound_of();
    upper_bound_of();
    std::size_t guard = 0;
    while (lo.value > hi.value || (lo.value == hi.value && (lo.strict || hi.strict))) {
        assert(++guard < 100000);
        a.value.refine();
        b.value.refine();
        lower_bound_of();
        upper_bound_of();
    }
    return preferred_rational_in(lo, hi);
}

// ---------------------------------------------------------------------------
// Rendering.
// ---------------------------------------------------------------------------

/// Textual model rendering: exact rationals verbatim, algebraic values as
/// `root(p, k) ≈ d.ddddd` with p written in the given variable name.
inline std::string render_value(const RAValue& x, const std::string& var_name) {
    if (x.is_rational()) return to_string(x.rational_value());
    const upoly::ZPoly& def = x.defining();
    // 1-based index among the real roots of the defining polynomial.
    Rational b = upoly::root_bound_pow2(def);
    int below = upoly::count_roots_in(def, -b, x.lower());
    if (upoly::sign_at(def, x.lower()) == 0) below += 1;  // defensive; lo is nonroot
    int index = below + 1;
    std::string poly;
    bool first = true;
    for (std::size_t i = def.size(); i-- > 0;) {
        if (def[i] == 0) continue;
        Integer c = def[i];
        std::string term;
        Integer ac = c < 0 ? Integer(-c) : c;
        if (i == 0)
            term = ac.get_str();
        else {
            if (ac != 1) term = ac.get_str() + "*";
            term += var_name;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (first) {
            poly += (c < 0 ? "-" : "") + term;
            first = false;
        } else {
            poly += (c < 0 ? " - " : " + ") + term;
        }
    }
    double approx = x.to_double();
    char buf[64];
    snprintf(buf, sizeof buf, "%.6g", approx);
    return "root(" + poly + ", " + std::to_string(index) + ") ≈ " + buf;
}

}  // namespace nrasat
