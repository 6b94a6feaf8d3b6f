#pragma once

// Independent brute-force decision oracle for instances with at most two
// arithmetic variables (test-only). One variable: isolate every root of every
// atom polynomial and test one sample per induced interval plus each root.
// Two variables: a miniature CAD — full projection (coefficients,
// discriminants and pairwise resultants of the square-free parts) followed by
// exhaustive sample-point lifting. Entirely separate from the solver search.

#include <vector>

#include "nrasat/feasible.hpp"
#include "nrasat/formula.hpp"

namespace oracle {

using namespace nrasat;

inline bool cnf_true_at(const AtomTable& at, const std::vector<std::vector<Literal>>& clauses,
                        const ArithAssignment& al) {
    for (auto& cls : clauses) {
        bool sat = false;
        for (Literal l : cls) {
            if (evaluate_literal(at, l, al, [](BoolVar) { return LBool::undef; }) ==
                LBool::true_) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

/// Sample points covering every region induced by the given sorted roots:
/// each root, a rational between consecutive roots, and points beyond both
/// ends (or 0 when there are no roots).
inline std::vector<RAValue> region_samples(std::vector<RAValue> roots) {
    std::vector<RAValue> out;
    std::sort(roots.begin(), roots.end(), [](const RAValue& a, const RAValue& b) {
        return compare(a, b) < 0;
    });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const RAValue& a, const RAValue& b) { return compare(a, b) == 0; }),
                roots.end());
    if (roots.empty()) {
        out.push_back(RAValue(Rational(0)));
        return out;
    }
    out.push_back(RAValue(pick_rational_between(ExtValue::minus_inf(), ExtValue(roots.front()))));
    for (std::size_t i = 0; i < roots.size(); ++i) {
        out.push_back(roots[i]);
        if (i + 1 < roots.size())
            out.push_back(
                RAValue(pick_rational_between(ExtValue(roots[i]), ExtValue(roots[i + 1]))));
    }
    out.push_back(RAValue(pick_rational_between(ExtValue(roots.back()), ExtValue::plus_inf())));
    return out;
}

/// Decide a purely arithmetic CNF over at most two variables.
inline bool decide(const AtomTable& at, const std::vector<std::vector<Literal>>& clauses,
                   ArithVar x, ArithVar y, unsigned nvars) {
    std::vector<Polynomial> polys;
    for (auto& cls : clauses)
        for (Literal l : cls) {
            const Atom& a = at[l.atom];
            if (a.kind != Atom::Kind::poly) throw std::logic_error("oracle: poly atoms only");
            polys.push_back(a.poly);
        }

    if (nvars == 0) {
        ArithAssignment empty;
        return cnf_true_at(at, clauses, empty);
    }

    if (nvars == 1) {
        std::vector<RAValue> roots;
        for (auto& p : polys) {
            if (p.degree(x) == 0) continue;
            for (auto& r : isolate_roots(p, x)) roots.push_back(r);
        }
        for (auto& s : region_samples(std::move(roots))) {
            ArithAssignment al;
            al.set(x, s);
            if (cnf_true_at(at, clauses, al)) return true;
        }
        return false;
    }

    // Two variables: project y away (coefficients + discriminants + pairwise
    // resultants of square-free parts), sample x, lift y.
    std::vector<Polynomial> proj;
    std::vector<Polynomial> with_y;
    for (auto& p : polys) {
        if (p.degree(y) == 0) {
            if (p.degree(x) >= 1) proj.push_back(p);
            continue;
        }
        with_y.push_back(square_free(p, y));
        for (auto& c : p.coeffs_wrt(y))
            if (!c.is_zero() && c.degree(x) >= 1) proj.push_back(c);
        if (with_y.back().degree(y) >= 2) {
            Polynomial d = discriminant(with_y.back(), y);
            if (d.degree(x) >= 1) proj.push_back(d);
        }
    }
    for (std::size_t i = 0; i < with_y.size(); ++i)
        for (std::size_t j = i + 1; j < with_y.size(); ++j) {
            Polynomial r = resultant(with_y[i], with_y[j], y);
            if (!r.is_zero() && r.degree(x) >= 1) proj.push_back(r);
        }

    std::vector<RAValue> xroots;
    for (auto& q : proj)
        for (auto& r : isolate_roots(q, x)) xroots.push_back(r);

    for (auto& xs : region_samples(std::move(xroots))) {
        ArithAssignment al;
        al.set(x, xs);
        std::vector<RAValue> yroots;
        bool degenerate = false;
        for (auto& p : with_y) {
            RootsResult rr = isolate_roots_under(p, y, al);
            if (rr.vanished) continue;
            for (auto& r : rr.roots) yroots.push_back(r);
        }
        (void)degenerate;
        for (auto& ys : region_samples(std::move(yroots))) {
            al.set(y, ys);
            if (cnf_true_at(at, clauses, al)) return true;
        }
        al.unset(y);
    }
    return false;
}

}  // namespace oracle
