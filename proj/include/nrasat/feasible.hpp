#pragma once

#include <cassert>
#include <stdexcept>

#include "nrasat/formula.hpp"
#include "nrasat/interval_set.hpp"

namespace nrasat {

/// Feasible set of a root atom literal as a constraint on its bound variable.
/// Out-of-range root indices make the atom false (empty set); a vanishing
/// instantiated polynomial is an error (explain must not generate such atoms).
inline IntervalSet root_atom_feasible(const Atom& a, bool neg, ArithVar v,
                                      const ArithAssignment& alpha) {
    assert(a.kind == Atom::Kind::root);
    if (a.root_var != v) throw std::invalid_argument("root_atom_feasible: not univariate");
    RootsResult rr = isolate_roots_under(a.poly, v, alpha);
    if (rr.vanished)
        throw std::invalid_argument("root_atom_feasible: polynomial vanished under assignment");
    IntervalSet set;
    if (rr.roots.size() < a.root_index) {
        set = IntervalSet::empty_set();
    } else {
        const RAValue& r = rr.roots[a.root_index - 1];
        ExtValue e(r);
        switch (a.op) {
            case PolyOp::lt: set = IntervalSet::interval(Bound::minus_inf(), Bound::hi_open(e)); break;
            case PolyOp::le: set = IntervalSet::interval(Bound::minus_inf(), Bound::hi_closed(e)); break;
            case PolyOp::eq: set = IntervalSet::point(r); break;
            case PolyOp::ge: set = IntervalSet::interval(Bound::lo_closed(e), Bound::plus_inf()); break;
            case PolyOp::gt: set = IntervalSet::interval(Bound::lo_open(e), Bound::plus_inf()); break;
        }
    }
    return neg ? complement(set) : set;
}

/// Spec op literal_feasible: exact feasible set of literal l as a constraint
/// on v; all other variables of the atom must be assigned. Boolean literals
/// are the caller's job.
inline IntervalSet literal_feasible(const AtomTable& at, Literal l, ArithVar v,
                                    const ArithAssignment& alpha) {
    const Atom& a = at[l.atom];
    if (a.kind == Atom::Kind::boolean)
        throw std::invalid_argument("literal_feasible: boolean literal");
    for (auto& w : a.vars)
        if (w.index != v && !alpha.assigned(w.index))
            throw std::invalid_argument("literal_feasible: not univariate");
    if (a.kind == Atom::Kind::root) return root_atom_feasible(a, l.neg, v, alpha);

    if (!a.poly.contains_var(v)) {
        // Fully assigned atom: truth is constant in v.
        bool t = op_holds(sign_at(a.poly, alpha), a.op) != l.neg;
        return t ? IntervalSet::full_set() : IntervalSet::empty_set();
    }
    RootsResult rr = isolate_roots_under(a.poly, v, alpha);
    auto sat = [&](int sign) { return op_holds(sign, a.op) != l.neg; };
    if (rr.vanished) return sat(0) ? IntervalSet::full_set() : IntervalSet::empty_set();

    ArithAssignment probe = alpha;
    auto sign_between = [&](const ExtValue& lo, const ExtValue& hi) {
        Rational s = pick_rational_between(lo, hi);
        probe.set(v, RAValue(s));
        int sg = sign_at(a.poly, probe);
        assert(sg != 0);
        return sg;
    };

    std::vector<Interval> sats;
    const auto& roots = rr.roots;
    if (roots.empty()) {
        probe.set(v, RAValue(Rational(0)));
        int sg = sign_at(a.poly, probe);
        return sat(sg) ? IntervalSet::full_set() : IntervalSet::empty_set();
    }
    bool root_sat = sat(0);
    for (std::size_t i = 0; i <= roots.size(); ++i) {
        ExtValue lo = i == 0 ? ExtValue::minus_inf() : ExtValue(roots[i - 1]);
        ExtValue hi = i == roots.size() ? ExtValue::plus_inf() : ExtValue(roots[i]);
        if (sat(sign_between(lo, hi))) {
            Bound blo = i == 0 ? Bound::minus_inf() : Bound::lo_open(lo);
            Bound bhi = i == roots.size() ? Bound::plus_inf() : Bound::hi_open(hi);
            sats.push_back({blo, bhi});
        }
        if (root_sat && i < roots.size()) {
            ExtValue e(roots[i]);
            sats.push_back({Bound::lo_closed(e), Bound::hi_closed(e)});
        }
    }
    return IntervalSet::from_intervals(std::move(sats));
}

/// Spec op clause_feasible: union of the feasible sets of the literals that
/// are still undefined on v; literals already true make the result full,
/// false literals contribute nothing. `value_of` supplies literal truth
/// (evaluation and/or trail values).
template <class ValueFn>
IntervalSet clause_feasible(const AtomTable& at, const std::vector<Literal>& lits, ArithVar v,
                            const ArithAssignment& alpha, ValueFn&& value_of) {
    IntervalSet acc = IntervalSet::empty_set();
    for (Literal l : lits) {
        LBool val = value_of(l);
        if (val == LBool::true_) return IntervalSet::full_set();
        if (val == LBool::false_) continue;
        acc = set_union(acc, literal_feasible(at, l, v, alpha));
        if (acc.full()) return acc;
    }
    return acc;
}

/// Module-level convenience: literal truth by pure evaluation.
inline IntervalSet clause_feasible_eval(const AtomTable& at, const std::vector<Literal>& lits,
                                        ArithVar v, const ArithAssignment& alpha) {
    return clause_feasible(at, lits, v, alpha, [&](Literal l) {
        return evaluate_literal(at, l, alpha, [](BoolVar) { return LBool::undef; });
    });
}

}  // namespace nrasat
