#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nrasat/feasible.hpp"
#include "nrasat/formula.hpp"

namespace nrasat {

// ---------------------------------------------------------------------------
// Conflict explanation by model-based single-cell projection: resultants,
// discriminants and leading-coefficient chains keep the sign structure of the
// conflicting polynomials invariant around the model point; the cell is then
// bounded with root atoms against the nearest roots at each assigned level.
// ---------------------------------------------------------------------------
class Explainer {
  public:
    Explainer(AtomTable& atoms, const ArithAssignment& alpha, const std::vector<ArithVar>& order)
        : atoms_(atoms), alpha_(alpha), order_(order) {}

    std::uint64_t calls = 0;

    /// Valid lemma for a set of literals that cannot jointly hold for any
    /// value of the free variable x under the current assignment:
    /// (not l1 v ... v not lk v cell-exclusion literals).
    std::vector<Literal> explain_infeasible(const std::vector<Literal>& core, ArithVar x) {
        std::vector<Polynomial> polys = core_polys(core);
        std::vector<Literal> out = project(std::move(polys), x);
        for (Literal l : core) add_unique(out, negate(l));
        return out;
    }

    /// Cell-exclusion literals (each false under alpha) whose conjunction of
    /// negations pins the sign-invariant cell of the given fully-assigned
    /// polynomials around the model point.
    std::vector<Literal> cell_exclusion(const std::vector<Literal>& false_literals) {
        std::vector<Polynomial> polys = core_polys(false_literals);
        return project(std::move(polys), std::nullopt);
    }

  private:
    AtomTable& atoms_;
    const ArithAssignment& alpha_;
    const std::vector<ArithVar>& order_;

    std::vector<Polynomial> core_polys(const std::vector<Literal>& core) {
        std::vector<Polynomial> ps;
        for (Literal l : core) {
            const Atom& a = atoms_[l.atom];
            if (a.kind == Atom::Kind::boolean) continue;
            ps.push_back(a.poly);
        }
        return ps;
    }

    static void add_unique(std::vector<Literal>& lits, Literal l) {
        if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
    }

    int level_of(ArithVar v) const {
        for (std::size_t i = 0; i < order_.size(); ++i)
            if (order_[i] == v) return static_cast<int>(i);
        return -1;
    }

    /// Negation of the membership atom (y op_k root_k(q)), simplified to a
    /// plain polynomial constraint when q is linear in y with a constant
    /// leading coefficient.
    Literal negated_membership(ArithVar y, PolyOp op, std::uint32_t k, const Polynomial& q) {
        Polynomial lc = q.leading_coeff(y);
        if (q.degree(y) == 1 && lc.is_constant()) {
            PolyOp adjusted = sign_of(lc.constant_value()) > 0 ? op : mirror_op(op);
            return mk_poly_literal(atoms_, q, adjusted, true);
        }
        return {atoms_.mk_root(y, op, k, q), true};
    }

    std::vector<Literal> project(std::vector<Polynomial> initial, std::optional<ArithVar> free_var) {
        ++calls;
        std::map<int, std::vector<Polynomial>> buckets;  // level -> polys (primitive, dedup)
        std::vector<Polynomial> free_bucket;
        auto push_poly = [&](const Polynomial& p, bool allow_free) {
            if (p.is_zero() || p.is_constant()) return;
            Polynomial n = p.primitive();
            if (free_var && n.contains_var(*free_var)) {
                assert(allow_free && "projection reintroduced the free variable");
                if (std::find(free_bucket.begin(), free_bucket.end(), n) == free_bucket.end())
                    free_bucket.push_back(n);
                return;
            }
            int lvl = -1;
            for (ArithVar v : n.vars()) lvl = std::max(lvl, level_of(v));
            assert(lvl >= 0 && "projection polynomial over unassigned variables");
            auto& b = buckets[lvl];
            if (std::find(b.begin(), b.end(), n) == b.end()) b.push_back(n);
        };
        for (auto& p : initial) push_poly(p, true);

        std::vector<Literal> out;
        auto process = [&](std::vector<Polynomial> ps, ArithVar y, bool bound_cell) {
            std::vector<Polynomial> trimmed;
            for (auto& p : ps) {
                Polynomial q = square_free(p, y);
                while (q.degree(y) > 0) {
                    Polynomial lc = q.leading_coeff(y);
                    if (!lc.is_constant()) push_poly(lc, false);
                    if (lc.is_constant() || sign_at(lc, alpha_) != 0) break;
                    q = q.reductum(y);
                }
                if (q.degree(y) == 0) {
                    push_poly(q, false);
                    continue;
                }
                q = square_free(q, y);
                if (q.degree(y) >= 2) push_poly(discriminant(q, y), false);
                trimmed.push_back(q);
            }
            for (std::size_t i = 0; i < trimmed.size(); ++i)
                for (std::size_t j = i + 1; j < trimmed.size(); ++j)
                    push_poly(resultant(trimmed[i], trimmed[j], y), false);
            if (!bound_cell) return;

            // Bound the cell of alpha(y) against the nearest roots.
            const RAValue& yval = alpha_.value(y);
            struct RootRef {
                RAValue val;
                std::size_t poly;
                std::uint32_t index;
            };
            std::vector<RootRef> roots;
            for (std::size_t i = 0; i < trimmed.size(); ++i) {
                RootsResult rr = isolate_roots_under(trimmed[i], y, alpha_);
                assert(!rr.vanished && "leading-coefficient chain guarantees nonvanishing");
                for (std::size_t k = 0; k < rr.roots.size(); ++k)
                    roots.push_back({rr.roots[k], i, static_cast<std::uint32_t>(k + 1)});
            }
            std::optional<RootRef> below, above;
            bool pinned = false;
            for (auto& r : roots) {
                int c = compare(r.val, yval);
                if (c == 0) {
                    out.push_back(negated_membership(y, PolyOp::eq, r.index, trimmed[r.poly]));
                    pinned = true;
                } else if (c < 0) {
                    if (!below || compare(r.val, below->val) > 0) below = r;
                } else {
                    if (!above || compare(r.val, above->val) < 0) above = r;
                }
            }
            if (!pinned) {
                if (below)
                    out.push_back(negated_membership(y, PolyOp::gt, below->index, trimmed[below->poly]));
                if (above)
                    out.push_back(negated_membership(y, PolyOp::lt, above->index, trimmed[above->poly]));
            }
        };

        if (free_var && !free_bucket.empty()) process(std::move(free_bucket), *free_var, false);
        while (!buckets.empty()) {
            auto it = std::prev(buckets.end());
            int lvl = it->first;
            std::vector<Polynomial> ps = std::move(it->second);
            buckets.erase(it);
            process(std::move(ps), order_[lvl], true);
        }
        std::vector<Literal> dedup;
        for (Literal l : out) add_unique(dedup, l);
        return dedup;
    }
};

}  // namespace nrasat
