#pragma once
#include <iostream>

// Implementation of the Solver declared in engine.hpp (header-only split).

#include <algorithm>

namespace nrasat {

// ---------------------------------------------------------------------------
// Stage processing: baseline NLSAT clause processing and the look-ahead
// decision with a pre-appointed value.
// ---------------------------------------------------------------------------
inline std::optional<ClauseIdx> Solver::process_stage(ArithVar v) {
    IntervalSet extra = IntervalSet::full_set();  // shrunk on stale-cache repicks
    std::size_t restarts = 0;

    struct Examined {
        bool sat = false;
        bool progress = false;  // an assertion happened
        std::vector<std::pair<Literal, const IntervalSet*>> undef;
    };
    // One pass over a clause: evaluates literals, fires R-propagations and
    // unit propagation, collects the undefined remainder.
    auto examine = [&](ClauseIdx ci, bool allow_unit) -> std::optional<Examined> {
        Clause& c = *clauses_[ci];
        Examined ex;
        for (Literal l : c.lits) {
            LBool lv = lit_value(l);
            if (lv == LBool::true_) {
                ex.sat = true;
                return ex;
            }
            if (lv == LBool::false_) continue;
            const IntervalSet& ls = lit_feasible_cached(l, v);
            if (ls.full()) {
                Reason r;
                r.kind = Reason::r_prop;
                r.stage_var = v;
                assert_stage_literal(l, std::move(r), nullptr);
                stats_.r_propagations++;
                ex.sat = ex.progress = true;
                return ex;
            }
            if (ls.empty()) {
                Reason r;
                r.kind = Reason::r_prop;
                r.stage_var = v;
                assert_stage_literal(negate(l), std::move(r), nullptr);
                stats_.r_propagations++;
                ex.progress = true;
                continue;
            }
            const IntervalSet& cov = infeasible_.covered();
            if (!cov.empty()) {
                if (ls.subset_of(cov)) {
                    Reason r;
                    r.kind = Reason::r_prop;
                    r.stage_var = v;
                    r.justs = infeasible_.covering(ls);
                    assert_stage_literal(negate(l), std::move(r), nullptr);
                    stats_.r_propagations++;
                    ex.progress = true;
                    continue;
                }
                IntervalSet comp = complement(ls);
                if (comp.subset_of(cov)) {
                    Reason r;
                    r.kind = Reason::r_prop;
                    r.stage_var = v;
                    r.justs = infeasible_.covering(comp);
                    assert_stage_literal(l, std::move(r), nullptr);
                    stats_.r_propagations++;
                    ex.sat = ex.progress = true;
                    return ex;
                }
            }
            ex.undef.push_back({l, &ls});
        }
        if (ex.undef.empty()) return std::nullopt;  // conflict: all literals false
        if (ex.undef.size() == 1 && allow_unit) {
            auto [l, ls] = ex.undef[0];
            Reason r;
            r.kind = Reason::unit_prop;
            r.clause = ci;
            assert_stage_literal(l, std::move(r), ls);
            ex.sat = ex.progress = true;
            ex.undef.clear();
        }
        return ex;
    };

    for (;;) {  // outer: (re)pick the pre-appointed value
        sync_atoms();
        bool path_mode = cfg_.literal_decision == LiteralDecision::look_ahead;
        std::optional<RAValue> val;
        if (path_mode) {
            IntervalSet cand = set_intersect(
                set_intersect(feasible_[v], complement(infeasible_.covered())), extra);
            if (cand.empty())
                path_mode = false;
            else
                val = cand.pick_witness();
        }
        if (path_mode)
            trail_.push_back(EPathFinder{});
        else
            trail_.push_back(EBlockFinder{});

        bool restart = false;
        while (!restart) {
            // Propagation to fixpoint before any decision.
            bool progress = true;
            while (progress) {
                progress = false;
                for (std::size_t idx = 0; idx < univariate_[v].size(); ++idx) {
                    ClauseIdx ci = univariate_[v][idx];
                    if (!clauses_[ci]) continue;
                    auto ex = examine(ci, true);
                    if (!ex) return ci;  // conflict
                    progress = progress || ex->progress;
                }
            }
            if (path_mode && !complement(infeasible_.covered()).contains(*val)) {
                restart = true;  // value excluded by propagation; repick
                break;
            }
            // First clause still needing a decision.
            std::optional<ClauseIdx> decide_in;
            Examined pend;
            for (std::size_t idx = 0; idx < univariate_[v].size(); ++idx) {
                ClauseIdx ci = univariate_[v][idx];
                if (!clauses_[ci]) continue;
                auto ex = examine(ci, false);
                if (!ex) return ci;
                if (!ex->sat && ex->undef.size() >= 2) {
                    decide_in = ci;
                    pend = std::move(*ex);
                    break;
                }
            }
            if (!decide_in) break;  // stage fully processed

            Literal chosen;
            const IntervalSet* chosen_set = nullptr;
            if (path_mode) {
                for (auto& [l, ls] : pend.undef)  // last qualifying literal (Alg. 3)
                    if (ls->contains(*val)) {
                        chosen = l;
                        chosen_set = ls;
                    }
                if (!chosen_set) {
                    // Stale clause cache: the pre-appointed value misses this
                    // clause; shrink the candidate region and repick.
                    IntervalSet fresh = IntervalSet::empty_set();
                    for (auto& [l, ls] : pend.undef) fresh = set_union(fresh, *ls);
                    extra = set_intersect(extra, fresh);
                    restart = true;
                    break;
                }
            } else {
                std::size_t pick = 0;
                if (cfg_.literal_decision == LiteralDecision::random_pick) {
                    pick = static_cast<std::size_t>(rng_() % pend.undef.size());
                } else {
                    // lowest polynomial degree in v, ties by clause order
                    std::uint32_t best = UINT32_MAX;
                    for (std::size_t i = 0; i < pend.undef.size(); ++i) {
                        std::uint32_t d = atoms_[pend.undef[i].first.atom].poly.degree(v);
                        if (d < best) {
                            best = d;
                            pick = i;
                        }
                    }
                }
                chosen = pend.undef[pick].first;
                chosen_set = pend.undef[pick].second;
            }
            level_++;
            trail_.push_back(ENewLevel{});
            Reason r;
            r.kind = Reason::decided;
            assert_stage_literal(chosen, std::move(r), chosen_set);
            stats_.literal_decisions++;
            stats_.decisions++;
        }
        if (restart) {
            if (++restarts > 2 * univariate_[v].size() + 4) extra = IntervalSet::empty_set();
            continue;
        }
        // All clauses handled: select the stage value and assign.
        RAValue final_val;
        if (path_mode) {
            final_val = *val;
            if (!complement(infeasible_.covered()).contains(final_val))
                throw std::logic_error("look-ahead path soundness violated");
        } else {
            IntervalSet curr = complement(infeasible_.covered());
            if (curr.empty()) throw std::logic_error("value selection on empty current set");
            final_val = curr.pick_witness();
        }
        push_arith_assign(v, final_val);
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Conflict resolution over the trail.
// ---------------------------------------------------------------------------
inline Solver::ResolveOutcome Solver::resolve(ClauseIdx conflict) {
    stats_.conflicts++;
    ResolveOutcome out;
    std::set<Literal> C(clauses_[conflict]->lits.begin(), clauses_[conflict]->lits.end());
    auto bump_lits = [&](const std::vector<Literal>& ls) {
        for (Literal l : ls)
            for (auto& v : atoms_[l.atom].vars) out.bump_vars.insert(v);
    };
    bump_lits(clauses_[conflict]->lits);
    clauses_[conflict]->activity += 1.0;
    Explainer ex(atoms_, alpha_, arith_order_);

    auto resolve_with = [&](Literal falsified, const std::vector<Literal>& reason_clause,
                            Literal asserted) {
        C.erase(falsified);
        for (Literal m : reason_clause)
            if (m != asserted) C.insert(m);
        bump_lits(reason_clause);
        sync_atoms();
    };

    for (std::size_t i = trail_.size(); i-- > 0 && !C.empty();) {
        if (auto* la = std::get_if<ELitAssign>(&trail_[i])) {
            Literal m = la->lit;
            Literal lam = negate(m);
            if (!C.count(lam)) continue;
            if (la->reason.kind == Reason::decided) {
                out.lemma.assign(C.begin(), C.end());
                out.target = ResolveOutcome::decision;
                out.trail_index = i;
                out.flip = lam;
                stats_.explain_calls += ex.calls;
                return out;
            }
            if (la->reason.kind == Reason::unit_prop) {
                clauses_[la->reason.clause]->activity += 1.0;
                resolve_with(lam, clauses_[la->reason.clause]->lits, m);
            } else {
                std::vector<Literal> core = la->reason.justs;
                core.push_back(negate(m));
                std::vector<Literal> lemma = ex.explain_infeasible(core, la->reason.stage_var);
                resolve_with(lam, lemma, m);
            }
        } else if (auto* ba = std::get_if<EBoolAssign>(&trail_[i])) {
            Literal lam{};
            bool found = false;
            for (Literal l : C) {
                const Atom& a = atoms_[l.atom];
                if (a.kind == Atom::Kind::boolean && a.bvar == ba->b) {
                    lam = l;
                    found = true;
                    break;
                }
            }
            if (!found) continue;
            Literal m = negate(lam);
            if (ba->reason.kind == Reason::decided) {
                out.lemma.assign(C.begin(), C.end());
                out.target = ResolveOutcome::decision;
                out.trail_index = i;
                out.flip = lam;
                stats_.explain_calls += ex.calls;
                return out;
            }
            assert(ba->reason.kind == Reason::unit_prop);
            clauses_[ba->reason.clause]->activity += 1.0;
            resolve_with(lam, clauses_[ba->reason.clause]->lits, m);
        } else if (auto* aa = std::get_if<EArithAssign>(&trail_[i])) {
            std::vector<Literal> F;
            for (Literal l : C) {
                const Atom& a = atoms_[l.atom];
                if (a.kind == Atom::Kind::boolean) continue;
                if (atom_bvalue_[l.atom] != LBool::undef) continue;
                bool has_v = false;
                for (auto& w : a.vars)
                    if (w == Var::arith(aa->v)) has_v = true;
                if (has_v) F.push_back(l);
            }
            if (F.empty()) continue;
            std::vector<Literal> D = ex.cell_exclusion(F);
            for (Literal f : F) C.erase(f);
            for (Literal d : D) C.insert(d);
            bump_lits(D);
            sync_atoms();
            out.lemma.assign(C.begin(), C.end());
            out.target = ResolveOutcome::stage;
            out.stage_v = aa->v;
            stats_.explain_calls += ex.calls;
            return out;
        }
    }
    stats_.explain_calls += ex.calls;
    if (!C.empty()) throw std::logic_error("resolve: unresolved literals at trail bottom");
    out.unsat = true;
    return out;
}

inline bool Solver::handle_conflict(ClauseIdx conflict) {
    pending_.clear();
    ResolveOutcome r = resolve(conflict);
    if (r.unsat) return false;
    if (r.lemma.empty()) return false;

    // The learned lemma excludes the current state: every literal false here.
    for (Literal l : r.lemma) {
        if (lit_value(l) != LBool::false_)
            throw std::logic_error("learned lemma does not evaluate false at emission");
        for (Literal m : r.lemma)
            if (m == negate(l)) throw std::logic_error("tautological lemma");
    }
    // Termination instrumentation: syntactic duplicates indicate a livelock.
    std::size_t h = 0x811c9dc5u;
    for (Literal l : r.lemma) h = hash_combine(h, std::hash<Literal>()(l));
    if (!lemma_hashes_.insert(h).second)
        throw std::logic_error("duplicate lemma emitted");

    result_.lemmas.push_back(r.lemma);
    if (cfg_.trace_lemmas) {
        std::string s = "(or";
        for (Literal l : r.lemma)
            s += " " + literal_to_string(atoms_, l,
                                         [&](ArithVar w) { return vars_.arith_name(w); }, &vars_);
        result_.lemma_trace.push_back(s + ")");
#ifdef NRASAT_DEBUG_TRACE
        std::cerr << "[lemma] " << result_.lemma_trace.back()
                  << (r.target == ResolveOutcome::stage ? " ->stage " : " ->decision ")
                  << (r.target == ResolveOutcome::stage ? (int)r.stage_v : (int)r.trail_index)
                  << "\n";
#endif
    }

    bump_and_decay(r.bump_vars);
    conflicts_since_reduce_++;
    if (conflicts_since_reduce_ >= lemma_conf_cur_) reduce_lemmas();

    ClauseIdx ci = add_clause(r.lemma, true);
    stats_.lemmas_learned++;

    if (r.target == ResolveOutcome::decision) {
        pop_to(r.trail_index);
        attach_clause(ci);
        const Atom& a = atoms_[r.flip.atom];
        Reason re;
        re.kind = Reason::unit_prop;
        re.clause = ci;
        if (a.kind == Atom::Kind::boolean) {
            push_bool_assign(a.bvar, !r.flip.neg, std::move(re));
        } else {
            const IntervalSet* ls = nullptr;
            if (stage_var_) {
                bool univar = true;
                for (auto& w : a.vars)
                    if (w != Var::arith(*stage_var_) && !assigned(w)) univar = false;
                if (univar) ls = &lit_feasible_cached(r.flip, *stage_var_);
            }
            assert_stage_literal(r.flip, std::move(re), ls);
        }
    } else {
        assert(r.target == ResolveOutcome::stage);
        std::size_t mark = 0;
        bool found = false;
        for (std::size_t i = stage_marks_.size(); i-- > 0;) {
            if (stage_marks_[i].v == r.stage_v) {
                mark = stage_marks_[i].reprocess_index;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("backjump target stage not on trail");
        pop_to(mark);
        re_register_univariate(r.stage_v);
        attach_clause(ci);  // enqueues the lemma's univariate event (Alg. 4)
    }
    return true;
}

inline void Solver::bump_and_decay(const std::set<Var>& vs) {
    for (auto& v : vs) {
        if (v.is_bool())
            bool_activity_[v.index] += cfg_.bool_bump * bool_inc_;
        else
            arith_activity_[v.index] += cfg_.arith_bump * arith_inc_;
    }
    arith_inc_ /= cfg_.arith_decay;
    bool_inc_ /= cfg_.bool_decay;
    if (arith_inc_ > 1e100) {
        for (auto& a : arith_activity_) a *= 1e-100;
        arith_inc_ *= 1e-100;
    }
    if (bool_inc_ > 1e100) {
        for (auto& a : bool_activity_) a *= 1e-100;
        bool_inc_ *= 1e-100;
    }
}

inline void Solver::reduce_lemmas() {
    lemma_conf_cur_ = lemma_conf_cur_ * cfg_.lemma_conf_inc;
    conflicts_since_reduce_ = 0;
    std::vector<ClauseIdx> deletable;
    for (ClauseIdx i = 0; i < clauses_.size(); ++i) {
        if (!clauses_[i]) continue;
        if (clauses_[i]->is_lemma && clauses_[i]->in_use == 0) deletable.push_back(i);
    }
    if (deletable.size() < 2) return;
    std::stable_sort(deletable.begin(), deletable.end(), [&](ClauseIdx a, ClauseIdx b) {
        return clauses_[a]->activity < clauses_[b]->activity;
    });
    std::size_t kill = deletable.size() / 2;
    for (std::size_t k = 0; k < kill; ++k) {
        ClauseIdx ci = deletable[k];
        Clause& c = *clauses_[ci];
        for (int s = 0; s < 2; ++s) {
            if (c.watch[s].is_null()) continue;
            auto& wl = watch_list(c.watch[s]);
            auto it = std::find(wl.begin(), wl.end(), ci);
            if (it != wl.end()) wl.erase(it);
        }
        clauses_[ci].reset();
        stats_.lemmas_deleted++;
    }
}

inline bool Solver::unsat_shortcut(ArithVar v) {
    // Blocked purely by clauses over {v} alone: unsatisfiable outright.
    if (univariate_[v].empty()) return false;
    for (ClauseIdx ci : univariate_[v]) {
        auto it = clause_cache_.find(ci);
        if (it == clause_cache_.end()) continue;
        if (it->second.full()) continue;
        const Clause& c = *clauses_[ci];
        if (!(c.vars.size() == 1 && c.vars[0] == Var::arith(v))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Branching.
// ---------------------------------------------------------------------------
inline std::optional<Var> Solver::pick_branch() {
    auto record = [&](Var v) {
        VarCategory cat =
            v.is_arith() ? category_of(v.index) : VarCategory::normal;
        result_.branch_trace.push_back({v, cat});
        return v;
    };
    if (cfg_.mode == Mode::prop_vsids) {
        // Alg. 6: blocked first, then fixed, then uniform VSIDS.
        for (const auto* q : {&blocked_vars_, &fixed_vars_}) {
            Var best{};
            double besta = -1.0;
            for (ArithVar v : *q) {
                if (alpha_.assigned(v)) continue;
                if (arith_activity_[v] > besta) {
                    besta = arith_activity_[v];
                    best = Var::arith(v);
                }
            }
            if (!best.is_null()) return record(best);
        }
    }
    if (cfg_.mode == Mode::nlsat_static) {
        for (Var v : static_order_)
            if (!assigned(v)) return record(v);
        return std::nullopt;
    }
    Var best{};
    double besta = -1.0;
    for (Var v : occurring_) {
        if (assigned(v)) continue;
        double a = v.is_bool() ? bool_activity_[v.index] : arith_activity_[v.index];
        if (a > besta) {
            besta = a;
            best = v;
        }
    }
    if (best.is_null()) return std::nullopt;
    return record(best);
}

// ---------------------------------------------------------------------------
// Model verification and the main loop.
// ---------------------------------------------------------------------------
inline bool Solver::check_model() {
    for (auto& cp : clauses_) {
        if (!cp) continue;
        bool sat = false;
        for (Literal l : cp->lits)
            if (lit_value(l) == LBool::true_) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return true;
}

inline Result Solver::finish(Verdict v, std::chrono::steady_clock::time_point t0) {
    stats_.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    result_.verdict = v;
    result_.stats = stats_;
    return std::move(result_);
}

inline bool Solver::init_search() {
    lemma_conf_cur_ = cfg_.lemma_conf;
    bool_value_.assign(vars_.num_bool(), LBool::undef);
    feasible_.assign(vars_.num_arith(), IntervalSet::full_set());
    arith_activity_.assign(vars_.num_arith(), 0.0);
    bool_activity_.assign(vars_.num_bool(), 0.0);
    bool_watches_.assign(vars_.num_bool(), {});
    arith_watches_.assign(vars_.num_arith(), {});
    univariate_.assign(vars_.num_arith(), {});
    sync_atoms();

    // Input clauses: dedup literals, drop tautologies, catch empties.
    for (auto& lits : input_clauses_) {
        std::vector<Literal> ded;
        bool taut = false;
        for (Literal l : lits) {
            if (std::find(ded.begin(), ded.end(), l) != ded.end()) continue;
            if (std::find(ded.begin(), ded.end(), negate(l)) != ded.end()) {
                taut = true;
                break;
            }
            ded.push_back(l);
        }
        if (taut) continue;
        if (ded.empty()) return false;  // trivially unsatisfiable
        add_clause(ded, false);
    }
    input_clauses_.clear();

    // Occurring variables and the static order.
    {
        std::set<Var> occ;
        for (auto& cp : clauses_)
            if (cp)
                for (auto& v : clause_vars(atoms_, cp->lits)) occ.insert(v);
        occurring_.assign(occ.begin(), occ.end());
        std::vector<std::uint32_t> max_deg(vars_.num_arith(), 0);
        for (auto& cp : clauses_) {
            if (!cp) continue;
            for (Literal l : cp->lits) {
                const Atom& a = atoms_[l.atom];
                if (!a.is_arith()) continue;
                for (ArithVar w : a.poly.vars())
                    max_deg[w] = std::max(max_deg[w], a.poly.degree(w));
            }
        }
        static_order_ = occurring_;  // booleans first (Var ordering), arith by index
        std::stable_sort(static_order_.begin(), static_order_.end(), [&](Var a, Var b) {
            if (a.is_bool() != b.is_bool()) return a.is_bool();
            if (a.is_bool()) return a.index < b.index;
            if (max_deg[a.index] != max_deg[b.index]) return max_deg[a.index] < max_deg[b.index];
            return a.index < b.index;
        });
    }
    for (ClauseIdx i = 0; i < clauses_.size(); ++i)
        if (clauses_[i]) attach_clause(i);
    return true;
}

inline Result Solver::solve() {
    auto t0 = std::chrono::steady_clock::now();
    if (cfg_.timeout_ms > 0) {
        deadline_ = t0 + std::chrono::milliseconds(cfg_.timeout_ms);
        has_deadline_ = true;
    }
    if (!init_search()) return finish(Verdict::unsat, t0);

    std::uint64_t iter = 0;
    for (;;) {
        if (cfg_.conflict_budget && stats_.conflicts >= cfg_.conflict_budget)
            return finish(Verdict::unknown, t0);
        if (has_deadline_ && (++iter & 15) == 0 &&
            std::chrono::steady_clock::now() >= deadline_)
            return finish(Verdict::unknown, t0);

        if (auto c = propagate()) {
            if (!handle_conflict(*c)) return finish(Verdict::unsat, t0);
            continue;
        }
        if (stage_var_) {
            ArithVar v = *stage_var_;
            if (auto c = process_stage(v))
                if (!handle_conflict(*c)) return finish(Verdict::unsat, t0);
            continue;
        }
        auto bv = pick_branch();
        if (!bv) {
            if (!check_model()) throw std::logic_error("model verification failed");
            result_.model.arith.resize(vars_.num_arith());
            for (ArithVar v = 0; v < vars_.num_arith(); ++v)
                result_.model.arith[v] =
                    alpha_.assigned(v) ? std::optional<RAValue>(alpha_.value(v))
                                       : std::optional<RAValue>(RAValue(Rational(0)));
            result_.model.booleans.assign(vars_.num_bool(), LBool::false_);
            for (BoolVar b = 0; b < vars_.num_bool(); ++b)
                if (bool_value_[b] != LBool::undef) result_.model.booleans[b] = bool_value_[b];
            return finish(Verdict::sat, t0);
        }
        if (bv->is_bool()) {
            level_++;
            trail_.push_back(ENewLevel{});
            Reason r;
            r.kind = Reason::decided;
            push_bool_assign(bv->index, false, std::move(r));
            stats_.bool_decisions++;
            stats_.decisions++;
            continue;
        }
        ArithVar v = bv->index;
        if (feasible_[v].empty() && unsat_shortcut(v)) return finish(Verdict::unsat, t0);
        push_new_stage(v);
    }
}

inline ClauseIdx Solver::add_clause(const std::vector<Literal>& lits, bool lemma) {
    auto c = std::make_unique<Clause>();
    c->lits = lits;
    c->is_lemma = lemma;
    clauses_.push_back(std::move(c));
    return static_cast<ClauseIdx>(clauses_.size() - 1);
}

inline void Solver::sync_atoms() {
    if (atom_bvalue_.size() < atoms_.size()) {
        atom_bvalue_.resize(atoms_.size(), LBool::undef);
        atom_reason_.resize(atoms_.size());
    }
}

}  // namespace nrasat
