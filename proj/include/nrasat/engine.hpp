#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "nrasat/explain.hpp"
#include "nrasat/feasible.hpp"
#include "nrasat/formula.hpp"
#include "nrasat/interval_set.hpp"

namespace nrasat {

// ---------------------------------------------------------------------------
// Configuration, statistics, results.
// ---------------------------------------------------------------------------

enum class Mode { nlsat_static, vsids, prop_vsids };
enum class LiteralDecision { look_ahead, lower_degree, random_pick };

struct EngineConfig {
    Mode mode = Mode::prop_vsids;
    LiteralDecision literal_decision = LiteralDecision::look_ahead;
    double arith_decay = 0.95;
    double bool_decay = 0.95;
    double arith_bump = 1.0;
    double bool_bump = 1.0;
    std::uint32_t lemma_conf = 100;
    double lemma_conf_inc = 1.5;
    std::uint64_t seed = 0;
    std::uint64_t conflict_budget = 0;  // 0 = unlimited
    std::int64_t timeout_ms = 0;        // 0 = unlimited
    bool trace_lemmas = false;
};

struct Stats {
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;  // stages + bool_decisions + literal_decisions
    std::uint64_t stages = 0;     // semantic decisions
    std::uint64_t bool_decisions = 0;
    std::uint64_t literal_decisions = 0;
    std::uint64_t r_propagations = 0;
    std::uint64_t clause_propagations = 0;
    std::uint64_t lemmas_learned = 0;
    std::uint64_t lemmas_deleted = 0;
    std::uint64_t explain_calls = 0;
    std::uint64_t restarts = 0;  // unused, always 0
    double wall_ms = 0.0;
};

enum class Verdict { sat, unsat, unknown };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::sat: return "sat";
        case Verdict::unsat: return "unsat";
        default: return "unknown";
    }
}

struct Model {
    std::vector<std::optional<RAValue>> arith;  // per ArithVar
    std::vector<LBool> booleans;                // per BoolVar
};

enum class VarCategory : std::uint8_t { normal = 0, fixed = 1, blocked = 2 };

struct BranchEvent {
    Var var;
    VarCategory category;  // category at pick time (booleans: normal)
};

struct Result {
    Verdict verdict = Verdict::unknown;
    Model model;
    Stats stats;
    std::vector<std::string> lemma_trace;            // rendered when trace_lemmas
    std::vector<std::vector<Literal>> lemmas;        // learned lemmas (for validation)
    std::vector<BranchEvent> branch_trace;
};

struct Formula {
    VarTable vars;
    AtomTable atoms;
    std::vector<std::vector<Literal>> clauses;
};

// ---------------------------------------------------------------------------
// Justified infeasible region of the current stage variable: disjoint pieces
// each tagged with the asserted literal that contributed it.
// ---------------------------------------------------------------------------
class InfeasibleSet {
  public:
    const IntervalSet& covered() const { return covered_; }

    void add(const IntervalSet& s, Literal just) {
        IntervalSet fresh = set_intersect(s, complement(covered_));
        for (auto& iv : fresh.intervals()) pieces_.push_back({iv, just});
        std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
            return compare(a.iv.lo, b.iv.lo) < 0;
        });
        covered_ = set_union(covered_, s);
    }

    /// Justifications whose pieces intersect s; when s is covered these
    /// literals jointly cover it.
    std::vector<Literal> covering(const IntervalSet& s) const {
        std::vector<Literal> out;
        for (auto& p : pieces_) {
            IntervalSet piece = IntervalSet::from_intervals({p.iv});
            if (set_intersect(piece, s).empty()) continue;
            if (std::find(out.begin(), out.end(), p.just) == out.end()) out.push_back(p.just);
        }
        return out;
    }

  private:
    struct Piece {
        Interval iv;
        Literal just;
    };
    std::vector<Piece> pieces_;
    IntervalSet covered_;
};

// ---------------------------------------------------------------------------
// Solver.
// ---------------------------------------------------------------------------
class Solver {
  public:
    Solver(Formula&& f, const EngineConfig& cfg)
        : vars_(std::move(f.vars)),
          atoms_(std::move(f.atoms)),
          cfg_(cfg),
          rng_(cfg.seed ^ 0x9e3779b97f4a7c15ULL) {
        input_clauses_ = std::move(f.clauses);
    }

    Result solve();

    const AtomTable& atoms() const { return atoms_; }
    const VarTable& vars() const { return vars_; }

    friend struct SolverTestPeer;

  private:
    // ---- reasons & trail -------------------------------------------------
    struct Reason {
        enum Kind : std::uint8_t { decided, unit_prop, r_prop } kind = decided;
        ClauseIdx clause = kNullClause;     // unit_prop
        std::vector<Literal> justs;         // r_prop: justification literals
        ArithVar stage_var = kNullIndex;    // r_prop: variable the propagation ran on
    };
    struct EBoolAssign {
        BoolVar b;
        Reason reason;
    };
    struct ELitAssign {
        Literal lit;  // asserted true
        Reason reason;
    };
    struct EArithAssign {
        ArithVar v;
    };
    struct ENewStage {
        ArithVar v;
        std::optional<ArithVar> prev_stage;
        InfeasibleSet saved_infeasible;
    };
    struct ENewLevel {};
    struct EPathFinder {};
    struct EBlockFinder {};
    struct EClauseUnivar {
        ClauseIdx clause;
        Var u;
        IntervalSet prev_feasible;  // arith only
    };
    struct EWatchMove {
        ClauseIdx clause;
        int slot;
        Var old_watch;
    };
    struct ECurrNarrow {
        InfeasibleSet prev;
    };
    using TrailEntry = std::variant<EBoolAssign, ELitAssign, EArithAssign, ENewStage, ENewLevel,
                                    EPathFinder, EBlockFinder, EClauseUnivar, EWatchMove,
                                    ECurrNarrow>;

    // ---- state -----------------------------------------------------------
    VarTable vars_;
    AtomTable atoms_;
    EngineConfig cfg_;
    Stats stats_;
    std::mt19937_64 rng_;

    std::vector<std::vector<Literal>> input_clauses_;
    std::vector<std::unique_ptr<Clause>> clauses_;  // tombstoned on deletion

    ArithAssignment alpha_;
    std::vector<ArithVar> arith_order_;  // assignment order
    std::vector<LBool> bool_value_;
    std::vector<LBool> atom_bvalue_;
    std::vector<Reason> atom_reason_;

    std::vector<IntervalSet> feasible_;  // clause-level feasible_set[v]
    std::set<ArithVar> blocked_vars_, fixed_vars_;
    std::vector<double> arith_activity_, bool_activity_;
    double arith_inc_ = 1.0, bool_inc_ = 1.0;

    std::vector<std::vector<ClauseIdx>> bool_watches_, arith_watches_;
    std::vector<std::vector<ClauseIdx>> univariate_;  // per arith var
    std::unordered_map<ClauseIdx, IntervalSet> clause_cache_;  // feasible of univariate clause

    std::optional<ArithVar> stage_var_;
    InfeasibleSet infeasible_;
    std::vector<TrailEntry> trail_;
    struct StageMark {
        ArithVar v;
        std::size_t reprocess_index;  // trail index right after the ENewStage entry
    };
    std::vector<StageMark> stage_marks_;
    int level_ = 0;

    std::deque<std::pair<ClauseIdx, Var>> pending_;  // univariate events

    std::unordered_map<std::uint64_t, IntervalSet> stage_lit_cache_;
    std::unordered_map<AtomId, bool> eval_cache_;
    std::unordered_set<std::size_t> lemma_hashes_;

    std::vector<Var> occurring_;          // variables appearing in input clauses
    std::vector<Var> static_order_;       // nlsat_static branch order
    Result result_;
    std::chrono::steady_clock::time_point deadline_;
    bool has_deadline_ = false;

    // ---- helpers ---------------------------------------------------------
    bool assigned(Var v) const {
        return v.is_bool() ? bool_value_[v.index] != LBool::undef : alpha_.assigned(v.index);
    }

    LBool lit_value(Literal l) {
        const Atom& a = atoms_[l.atom];
        if (a.kind == Atom::Kind::boolean) {
            LBool bv = bool_value_[a.bvar];
            if (bv == LBool::undef) return bv;
            return l.neg ? lbool_neg(bv) : bv;
        }
        if (atom_bvalue_[l.atom] != LBool::undef) {
            LBool av = atom_bvalue_[l.atom];
            return l.neg ? lbool_neg(av) : av;
        }
        for (auto& v : a.vars)
            if (!alpha_.assigned(v.index)) return LBool::undef;
        auto it = eval_cache_.find(l.atom);
        bool truth;
        if (it != eval_cache_.end()) {
            truth = it->second;
        } else {
            truth = evaluate_arith_atom(a, alpha_);
            eval_cache_.emplace(l.atom, truth);
        }
        return lbool_of(truth != l.neg);
    }

    const IntervalSet& lit_feasible_cached(Literal l, ArithVar v) {
        std::uint64_t key = (static_cast<std::uint64_t>(l.atom) << 1) | (l.neg ? 1 : 0);
        auto it = stage_lit_cache_.find(key);
        if (it != stage_lit_cache_.end()) return it->second;
        IntervalSet s = literal_feasible(atoms_, l, v, alpha_);
        return stage_lit_cache_.emplace(key, std::move(s)).first->second;
    }

    // ---- trail push/pop --------------------------------------------------
    void push_bool_assign(BoolVar b, bool value, Reason reason) {
        bool_value_[b] = lbool_of(value);
        if (reason.kind == Reason::unit_prop) clauses_[reason.clause]->in_use++;
        trail_.push_back(EBoolAssign{b, std::move(reason)});
        watch_update(Var::boolean(b));
    }
    void push_lit_assign(Literal l, Reason reason) {
        atom_bvalue_[l.atom] = l.neg ? LBool::false_ : LBool::true_;
        atom_reason_[l.atom] = reason;
        if (reason.kind == Reason::unit_prop) clauses_[reason.clause]->in_use++;
        trail_.push_back(ELitAssign{l, std::move(reason)});
    }
    void push_arith_assign(ArithVar v, const RAValue& val) {
        alpha_.set(v, val);
        arith_order_.push_back(v);
        trail_.push_back(EArithAssign{v});
        stats_.stages++;
        stats_.decisions++;
        stage_var_.reset();
        watch_update(Var::arith(v));
    }
    void push_new_stage(ArithVar v) {
        trail_.push_back(ENewStage{v, stage_var_, infeasible_});
        stage_var_ = v;
        infeasible_ = InfeasibleSet();
        stage_marks_.push_back({v, trail_.size()});
        stage_lit_cache_.clear();
    }
    void push_curr_narrow(Literal just, const IntervalSet& lit_set) {
        IntervalSet infeas = complement(lit_set);
        if (set_intersect(infeas, complement(infeasible_.covered())).empty()) return;
        trail_.push_back(ECurrNarrow{infeasible_});
        infeasible_.add(infeas, just);
    }

    void pop_to(std::size_t mark) {
        eval_cache_.clear();
        while (trail_.size() > mark) {
            TrailEntry e = std::move(trail_.back());
            trail_.pop_back();
            std::visit(
                [&](auto&& entry) {
                    using T = std::decay_t<decltype(entry)>;
                    if constexpr (std::is_same_v<T, EBoolAssign>) {
                        bool_value_[entry.b] = LBool::undef;
                        if (entry.reason.kind == Reason::unit_prop)
                            clauses_[entry.reason.clause]->in_use--;
                    } else if constexpr (std::is_same_v<T, ELitAssign>) {
                        atom_bvalue_[entry.lit.atom] = LBool::undef;
                        if (entry.reason.kind == Reason::unit_prop)
                            clauses_[entry.reason.clause]->in_use--;
                    } else if constexpr (std::is_same_v<T, EArithAssign>) {
                        alpha_.unset(entry.v);
                        arith_order_.pop_back();
                        stage_var_ = entry.v;  // stage reopens
                    } else if constexpr (std::is_same_v<T, ENewStage>) {
                        stage_var_ = entry.prev_stage;
                        infeasible_ = entry.saved_infeasible;
                        stage_marks_.pop_back();
                        stage_lit_cache_.clear();
                    } else if constexpr (std::is_same_v<T, ENewLevel>) {
                        level_--;
                    } else if constexpr (std::is_same_v<T, EClauseUnivar>) {
                        if (entry.u.is_arith()) {
                            auto& lst = univariate_[entry.u.index];
                            assert(!lst.empty() && lst.back() == entry.clause);
                            lst.pop_back();
                            feasible_[entry.u.index] = entry.prev_feasible;
                            clause_cache_.erase(entry.clause);
                            clauses_[entry.clause]->in_use--;
                            update_category(entry.u.index);
                        }
                    } else if constexpr (std::is_same_v<T, EWatchMove>) {
                        Clause& c = *clauses_[entry.clause];
                        Var cur = c.watch[entry.slot];
                        auto& from = watch_list(cur);
                        from.erase(std::find(from.begin(), from.end(), entry.clause));
                        watch_list(entry.old_watch).push_back(entry.clause);
                        c.watch[entry.slot] = entry.old_watch;
                    } else if constexpr (std::is_same_v<T, ECurrNarrow>) {
                        infeasible_ = std::move(entry.prev);
                    }
                },
                e);
        }
    }

    std::vector<ClauseIdx>& watch_list(Var v) {
        return v.is_bool() ? bool_watches_[v.index] : arith_watches_[v.index];
    }

    // ---- watches ---------------------------------------------------------
    /// Trail height for attach-time watcher selection: unassigned = +inf;
    /// later-assigned variables rank higher so LIFO backtracking keeps the
    /// two-watcher invariant.
    std::size_t var_height(Var v) const {
        if (!assigned(v)) return SIZE_MAX;
        if (v.is_bool()) {
            for (std::size_t i = trail_.size(); i-- > 0;)
                if (auto* e = std::get_if<EBoolAssign>(&trail_[i]); e && e->b == v.index) return i;
        } else {
            for (std::size_t i = trail_.size(); i-- > 0;)
                if (auto* e = std::get_if<EArithAssign>(&trail_[i]); e && e->v == v.index) return i;
        }
        return 0;
    }

    void attach_clause(ClauseIdx ci) {
        Clause& c = *clauses_[ci];
        c.vars = clause_vars(atoms_, c.lits);
        std::vector<Var> by_height = c.vars;
        std::stable_sort(by_height.begin(), by_height.end(), [&](Var a, Var b) {
            return var_height(a) > var_height(b);
        });
        c.watch[0] = by_height.size() > 0 ? by_height[0] : Var{};
        c.watch[1] = by_height.size() > 1 ? by_height[1] : Var{};
        if (!c.watch[0].is_null()) watch_list(c.watch[0]).push_back(ci);
        if (!c.watch[1].is_null()) watch_list(c.watch[1]).push_back(ci);
        // Univariate right away?
        std::vector<Var> unassigned;
        for (auto& v : c.vars)
            if (!assigned(v)) unassigned.push_back(v);
        if (unassigned.size() == 1) pending_.push_back({ci, unassigned[0]});
    }

    void watch_update(Var v) {
        std::vector<ClauseIdx> snapshot = watch_list(v);
        for (ClauseIdx ci : snapshot) {
            if (!clauses_[ci]) continue;
            Clause& c = *clauses_[ci];
            int slot = c.watch[0] == v ? 0 : (c.watch[1] == v ? 1 : -1);
            if (slot < 0) continue;  // stale snapshot entry
            Var other = c.watch[1 - slot];
            if (other.is_null()) continue;  // single-variable clause
            Var repl{};
            for (auto& w : c.vars) {
                if (w == other || w == v) continue;
                if (!assigned(w)) {
                    repl = w;
                    break;
                }
            }
            if (!repl.is_null()) {
                auto& from = watch_list(v);
                from.erase(std::find(from.begin(), from.end(), ci));
                watch_list(repl).push_back(ci);
                trail_.push_back(EWatchMove{ci, slot, v});
                c.watch[slot] = repl;
            } else if (!assigned(other)) {
                pending_.push_back({ci, other});
            }
            // both watchers assigned: no action
        }
    }

    // ---- clause-level propagation (Alg. 5) -------------------------------
    void update_category(ArithVar v) {
        auto cls = feasible_[v].classify();
        blocked_vars_.erase(v);
        fixed_vars_.erase(v);
        if (cls == IntervalSet::Class::empty)
            blocked_vars_.insert(v);
        else if (cls == IntervalSet::Class::single_point)
            fixed_vars_.insert(v);
    }
    VarCategory category_of(ArithVar v) const {
        if (blocked_vars_.count(v)) return VarCategory::blocked;
        if (fixed_vars_.count(v)) return VarCategory::fixed;
        return VarCategory::normal;
    }

    void clause_level_propagate(ClauseIdx ci, ArithVar v) {
        if (clause_cache_.count(ci)) return;  // already registered
        Clause& c = *clauses_[ci];
        IntervalSet s =
            clause_feasible(atoms_, c.lits, v, alpha_, [&](Literal l) { return lit_value(l); });
        trail_.push_back(EClauseUnivar{ci, Var::arith(v), feasible_[v]});
        univariate_[v].push_back(ci);
        clause_cache_.emplace(ci, s);
        c.in_use++;
        feasible_[v] = set_intersect(feasible_[v], s);
        update_category(v);
        stats_.clause_propagations++;
    }

    /// Re-register clauses that are univariate to the open stage variable but
    /// lost their registration to backtracking (lemmas attached mid-stage).
    void re_register_univariate(ArithVar v) {
        std::vector<ClauseIdx> snapshot = arith_watches_[v];
        for (ClauseIdx ci : snapshot) {
            if (!clauses_[ci] || clause_cache_.count(ci)) continue;
            Clause& c = *clauses_[ci];
            bool uni = true;
            for (auto& w : c.vars)
                if (!(w == Var::arith(v)) && !assigned(w)) {
                    uni = false;
                    break;
                }
            if (uni && !assigned(Var::arith(v))) clause_level_propagate(ci, v);
        }
    }

    // ---- boolean propagation over univariate clauses ---------------------
    std::optional<ClauseIdx> propagate() {
        while (!pending_.empty()) {
            auto [ci, u] = pending_.front();
            pending_.pop_front();
            if (!clauses_[ci]) continue;
            if (assigned(u)) continue;  // stale event
            if (u.is_arith()) {
                clause_level_propagate(ci, u.index);
                continue;
            }
            // clause univariate to boolean u: satisfied / propagate / conflict
            Clause& c = *clauses_[ci];
            bool sat = false;
            std::vector<Literal> undef;
            for (Literal l : c.lits) {
                LBool val = lit_value(l);
                if (val == LBool::true_) {
                    sat = true;
                    break;
                }
                if (val == LBool::undef) undef.push_back(l);
            }
            if (sat) continue;
            if (undef.empty()) {
                pending_.clear();
                return ci;  // conflict
            }
            bool all_pos = true, all_neg = true;
            for (Literal l : undef) {
                (l.neg ? all_pos : all_neg) = false;
            }
            if (!all_pos && !all_neg) continue;  // both polarities: cannot force
            BoolVar b = atoms_[undef[0].atom].bvar;
            Reason r;
            r.kind = Reason::unit_prop;
            r.clause = ci;
            push_bool_assign(b, all_pos, r);
        }
        return std::nullopt;
    }

    // ---- literal assertion within a stage ---------------------------------
    void assert_stage_literal(Literal l, Reason reason, const IntervalSet* lit_set) {
        const Atom& a = atoms_[l.atom];
        assert(a.is_arith());
        (void)a;
        push_lit_assign(l, std::move(reason));
        if (lit_set) push_curr_narrow(l, *lit_set);
    }

    // ---- stage processing (Alg. 1 / Alg. 3) -------------------------------
    std::optional<ClauseIdx> process_stage(ArithVar v);

    // ---- conflict analysis -------------------------------------------------
    struct ResolveOutcome {
        bool unsat = false;
        std::vector<Literal> lemma;
        enum Target { none, decision, stage } target = none;
        std::size_t trail_index = 0;  // decision: index of the decision entry
        Literal flip;                 // decision: literal to unit-propagate
        ArithVar stage_v = kNullIndex;  // stage: variable whose stage reprocesses
        std::set<Var> bump_vars;
    };
    ResolveOutcome resolve(ClauseIdx conflict);
    bool handle_conflict(ClauseIdx conflict);  // false => UNSAT
    void bump_and_decay(const std::set<Var>& vars);
    void reduce_lemmas();
    bool unsat_shortcut(ArithVar v);
    ClauseIdx add_clause(const std::vector<Literal>& lits, bool lemma);
    void sync_atoms();
    bool init_search();  // false: trivially unsatisfiable input

    double lemma_conf_cur_ = 100.0;
    std::uint64_t conflicts_since_reduce_ = 0;

    // ---- branching ---------------------------------------------------------
    std::optional<Var> pick_branch();

    bool check_model();
    Result finish(Verdict v, std::chrono::steady_clock::time_point t0);
};

}  // namespace nrasat

#include "nrasat/engine_impl.hpp"
