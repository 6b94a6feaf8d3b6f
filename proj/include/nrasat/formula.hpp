#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nrasat/polynomial.hpp"
#include "nrasat/real_alg.hpp"
#include "nrasat/var.hpp"

namespace nrasat {

enum class LBool : std::int8_t { false_ = 0, true_ = 1, undef = 2 };

inline LBool lbool_of(bool b) { return b ? LBool::true_ : LBool::false_; }
inline LBool lbool_neg(LBool v) {
    if (v == LBool::undef) return v;
    return v == LBool::true_ ? LBool::false_ : LBool::true_;
}

enum class PolyOp : std::uint8_t { lt, le, eq, ge, gt };

inline bool op_holds(int sign, PolyOp op) {
    switch (op) {
        case PolyOp::lt: return sign < 0;
        case PolyOp::le: return sign <= 0;
        case PolyOp::eq: return sign == 0;
        case PolyOp::ge: return sign >= 0;
        case PolyOp::gt: return sign > 0;
    }
    return false;
}
/// op' with p~0 <=> -p op' 0 (mirror under sign flip of the polynomial).
inline PolyOp mirror_op(PolyOp op) {
    switch (op) {
        case PolyOp::lt: return PolyOp::gt;
        case PolyOp::le: return PolyOp::ge;
        case PolyOp::ge: return PolyOp::le;
        case PolyOp::gt: return PolyOp::lt;
        default: return PolyOp::eq;
    }
}
/// op' with not(p op 0) <=> p op' 0; undefined for eq (kept as negated literal).
inline PolyOp negate_op(PolyOp op) {
    switch (op) {
        case PolyOp::lt: return PolyOp::ge;
        case PolyOp::le: return PolyOp::gt;
        case PolyOp::ge: return PolyOp::lt;
        case PolyOp::gt: return PolyOp::le;
        default: assert(false); return PolyOp::eq;
    }
}
inline const char* op_str(PolyOp op) {
    switch (op) {
        case PolyOp::lt: return "<";
        case PolyOp::le: return "<=";
        case PolyOp::eq: return "=";
        case PolyOp::ge: return ">=";
        case PolyOp::gt: return ">";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Atoms, hash-consed. Polynomial atoms are stored normalized (integer
// primitive, positive leading coefficient) so p >= 0 and -p <= 0 share an
// identity. Root atoms compare a variable against the k-th real root of a
// polynomial that contains that variable.
// ---------------------------------------------------------------------------
using AtomId = std::uint32_t;

struct Atom {
    enum class Kind : std::uint8_t { boolean, poly, root };
    Kind kind = Kind::boolean;
    BoolVar bvar = kNullIndex;
    Polynomial poly;
    PolyOp op = PolyOp::eq;
    std::uint32_t root_index = 0;
    ArithVar root_var = kNullIndex;
    std::vector<Var> vars;  // sorted distinct

    bool is_arith() const { return kind != Kind::boolean; }
};

struct Literal {
    AtomId atom = kNullIndex;
    bool neg = false;

    friend bool operator==(Literal a, Literal b) { return a.atom == b.atom && a.neg == b.neg; }
    friend bool operator!=(Literal a, Literal b) { return !(a == b); }
    friend bool operator<(Literal a, Literal b) {
        return a.atom < b.atom || (a.atom == b.atom && a.neg < b.neg);
    }
};
inline Literal negate(Literal l) { return {l.atom, !l.neg}; }

class AtomTable {
  public:
    AtomId mk_bool(BoolVar b) {
        Atom a;
        a.kind = Atom::Kind::boolean;
        a.bvar = b;
        a.vars = {Var::boolean(b)};
        return intern(std::move(a), hash_combine(0xb001, b));
    }

    /// Normalizing constructor; p must not be constant.
    AtomId mk_poly(const Polynomial& p, PolyOp op) {
        if (p.is_constant()) throw std::invalid_argument("mk_poly: constant polynomial");
        Polynomial n = p.primitive();
        PolyOp nop = op;
        // primitive() flips the sign when the leading coefficient is negative.
        if (sign_of(p.terms().front().coeff) < 0) nop = mirror_op(op);
        Atom a;
        a.kind = Atom::Kind::poly;
        a.poly = std::move(n);
        a.op = nop;
        for (ArithVar v : a.poly.vars()) a.vars.push_back(Var::arith(v));
        std::size_t h = hash_combine(a.poly.hash(), static_cast<std::size_t>(nop));
        return intern(std::move(a), h);
    }

    AtomId mk_root(ArithVar v, PolyOp op, std::uint32_t index, const Polynomial& p) {
        assert(index >= 1);
        assert(p.contains_var(v));
        Atom a;
        a.kind = Atom::Kind::root;
        a.poly = p.primitive();
        a.op = op;
        a.root_index = index;
        a.root_var = v;
        for (ArithVar w : a.poly.vars()) a.vars.push_back(Var::arith(w));
        std::size_t h = hash_combine(hash_combine(a.poly.hash(), static_cast<std::size_t>(op)),
                                     hash_combine(index, v));
        return intern(std::move(a), h);
    }

    const Atom& operator[](AtomId id) const { return atoms_[id]; }
    std::size_t size() const { return atoms_.size(); }

  private:
    AtomId intern(Atom&& a, std::size_t h) {
        auto& bucket = index_[h];
        for (AtomId id : bucket)
            if (same(atoms_[id], a)) return id;
        AtomId id = static_cast<AtomId>(atoms_.size());
        atoms_.push_back(std::move(a));
        bucket.push_back(id);
        return id;
    }
    static bool same(const Atom& x, const Atom& y) {
        if (x.kind != y.kind) return false;
        switch (x.kind) {
            case Atom::Kind::boolean: return x.bvar == y.bvar;
            case Atom::Kind::poly: return x.op == y.op && x.poly == y.poly;
            case Atom::Kind::root:
                return x.op == y.op && x.root_index == y.root_index && x.root_var == y.root_var &&
                       x.poly == y.poly;
        }
        return false;
    }

    std::vector<Atom> atoms_;
    std::unordered_map<std::size_t, std::vector<AtomId>> index_;
};

/// Literal constructor for polynomial comparisons: pushes negation into the
/// operator except for equalities (kept as negated literals).
inline Literal mk_poly_literal(AtomTable& at, const Polynomial& p, PolyOp op, bool negated) {
    if (negated && op != PolyOp::eq) {
        op = negate_op(op);
        negated = false;
    }
    return {at.mk_poly(p, op), negated};
}

// ---------------------------------------------------------------------------
// Variable table: names and kinds, dense indices per kind.
// ---------------------------------------------------------------------------
class VarTable {
  public:
    BoolVar new_bool(const std::string& name) {
        bool_names_.push_back(name);
        return static_cast<BoolVar>(bool_names_.size() - 1);
    }
    ArithVar new_arith(const std::string& name) {
        arith_names_.push_back(name);
        return static_cast<ArithVar>(arith_names_.size() - 1);
    }
    std::size_t num_bool() const { return bool_names_.size(); }
    std::size_t num_arith() const { return arith_names_.size(); }
    const std::string& bool_name(BoolVar b) const { return bool_names_[b]; }
    const std::string& arith_name(ArithVar v) const { return arith_names_[v]; }

  private:
    std::vector<std::string> bool_names_, arith_names_;
};

// ---------------------------------------------------------------------------
// Clauses.
// ---------------------------------------------------------------------------
using ClauseIdx = std::uint32_t;
inline constexpr ClauseIdx kNullClause = 0xffffffffu;

struct Clause {
    std::vector<Literal> lits;
    bool is_lemma = false;
    double activity = 0.0;
    Var watch[2] = {Var{}, Var{}};
    std::vector<Var> vars;      // sorted distinct variables of all literals
    std::uint32_t in_use = 0;   // live trail references (reason / univariate cache)
};

inline std::vector<Var> clause_vars(const AtomTable& at, const std::vector<Literal>& lits) {
    std::vector<Var> vs;
    for (auto& l : lits)
        for (auto& v : at[l.atom].vars) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// ---------------------------------------------------------------------------
// Three-valued literal evaluation under a (partial) assignment.
// ---------------------------------------------------------------------------

/// Exact truth of an arithmetic atom under alpha; all variables must be
/// assigned. Root atoms with an out-of-range index evaluate false.
inline bool evaluate_arith_atom(const Atom& a, const ArithAssignment& alpha) {
    if (a.kind == Atom::Kind::poly) return op_holds(sign_at(a.poly, alpha), a.op);
    assert(a.kind == Atom::Kind::root);
    ArithAssignment rest = alpha;
    rest.unset(a.root_var);
    RootsResult rr = isolate_roots_under(a.poly, a.root_var, rest);
    if (rr.vanished)
        throw std::invalid_argument("root atom polynomial vanished under assignment");
    if (rr.roots.size() < a.root_index) return false;
    int c = compare(alpha.value(a.root_var), rr.roots[a.root_index - 1]);
    return op_holds(c, a.op);
}

/// Spec op evaluate_literal. `bool_val` maps BoolVar -> LBool.
template <class BoolVal>
LBool evaluate_literal(const AtomTable& at, Literal l, const ArithAssignment& alpha,
                       BoolVal&& bool_val) {
    const Atom& a = at[l.atom];
    if (a.kind == Atom::Kind::boolean) {
        LBool v = bool_val(a.bvar);
        if (v == LBool::undef) return v;
        return l.neg ? lbool_neg(v) : v;
    }
    for (auto& v : a.vars)
        if (!alpha.assigned(v.index)) return LBool::undef;
    bool t = evaluate_arith_atom(a, alpha);
    return lbool_of(t != l.neg);
}

// ---------------------------------------------------------------------------
// Rendering (SMT-LIB-style terms; root atoms use the (root p k v) extension).
// ---------------------------------------------------------------------------

template <class NameFn>
std::string poly_to_sexp(const Polynomial& p, NameFn&& name) {
    if (p.is_zero()) return "0";
    auto rat_str = [](const Rational& q) {
        Rational a = rat_abs(q);
        std::string s = is_integer(a) ? to_string(a)
                                      : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
        return q < 0 ? "(- " + s + ")" : s;
    };
    std::vector<std::string> terms;
    for (auto& t : p.terms()) {
        std::vector<std::string> factors;
        if (t.coeff != 1 || t.mono.is_one()) factors.push_back(rat_str(t.coeff));
        const auto& es = t.mono.exponents();
        for (ArithVar v = 0; v < es.size(); ++v) {
            if (es[v] == 0) continue;
            std::string nm(name(v));
            if (es[v] == 1)
                factors.push_back(nm);
            else
                factors.push_back("(^ " + nm + " " + std::to_string(es[v]) + ")");
        }
        if (factors.size() == 1)
            terms.push_back(factors[0]);
        else {
            std::string s = "(*";
            for (auto& f : factors) s += " " + f;
            terms.push_back(s + ")");
        }
    }
    if (terms.size() == 1) return terms[0];
    std::string s = "(+";
    for (auto& t : terms) s += " " + t;
    return s + ")";
}

template <class NameFn>
std::string literal_to_string(const AtomTable& at, Literal l, NameFn&& arith_name,
                              const VarTable* vt = nullptr) {
    const Atom& a = at[l.atom];
    std::string body;
    switch (a.kind) {
        case Atom::Kind::boolean:
            body = vt ? vt->bool_name(a.bvar) : "b" + std::to_string(a.bvar);
            break;
        case Atom::Kind::poly:
            body = "(" + std::string(op_str(a.op)) + " " + poly_to_sexp(a.poly, arith_name) + " 0)";
            break;
        case Atom::Kind::root:
            body = "(" + std::string(op_str(a.op)) + " " + std::string(arith_name(a.root_var)) +
                   " (root " + poly_to_sexp(a.poly, arith_name) + " " +
                   std::to_string(a.root_index) + " " + std::string(arith_name(a.root_var)) + "))";
            break;
    }
    return l.neg ? "(not " + body + ")" : body;
}

}  // namespace nrasat

template <>
struct std::hash<nrasat::Literal> {
    std::size_t operator()(nrasat::Literal l) const {
        return (static_cast<std::size_t>(l.atom) << 1) | (l.neg ? 1 : 0);
    }
};
