#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nrasat/engine.hpp"
#include "nrasat/formula.hpp"

namespace nrasat::smt2 {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int ln, int cl, const std::string& msg)
        : std::runtime_error(std::to_string(ln) + ":" + std::to_string(cl) + ": " + msg),
          line(ln),
          col(cl) {}
};

// ---------------------------------------------------------------------------
// S-expressions.
// ---------------------------------------------------------------------------
struct Sexp {
    bool is_atom = true;
    std::string tok;
    std::vector<Sexp> items;
    int line = 0, col = 0;

    const Sexp& at(std::size_t i) const {
        if (is_atom || i >= items.size())
            throw ParseError(line, col, "arity error in " + head());
        return items[i];
    }
    std::string head() const {
        if (is_atom) return tok;
        if (items.empty() || !items[0].is_atom) return "(...)";
        return items[0].tok;
    }
};

class Reader {
  public:
    explicit Reader(const std::string& text) : s_(text) {}

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

    Sexp next() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError(line_, col(), "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            Sexp e;
            e.is_atom = false;
            e.line = line_;
            e.col = col();
            advance();
            for (;;) {
                skip_ws();
                if (pos_ >= s_.size()) throw ParseError(e.line, e.col, "unbalanced '('");
                if (s_[pos_] == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(next());
            }
        }
        if (c == ')') throw ParseError(line_, col(), "unexpected ')'");
        Sexp e;
        e.line = line_;
        e.col = col();
        if (c == '"') {  // string literal (set-info payloads)
            advance();
            std::string out = "\"";
            while (pos_ < s_.size() && s_[pos_] != '"') {
                out += s_[pos_];
                advance();
            }
            if (pos_ >= s_.size()) throw ParseError(e.line, e.col, "unterminated string");
            advance();
            e.tok = out + "\"";
            return e;
        }
        if (c == '|') {
            advance();
            std::string out;
            while (pos_ < s_.size() && s_[pos_] != '|') {
                out += s_[pos_];
                advance();
            }
            if (pos_ >= s_.size()) throw ParseError(e.line, e.col, "unterminated quoted symbol");
            advance();
            e.tok = out;
            return e;
        }
        std::string out;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ';') {
            out += s_[pos_];
            advance();
        }
        if (out.empty()) throw ParseError(line_, col(), "lexical error");
        e.tok = out;
        return e;
    }

  private:
    void advance() {
        if (s_[pos_] == '\n') {
            line_++;
            line_start_ = pos_ + 1;
        }
        pos_++;
    }
    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == ';') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
    int col() const { return static_cast<int>(pos_ - line_start_) + 1; }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::size_t line_start_ = 0;
};

// ---------------------------------------------------------------------------
// Boolean expression tree over hash-consed atoms (the parsed assertion form).
// ---------------------------------------------------------------------------
struct BExpr {
    enum class Op : std::uint8_t { lit, and_, or_, not_, true_, false_ } op = Op::true_;
    Literal lit{};
    std::vector<BExpr> kids;

    static BExpr mk_lit(Literal l) {
        BExpr e;
        e.op = Op::lit;
        e.lit = l;
        return e;
    }
    static BExpr mk(Op o, std::vector<BExpr> ks) {
        BExpr e;
        e.op = o;
        e.kids = std::move(ks);
        return e;
    }
    static BExpr mk_const(bool b) {
        BExpr e;
        e.op = b ? Op::true_ : Op::false_;
        return e;
    }
};

struct Script {
    VarTable vars;
    AtomTable atoms;
    std::vector<std::string> declared_bools, declared_ariths;  // in declaration order
    struct Command {
        enum class Kind { assert_, check_sat, get_model, exit_ } kind;
        BExpr expr;  // assert_
    };
    std::vector<Command> commands;
    bool logic_set = false;
};

// ---------------------------------------------------------------------------
// Parser: SMT-LIB v2 subset for QF_NRA.
// ---------------------------------------------------------------------------
class Parser {
  public:
    Script parse(const std::string& text) {
        Script sc;
        Reader rd(text);
        while (!rd.at_end()) {
            Sexp e = rd.next();
            command(sc, e);
        }
        return sc;
    }

  private:
    using Value = std::variant<Polynomial, BExpr>;  // Real term or Bool term
    struct Env {
        std::map<std::string, Value> lets;
        const Env* up = nullptr;
        const Value* find(const std::string& n) const {
            auto it = lets.find(n);
            if (it != lets.end()) return &it->second;
            return up ? up->find(n) : nullptr;
        }
    };

    std::map<std::string, BoolVar> bools_;
    std::map<std::string, ArithVar> ariths_;

    void command(Script& sc, const Sexp& e) {
        if (e.is_atom) throw ParseError(e.line, e.col, "expected command");
        std::string h = e.head();
        if (h == "set-logic") {
            std::string logic = e.at(1).tok;
            if (logic != "QF_NRA")
                throw ParseError(e.line, e.col, "unsupported logic " + logic);
            sc.logic_set = true;
        } else if (h == "set-info" || h == "set-option") {
            // ignored
        } else if (h == "declare-fun" || h == "declare-const") {
            std::string name = e.at(1).tok;
            const Sexp& sort = h == "declare-fun" ? e.at(3) : e.at(2);
            if (h == "declare-fun" && (!e.at(2).items.empty() || e.at(2).is_atom))
                throw ParseError(e.line, e.col, "arity error: only 0-ary functions supported");
            if (bools_.count(name) || ariths_.count(name))
                throw ParseError(e.line, e.col, "redeclaration of " + name);
            if (sort.is_atom && sort.tok == "Real") {
                ariths_[name] = sc.vars.new_arith(name);
                sc.declared_ariths.push_back(name);
            } else if (sort.is_atom && sort.tok == "Bool") {
                bools_[name] = sc.vars.new_bool(name);
                sc.declared_bools.push_back(name);
            } else {
                throw ParseError(sort.line, sort.col, "sort error: expected Real or Bool");
            }
        } else if (h == "assert") {
            Env env;
            Value v = term(sc, e.at(1), env);
            if (!std::holds_alternative<BExpr>(v))
                throw ParseError(e.line, e.col, "sort error: assert expects Bool");
            sc.commands.push_back({Script::Command::Kind::assert_, std::get<BExpr>(std::move(v))});
        } else if (h == "check-sat") {
            sc.commands.push_back({Script::Command::Kind::check_sat, {}});
        } else if (h == "get-model") {
            sc.commands.push_back({Script::Command::Kind::get_model, {}});
        } else if (h == "exit") {
            sc.commands.push_back({Script::Command::Kind::exit_, {}});
        } else {
            throw ParseError(e.line, e.col, "unsupported command " + h);
        }
    }

    static bool is_numeral(const std::string& t) {
        if (t.empty()) return false;
        bool dot = false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '.') {
                if (dot || i == 0 || i + 1 == t.size()) return false;
                dot = true;
            } else if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    }

    Polynomial real_term(Script& sc, const Sexp& e, const Env& env) {
        Value v = term(sc, e, env);
        if (!std::holds_alternative<Polynomial>(v))
            throw ParseError(e.line, e.col, "sort error: expected Real term");
        return std::get<Polynomial>(std::move(v));
    }
    BExpr bool_term(Script& sc, const Sexp& e, const Env& env) {
        Value v = term(sc, e, env);
        if (!std::holds_alternative<BExpr>(v))
            throw ParseError(e.line, e.col, "sort error: expected Bool term");
        return std::get<BExpr>(std::move(v));
    }

    BExpr cmp_chain(Script& sc, const Sexp& e, const Env& env, PolyOp op) {
        if (e.items.size() < 3) throw ParseError(e.line, e.col, "arity error in " + e.head());
        std::vector<BExpr> conj;
        Polynomial prev = real_term(sc, e.at(1), env);
        for (std::size_t i = 2; i < e.items.size(); ++i) {
            Polynomial cur = real_term(sc, e.at(i), env);
            Polynomial diff = prev - cur;  // prev op cur  <=>  diff op 0
            if (diff.is_constant()) {
                conj.push_back(BExpr::mk_const(op_holds(sign_of(diff.constant_value()), op)));
            } else {
                conj.push_back(BExpr::mk_lit(mk_poly_literal(sc.atoms, diff, op, false)));
            }
            prev = std::move(cur);
        }
        if (conj.size() == 1) return std::move(conj[0]);
        return BExpr::mk(BExpr::Op::and_, std::move(conj));
    }

    Value term(Script& sc, const Sexp& e, const Env& env) {
        if (e.is_atom) {
            const std::string& t = e.tok;
            if (const Value* bound = env.find(t)) return *bound;
            if (t == "true") return BExpr::mk_const(true);
            if (t == "false") return BExpr::mk_const(false);
            if (is_numeral(t))
                return Polynomial::constant(rational_from_decimal(t));
            auto ai = ariths_.find(t);
            if (ai != ariths_.end()) return Polynomial::variable(ai->second);
            auto bi = bools_.find(t);
            if (bi != bools_.end()) return BExpr::mk_lit({sc.atoms.mk_bool(bi->second), false});
            throw ParseError(e.line, e.col, "unknown symbol " + t);
        }
        std::string h = e.head();
        if (h == "let") {
            const Sexp& binds = e.at(1);
            if (binds.is_atom) throw ParseError(binds.line, binds.col, "let expects bindings");
            Env inner;
            inner.up = &env;
            for (auto& b : binds.items) {
                if (b.is_atom || b.items.size() != 2 || !b.items[0].is_atom)
                    throw ParseError(b.line, b.col, "bad let binding");
                inner.lets.emplace(b.items[0].tok, term(sc, b.items[1], env));
            }
            return term(sc, e.at(2), inner);
        }
        if (h == "+") {
            Polynomial r;
            for (std::size_t i = 1; i < e.items.size(); ++i) r += real_term(sc, e.at(i), env);
            return r;
        }
        if (h == "-") {
            if (e.items.size() == 2) return -real_term(sc, e.at(1), env);
            if (e.items.size() < 3) throw ParseError(e.line, e.col, "arity error in -");
            Polynomial r = real_term(sc, e.at(1), env);
            for (std::size_t i = 2; i < e.items.size(); ++i) r -= real_term(sc, e.at(i), env);
            return r;
        }
        if (h == "*") {
            if (e.items.size() < 2) throw ParseError(e.line, e.col, "arity error in *");
            Polynomial r = Polynomial::constant(1);
            for (std::size_t i = 1; i < e.items.size(); ++i) r *= real_term(sc, e.at(i), env);
            return r;
        }
        if (h == "/") {
            if (e.items.size() != 3) throw ParseError(e.line, e.col, "arity error in /");
            Polynomial num = real_term(sc, e.at(1), env);
            Polynomial den = real_term(sc, e.at(2), env);
            if (!den.is_constant() || den.is_zero())
                throw ParseError(e.line, e.col, "unsupported: division by a non-constant or zero");
            return (Rational(1) / den.constant_value()) * num;
        }
        if (h == "^") {
            if (e.items.size() != 3) throw ParseError(e.line, e.col, "arity error in ^");
            Polynomial base = real_term(sc, e.at(1), env);
            Polynomial ex = real_term(sc, e.at(2), env);
            if (!ex.is_constant() || !is_integer(ex.constant_value()) ||
                ex.constant_value() < 0)
                throw ParseError(e.line, e.col, "unsupported exponent");
            return base.pow(static_cast<std::uint32_t>(ex.constant_value().get_num().get_si()));
        }
        if (h == "<") return cmp_chain(sc, e, env, PolyOp::lt);
        if (h == "<=") return cmp_chain(sc, e, env, PolyOp::le);
        if (h == ">") return cmp_chain(sc, e, env, PolyOp::gt);
        if (h == ">=") return cmp_chain(sc, e, env, PolyOp::ge);
        if (h == "=") {
            // Real chained equality; boolean equality is out of the subset.
            Value first = term(sc, e.at(1), env);
            if (std::holds_alternative<BExpr>(first))
                throw ParseError(e.line, e.col, "unsupported: boolean equality");
            std::vector<BExpr> conj;
            Polynomial prev = std::get<Polynomial>(std::move(first));
            for (std::size_t i = 2; i < e.items.size(); ++i) {
                Polynomial cur = real_term(sc, e.at(i), env);
                Polynomial diff = prev - cur;
                if (diff.is_constant())
                    conj.push_back(BExpr::mk_const(diff.is_zero()));
                else
                    conj.push_back(BExpr::mk_lit(mk_poly_literal(sc.atoms, diff, PolyOp::eq, false)));
                prev = std::move(cur);
            }
            if (conj.empty()) throw ParseError(e.line, e.col, "arity error in =");
            if (conj.size() == 1) return std::move(conj[0]);
            return BExpr::mk(BExpr::Op::and_, std::move(conj));
        }
        if (h == "not") {
            if (e.items.size() != 2) throw ParseError(e.line, e.col, "arity error in not");
            return BExpr::mk(BExpr::Op::not_, {bool_term(sc, e.at(1), env)});
        }
        if (h == "and" || h == "or") {
            std::vector<BExpr> ks;
            for (std::size_t i = 1; i < e.items.size(); ++i)
                ks.push_back(bool_term(sc, e.at(i), env));
            if (ks.empty()) return BExpr::mk_const(h == "and");
            if (ks.size() == 1) return std::move(ks[0]);
            return BExpr::mk(h == "and" ? BExpr::Op::and_ : BExpr::Op::or_, std::move(ks));
        }
        if (h == "=>") {
            if (e.items.size() < 3) throw ParseError(e.line, e.col, "arity error in =>");
            // right-associative: (=> a b c) = a -> (b -> c)
            std::vector<BExpr> ks;
            for (std::size_t i = 1; i < e.items.size(); ++i)
                ks.push_back(bool_term(sc, e.at(i), env));
            BExpr r = ks.back();
            for (std::size_t i = ks.size() - 1; i-- > 0;) {
                r = BExpr::mk(BExpr::Op::or_,
                              {BExpr::mk(BExpr::Op::not_, {std::move(ks[i])}), std::move(r)});
            }
            return r;
        }
        if (h == "ite") {
            if (e.items.size() != 4) throw ParseError(e.line, e.col, "arity error in ite");
            BExpr c = bool_term(sc, e.at(1), env);
            Value tv = term(sc, e.at(2), env);
            Value fv = term(sc, e.at(3), env);
            if (!std::holds_alternative<BExpr>(tv) || !std::holds_alternative<BExpr>(fv))
                throw ParseError(e.line, e.col, "unsupported: ite over Real");
            BExpr notc = BExpr::mk(BExpr::Op::not_, {c});
            BExpr left = BExpr::mk(BExpr::Op::or_, {std::move(notc), std::get<BExpr>(std::move(tv))});
            BExpr right = BExpr::mk(BExpr::Op::or_, {std::move(c), std::get<BExpr>(std::move(fv))});
            return BExpr::mk(BExpr::Op::and_, {std::move(left), std::move(right)});
        }
        if (h == "forall" || h == "exists")
            throw ParseError(e.line, e.col, "unsupported: quantifiers");
        throw ParseError(e.line, e.col, "unsupported operator " + h);
    }
};

inline Script parse(const std::string& text) { return Parser().parse(text); }

// ---------------------------------------------------------------------------
// CNF conversion (structural Tseitin with top-level flattening).
// ---------------------------------------------------------------------------

namespace detail {

/// Negation normal form over {and, or, literal}.
inline BExpr nnf(const BExpr& e, AtomTable& at, bool negated) {
    switch (e.op) {
        case BExpr::Op::true_:
            return BExpr::mk_const(!negated);
        case BExpr::Op::false_:
            return BExpr::mk_const(negated);
        case BExpr::Op::lit: {
            if (!negated) return e;
            Literal l = e.lit;
            const Atom& a = at[l.atom];
            if (a.kind == Atom::Kind::poly && a.op != PolyOp::eq && !l.neg)
                return BExpr::mk_lit(mk_poly_literal(at, a.poly, negate_op(a.op), false));
            return BExpr::mk_lit(negate(l));
        }
        case BExpr::Op::not_:
            return nnf(e.kids[0], at, !negated);
        case BExpr::Op::and_:
        case BExpr::Op::or_: {
            bool now_and = (e.op == BExpr::Op::and_) != negated;
            std::vector<BExpr> ks;
            for (auto& k : e.kids) {
                BExpr n = nnf(k, at, negated);
                // constant folding
                if (n.op == BExpr::Op::true_) {
                    if (!now_and) return BExpr::mk_const(true);
                    continue;
                }
                if (n.op == BExpr::Op::false_) {
                    if (now_and) return BExpr::mk_const(false);
                    continue;
                }
                // flatten same-op children
                if ((n.op == BExpr::Op::and_ && now_and) || (n.op == BExpr::Op::or_ && !now_and)) {
                    for (auto& g : n.kids) ks.push_back(std::move(g));
                } else {
                    ks.push_back(std::move(n));
                }
            }
            if (ks.empty()) return BExpr::mk_const(now_and);
            if (ks.size() == 1) return std::move(ks[0]);
            return BExpr::mk(now_and ? BExpr::Op::and_ : BExpr::Op::or_, std::move(ks));
        }
    }
    return BExpr::mk_const(true);
}

}  // namespace detail

/// Equisatisfiable CNF of the script's assertions. Fresh Tseitin variables
/// are appended to the VarTable (excluded from model printing by name list).
inline std::vector<std::vector<Literal>> to_cnf(Script& sc) {
    std::vector<std::vector<Literal>> clauses;
    std::uint32_t fresh = 0;

    // Tseitin literal for a non-literal subformula (full equivalence).
    std::function<Literal(const BExpr&)> define = [&](const BExpr& e) -> Literal {
        if (e.op == BExpr::Op::lit) return e.lit;
        assert(e.op == BExpr::Op::and_ || e.op == BExpr::Op::or_);
        std::vector<Literal> parts;
        for (auto& k : e.kids) parts.push_back(define(k));
        BoolVar t = sc.vars.new_bool(".t" + std::to_string(fresh++));
        Literal lt{sc.atoms.mk_bool(t), false};
        if (e.op == BExpr::Op::and_) {
            // t <-> and(parts)
            std::vector<Literal> big{lt};
            for (Literal p : parts) {
                clauses.push_back({negate(lt), p});
                big.push_back(negate(p));
            }
            clauses.push_back(std::move(big));
        } else {
            // t <-> or(parts)
            std::vector<Literal> big{negate(lt)};
            for (Literal p : parts) {
                clauses.push_back({lt, negate(p)});
                big.push_back(p);
            }
            clauses.push_back(std::move(big));
        }
        return lt;
    };

    bool trivially_false = false;
    for (auto& cmd : sc.commands) {
        if (cmd.kind != Script::Command::Kind::assert_) continue;
        BExpr n = detail::nnf(cmd.expr, sc.atoms, false);
        if (n.op == BExpr::Op::false_) trivially_false = true;
        if (n.op == BExpr::Op::true_ || n.op == BExpr::Op::false_) continue;
        std::vector<BExpr> conjuncts;
        if (n.op == BExpr::Op::and_)
            conjuncts = std::move(n.kids);
        else
            conjuncts.push_back(std::move(n));
        for (auto& c : conjuncts) {
            if (c.op == BExpr::Op::lit) {
                clauses.push_back({c.lit});
                continue;
            }
            if (c.op == BExpr::Op::and_) {
                // nested and at clause position (from flattening edge cases)
                for (auto& k : c.kids) {
                    if (k.op == BExpr::Op::lit)
                        clauses.push_back({k.lit});
                    else
                        clauses.push_back({define(k)});
                }
                continue;
            }
            assert(c.op == BExpr::Op::or_);
            std::vector<Literal> clause;
            for (auto& k : c.kids) clause.push_back(define(k));
            clauses.push_back(std::move(clause));
        }
    }
    if (trivially_false) {
        clauses.push_back({});  // empty clause: unsatisfiable
    }
    return clauses;
}

// ---------------------------------------------------------------------------
// Model printing.
// ---------------------------------------------------------------------------

inline std::string value_sexp(const Rational& q) {
    Rational a = rat_abs(q);
    std::string s = is_integer(a)
                        ? a.get_num().get_str()
                        : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
    return q < 0 ? "(- " + s + ")" : s;
}

inline std::string print_model(const Script& sc, const VarTable& vars, const Model& model) {
    std::ostringstream os;
    os << "(model\n";
    for (ArithVar v = 0; v < vars.num_arith(); ++v) {
        const std::string& name = vars.arith_name(v);
        bool declared = false;
        for (auto& d : sc.declared_ariths)
            if (d == name) declared = true;
        if (!declared) continue;
        os << "  (define-fun " << name << " () Real ";
        const RAValue& val = model.arith[v] ? *model.arith[v] : RAValue(Rational(0));
        if (val.is_rational())
            os << value_sexp(val.rational_value());
        else
            os << render_value(val, name);
        os << ")\n";
    }
    for (BoolVar b = 0; b < vars.num_bool(); ++b) {
        const std::string& name = vars.bool_name(b);
        bool declared = false;
        for (auto& d : sc.declared_bools)
            if (d == name) declared = true;
        if (!declared) continue;
        bool val = b < model.booleans.size() && model.booleans[b] == LBool::true_;
        os << "  (define-fun " << name << " () Bool " << (val ? "true" : "false") << ")\n";
    }
    os << ")";
    return os.str();
}

/// Convenience: parsed script -> solver Formula.
inline Formula to_formula(Script&& sc) {
    Formula f;
    f.clauses = to_cnf(sc);
    f.vars = std::move(sc.vars);
    f.atoms = std::move(sc.atoms);
    return f;
}

}  // namespace nrasat::smt2
