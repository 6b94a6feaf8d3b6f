#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace nrasat::families {

// ---------------------------------------------------------------------------
// Generated micro-benchmark families exercising the path / block / fixed
// clause-level situations.
//
//   path_case(n):  one pinned variable x = 0 plus n two-literal clauses over
//                  y whose interval views share exactly one common point (0),
//                  reachable only through the second ("correct") literal of
//                  each clause; the first literal's interval is a decoy.
//   block_case(n): same two-literal shape but globally empty intersection for
//                  every value of x (the intervals shrink with x^2 and are
//                  pairwise disjoint), so the y stage always blocks and
//                  resolution must climb to the x stage. block_case(1) is a
//                  single-variable instance decided by the UNSAT shortcut.
//   fixed_chain(n): u_n is pinned to a point by a single-variable clause and
//                  each u_i is pinned once u_{i+1} has a value, so every
//                  stage after propagation is a fixed case.
// ---------------------------------------------------------------------------

/// Quadratic literal whose feasible set for y (given (<=) bound b) is the
/// closed interval [lo, hi]:  (y - lo)(y - hi) <= b.
inline std::string interval_literal(const std::string& y, long lo, long hi,
                                    const std::string& bound) {
    std::ostringstream os;
    auto shifted = [&](long c) {
        std::ostringstream t;
        if (c == 0)
            t << y;
        else if (c > 0)
            t << "(- " << y << " " << c << ")";
        else
            t << "(+ " << y << " " << -c << ")";
        return t.str();
    };
    os << "(<= (* " << shifted(lo) << " " << shifted(hi) << ") " << bound << ")";
    return os.str();
}

inline std::string path_case(int n) {
    if (n < 1) throw std::invalid_argument("path_case: n >= 1");
    std::ostringstream os;
    os << "(set-logic QF_NRA)\n";
    os << "(declare-fun x () Real)\n(declare-fun y () Real)\n";
    os << "(assert (= x 0))\n";
    for (int i = 0; i < n; ++i) {
        // Decoy first: a far-away interval, pairwise disjoint across clauses.
        long wl = 100 + 3L * i, wh = wl + 1;
        // Correct second: alternating one-sided intervals pinching at 0.
        long cl, ch;
        if (i % 2 == 0) {
            cl = 0;
            ch = 2 + i;
        } else {
            cl = -(2 + i);
            ch = 0;
        }
        os << "(assert (or " << interval_literal("y", wl, wh, "x") << " "
           << interval_literal("y", cl, ch, "x") << "))\n";
    }
    os << "(check-sat)\n";
    return os.str();
}

inline std::string block_case(int n) {
    if (n < 1) throw std::invalid_argument("block_case: n >= 1");
    std::ostringstream os;
    os << "(set-logic QF_NRA)\n";
    if (n == 1) {
        // Single variable, single clause, both literals infeasible: the
        // clause-level feasible set is empty at stage zero.
        os << "(declare-fun y () Real)\n";
        os << "(assert (or (< (* y y) (- 1)) (< (* y y) (- 2))))\n";
        os << "(check-sat)\n";
        return os.str();
    }
    os << "(declare-fun x () Real)\n(declare-fun y () Real)\n";
    // Intervals [3i, 3i+1] at x = 0, shrinking as |x| grows; pairwise
    // disjoint for every x, so no value of y ever satisfies all clauses.
    for (int i = 0; i < n; ++i) {
        long wl = 100 + 3L * i, wh = wl + 1;
        long cl = 3L * i, ch = cl + 1;
        os << "(assert (or " << interval_literal("y", wl, wh, "(- (* x x))") << " "
           << interval_literal("y", cl, ch, "(- (* x x))") << "))\n";
    }
    os << "(check-sat)\n";
    return os.str();
}

inline std::string fixed_chain(int n) {
    if (n < 1) throw std::invalid_argument("fixed_chain: n >= 1");
    std::ostringstream os;
    os << "(set-logic QF_NRA)\n";
    for (int i = 1; i <= n; ++i) os << "(declare-fun u" << i << " () Real)\n";
    // Anchor: u_n = 1 via a point interval; chain: u_i = u_{i+1} + 1.
    // Both clauses carry an infeasible decoy literal so they stay two-literal.
    os << "(assert (or (<= (* (- u" << n << " 1) (- u" << n << " 1)) 0) "
       << "(<= (* u" << n << " u" << n << ") (- 1))))\n";
    for (int i = 1; i < n; ++i) {
        std::string d = "(- u" + std::to_string(i) + " (+ u" + std::to_string(i + 1) + " 1))";
        os << "(assert (or (<= (* " << d << " " << d << ") 0) "
           << "(<= (* u" << i << " u" << i << ") (- 1))))\n";
    }
    os << "(check-sat)\n";
    return os.str();
}

inline std::string generate(const std::string& family, int n) {
    if (family == "path_case") return path_case(n);
    if (family == "block_case") return block_case(n);
    if (family == "fixed_chain") return fixed_chain(n);
    throw std::invalid_argument("unknown family " + family);
}

}  // namespace nrasat::families
