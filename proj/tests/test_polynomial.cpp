#include <catch2/catch_amalgamated.hpp>

#include "nrasat/polynomial.hpp"
#include "test_util.hpp"

using namespace nrasat;

namespace {
const ArithVar X = 0, Y = 1;
Polynomial px() { return Polynomial::variable(X); }
Polynomial py() { return Polynomial::variable(Y); }
Polynomial k(long c) { return Polynomial::constant(Rational(c)); }

/// Independent resultant oracle: Sylvester matrix determinant by cofactor
/// expansion (kept naive on purpose; only used on small instances).
Polynomial det_expand(std::vector<std::vector<Polynomial>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Polynomial acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t jj = 0; jj < n; ++jj)
                if (jj != j) row.push_back(m[i][jj]);
            minor.push_back(std::move(row));
        }
        Polynomial term = m[0][j] * det_expand(std::move(minor));
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

Polynomial sylvester_resultant(const Polynomial& a, const Polynomial& b, ArithVar v) {
    std::uint32_t m = a.degree(v), l = b.degree(v);
    auto ac = a.coeffs_wrt(v), bc = b.coeffs_wrt(v);
    std::size_t n = m + l;
    std::vector<std::vector<Polynomial>> mat(n, std::vector<Polynomial>(n));
    for (std::uint32_t r = 0; r < l; ++r)
        for (std::uint32_t kk = 0; kk <= m; ++kk) mat[r][r + kk] = ac[m - kk];
    for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t kk = 0; kk <= l; ++kk) mat[l + r][r + kk] = bc[l - kk];
    return det_expand(std::move(mat));
}
}  // namespace

TEST_CASE("polynomial add") {
    CHECK(px() + (-px()) == Polynomial::zero());
    CHECK(py() * py() + (px() + k(1)) == py() * py() + px() + k(1));
    CHECK((px() + k(1)) + (px() + k(1)) == Rational(2) * px() + k(2));
}

TEST_CASE("polynomial mul") {
    CHECK((py() + k(2)) * (py() + k(4)) == py() * py() + Rational(6) * py() + k(8));
    CHECK((py() + k(2)) * Polynomial::zero() == Polynomial::zero());
    CHECK((py() - k(2)) * (py() - k(4)) == py() * py() - Rational(6) * py() + k(8));
}

TEST_CASE("polynomial eval") {
    Polynomial p = py() * py() + px() + k(1);
    CHECK(eval(p, {{X, 2}, {Y, 0}}) == 3);
    CHECK(eval(p, {{X, -2}, {Y, 1}}) == 0);
    CHECK(eval(py() * py() - px() - k(2), {{X, 0}, {Y, 0}}) == -2);
    CHECK_THROWS_AS(eval(p, {{X, 2}}), std::invalid_argument);
}

TEST_CASE("polynomial substitute") {
    Polynomial p = py() * py() + px() + k(1);
    CHECK(p.substitute({{X, 2}}) == py() * py() + k(3));
    CHECK(p.substitute({}) == p);
    CHECK(((py() + k(2)) * (py() + k(4)) - px()).substitute({{X, 0}}) ==
          py() * py() + Rational(6) * py() + k(8));
}

TEST_CASE("polynomial derivative") {
    CHECK((py() * py() + px() + k(1)).derivative(Y) == Rational(2) * py());
    CHECK(k(5).derivative(Y) == Polynomial::zero());
    CHECK((px() * py()).derivative(X) == py());
}

TEST_CASE("resultant examples") {
    CHECK(resultant(py() * py() - px(), py() - k(1), Y) == k(1) - px());
    CHECK(resultant(py() - px(), py() - px(), Y) == Polynomial::zero());
    CHECK(resultant(py() * py() + px() + k(1), Rational(2) * py(), Y) ==
          Rational(4) * (px() + k(1)));
    CHECK_THROWS_AS(resultant(k(3), k(5), Y), std::invalid_argument);
}

TEST_CASE("discriminant examples") {
    CHECK(discriminant(py() * py() + px() + k(1), Y) == Rational(-4) * (px() + k(1)));
    CHECK(discriminant(py() * py() - k(2), Y) == k(8));
    CHECK(discriminant(py() + px(), Y) == k(1));
    CHECK_THROWS_AS(discriminant(px(), Y), std::invalid_argument);
}

TEST_CASE("square_free, leading_coeff, degree") {
    CHECK(square_free((py() - k(1)) * (py() - k(1)), Y) == py() - k(1));
    CHECK((px() * py() * py() + py()).leading_coeff(Y) == px());
    CHECK((py() * py() + px() + k(1)).degree(X) == 1);
}

TEST_CASE("ring laws on randomized inputs") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 200; ++round) {
        Polynomial a = testutil::rand_poly(rng, 3, 3);
        Polynomial b = testutil::rand_poly(rng, 3, 3);
        Polynomial c = testutil::rand_poly(rng, 3, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        // eval is a ring homomorphism at random rational points
        std::map<ArithVar, Rational> pt;
        for (ArithVar v = 0; v < 3; ++v) pt[v] = testutil::rand_rational(rng);
        CHECK(eval(a * b, pt) == eval(a, pt) * eval(b, pt));
        CHECK(eval(a + b, pt) == eval(a, pt) + eval(b, pt));
    }
}

TEST_CASE("substitute then eval equals eval of full assignment") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 100; ++round) {
        Polynomial p = testutil::rand_poly(rng, 3, 4);
        Rational vx = testutil::rand_rational(rng);
        Rational vy = testutil::rand_rational(rng);
        Rational vz = testutil::rand_rational(rng);
        Polynomial sub = p.substitute({{0, vx}});
        CHECK(eval(sub, {{1, vy}, {2, vz}, {0, Rational(777)}}) ==
              eval(p, {{0, vx}, {1, vy}, {2, vz}}));
    }
}

TEST_CASE("resultant against Sylvester determinant oracle") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 60) {
        Polynomial a = testutil::rand_nonzero_poly(rng, 2, 3);
        Polynomial b = testutil::rand_nonzero_poly(rng, 2, 3);
        if (a.degree(Y) == 0 && b.degree(Y) == 0) continue;
        if (a.degree(Y) + b.degree(Y) > 6) continue;
        CHECK(resultant(a, b, Y) == sylvester_resultant(a, b, Y));
        ++done;
    }
}

TEST_CASE("resultant zero iff common factor") {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 40; ++round) {
        // Constructed common factor => resultant 0.
        Polynomial c = testutil::rand_nonzero_poly(rng, 2, 2);
        if (c.degree(Y) == 0) continue;
        Polynomial a = c * testutil::rand_nonzero_poly(rng, 2, 1);
        Polynomial b = c * testutil::rand_nonzero_poly(rng, 2, 1);
        if (a.degree(Y) == 0 || b.degree(Y) == 0) continue;
        CHECK(resultant(a, b, Y) == Polynomial::zero());
    }
    for (int round = 0; round < 40; ++round) {
        // Nonzero resultant => gcd has no positive degree in Y.
        Polynomial a = testutil::rand_nonzero_poly(rng, 2, 3);
        Polynomial b = testutil::rand_nonzero_poly(rng, 2, 3);
        if (a.degree(Y) == 0 || b.degree(Y) == 0) continue;
        Polynomial r = resultant(a, b, Y);
        if (!r.is_zero()) CHECK(gcd(a, b).degree(Y) == 0);
    }
}

TEST_CASE("square_free has coprime derivative") {
    std::mt19937_64 rng(555);
    for (int round = 0; round < 50; ++round) {
        Polynomial p = testutil::rand_nonzero_poly(rng, 2, 3);
        if (p.degree(Y) == 0) continue;
        Polynomial q = square_free(p, Y);
        if (q.degree(Y) == 0) continue;
        CHECK(gcd(q, q.derivative(Y)).degree(Y) == 0);
    }
}

TEST_CASE("atom-sized operations: content and primitive") {
    Polynomial p = Rational(4, 6) * px() + Rational(2, 3) * py();
    Polynomial prim = p.primitive();
    CHECK(prim == px() + py());
    CHECK((-px() - py()).primitive() == px() + py());
}
