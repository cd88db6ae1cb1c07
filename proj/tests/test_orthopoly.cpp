#include <cmath>
#include <vector>

#include "doctest.h"

#include "pdd/orthopoly.hpp"
#include "pdd/quadrature.hpp"
#include "pdd/random_variable.hpp"

using pdd::ortho::OrthonormalBasis;
using pdd::rv::RandomVariable;

namespace {

const RandomVariable kAll[] = {
    RandomVariable::uniform(-1.0, 1.0),
    RandomVariable::inverse_uniform(2.0, 4.0),
    RandomVariable::four_param_beta(4.0, 4.0, 0.7, 1.3),
    RandomVariable::truncated_gaussian(0.5, 0.2, 0.6),
};

// Gram matrix deviation max_{a,b} |E[psi_a psi_b] - delta_ab| measured on
// a dense Gauss rule of the same measure.
double gram_deviation(const RandomVariable& v, int m) {
    const auto basis = OrthonormalBasis::build(v, m);
    const auto rule = basis.gauss_rule(2 * m + 2);
    std::vector<double> psi(size_t(m) + 1, 0.0);
    std::vector<double> gram(size_t(m + 1) * size_t(m + 1), 0.0);
    for (int q = 0; q < rule.size(); ++q) {
        basis.eval_all(rule.nodes[size_t(q)], psi);
        for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b)
                gram[size_t(a) * size_t(m + 1) + size_t(b)] +=
                    rule.weights[size_t(q)] * psi[size_t(a)] * psi[size_t(b)];
    }
    double dev = 0.0;
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= m; ++b)
            dev = std::max(dev, std::abs(gram[size_t(a) * size_t(m + 1) + size_t(b)] -
                                         (a == b ? 1.0 : 0.0)));
    return dev;
}

} // namespace

TEST_SUITE("orthopoly") {

TEST_CASE("legendre closed forms on the symmetric uniform") {
    const auto u = RandomVariable::uniform(-1.0, 1.0);
    const auto basis = OrthonormalBasis::build(u, 3);
    for (const double x : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
        CHECK(basis.eval(0, x) == doctest::Approx(1.0));
        CHECK(basis.eval(1, x) == doctest::Approx(std::sqrt(3.0) * x));
        CHECK(basis.eval(2, x) ==
              doctest::Approx(std::sqrt(5.0) * 0.5 * (3.0 * x * x - 1.0)));
        CHECK(basis.eval(3, x) ==
              doctest::Approx(std::sqrt(7.0) * 0.5 * (5.0 * x * x * x - 3.0 * x)));
    }
    // Affine map invariance of the recurrence shape: beta_0 is unit mass.
    CHECK(basis.recurrence().beta[0] == doctest::Approx(1.0));
}

TEST_CASE("orthonormality for every kind at degree 10") {
    for (const auto& v : kAll) {
        CAPTURE(int(v.kind()));
        CHECK(gram_deviation(v, 10) < 1e-10);
    }
}

TEST_CASE("mean-zero and unit-variance of degree one") {
    for (const auto& v : kAll) {
        // psi_1 = (x - mean)/sigma for every measure.
        const auto basis = OrthonormalBasis::build(v, 2);
        const double sigma = std::sqrt(v.raw_moment(2) - v.mean() * v.mean());
        CHECK(basis.eval(1, v.mean()) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(basis.eval(1, v.mean() + sigma) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("gauss rules integrate polynomials exactly to degree 2n-1") {
    for (const auto& v : kAll) {
        CAPTURE(int(v.kind()));
        const auto basis = OrthonormalBasis::build(v, 6);
        for (const int n : {1, 2, 3, 4, 5}) {
            const auto rule = basis.gauss_rule(n);
            REQUIRE(rule.size() == n);
            double mass = 0.0;
            for (int q = 0; q < n; ++q) mass += rule.weights[size_t(q)];
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
            for (int k = 1; k <= 2 * n - 1; ++k) {
                double acc = 0.0;
                for (int q = 0; q < n; ++q)
                    acc += rule.weights[size_t(q)] * std::pow(rule.nodes[size_t(q)], k);
                CHECK(acc == doctest::Approx(v.raw_moment(k)).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("small gauss rules have the known node layout") {
    for (const auto& v : kAll) {
        const auto basis = OrthonormalBasis::build(v, 3);
        const auto one = basis.gauss_rule(1);
        CHECK(one.nodes[0] == doctest::Approx(v.mean()).epsilon(1e-12));
        CHECK(one.weights[0] == doctest::Approx(1.0));
    }
    // Uniform two-point rule: mean +- width/(2 sqrt(3)).
    const auto u = RandomVariable::uniform(1.0, 2.0);
    const auto rule = OrthonormalBasis::build(u, 3).gauss_rule(2);
    CHECK(rule.nodes[0] == doctest::Approx(1.5 - 0.5 / std::sqrt(3.0)));
    CHECK(rule.nodes[1] == doctest::Approx(1.5 + 0.5 / std::sqrt(3.0)));
    CHECK(rule.weights[0] == doctest::Approx(0.5));
    CHECK(rule.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("triple products: identities, symmetry, cutoff") {
    for (const auto& v : kAll) {
        CAPTURE(int(v.kind()));
        const int m = 5;
        const auto basis = OrthonormalBasis::build(v, m);
        // E[psi_0 psi_j psi_k] is the Gram matrix.
        for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= m; ++k)
                CHECK(basis.triple_product(0, j, k) ==
                      doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-12));
        // Bit-exact permutation symmetry (table is mirrored, not recomputed).
        for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b)
                for (int c = 0; c <= m; ++c) {
                    const double t = basis.triple_product(a, b, c);
                    CHECK(basis.triple_product(a, c, b) == t);
                    CHECK(basis.triple_product(b, a, c) == t);
                    CHECK(basis.triple_product(c, b, a) == t);
                    // Degree argument: a+b < c makes the expectation zero.
                    if (a + b < c) CHECK(t == 0.0);
                }
    }
}

TEST_CASE("uniform triple product closed form") {
    // E[psi_1 psi_1 psi_2] on any uniform: integral of 3x^2 * sqrt(5)/2 *
    // (3x^2-1) / 2 over [-1,1] = 2/sqrt(5).
    const auto u = RandomVariable::uniform(-1.0, 1.0);
    const auto basis = OrthonormalBasis::build(u, 4);
    CHECK(basis.triple_product(1, 1, 2) == doctest::Approx(2.0 / std::sqrt(5.0)));
    // Affine invariance: the same value on a shifted/scaled uniform.
    const auto u2 = RandomVariable::uniform(3.0, 9.0);
    const auto basis2 = OrthonormalBasis::build(u2, 4);
    CHECK(basis2.triple_product(1, 1, 2) == doctest::Approx(2.0 / std::sqrt(5.0)));
}

TEST_CASE("triple products match direct quadrature") {
    for (const auto& v : kAll) {
        CAPTURE(int(v.kind()));
        const int m = 4;
        const auto basis = OrthonormalBasis::build(v, m);
        const auto rule = basis.gauss_rule(3 * m);
        for (int a = 0; a <= m; ++a)
            for (int b = a; b <= m; ++b)
                for (int c = b; c <= m; ++c) {
                    double acc = 0.0;
                    for (int q = 0; q < rule.size(); ++q) {
                        const double x = rule.nodes[size_t(q)];
                        acc += rule.weights[size_t(q)] * basis.eval(a, x) * basis.eval(b, x) *
                               basis.eval(c, x);
                    }
                    CHECK(basis.triple_product(a, b, c) ==
                          doctest::Approx(acc).epsilon(1e-10));
                }
    }
}

TEST_CASE("triple table spans the full cube") {
    const auto u = RandomVariable::uniform(0.0, 1.0);
    const int m = 3;
    const auto basis = OrthonormalBasis::build(u, m);
    const auto table = basis.triple_table();
    REQUIRE(int(table.size()) == (m + 1) * (m + 1) * (m + 1));
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= m; ++b)
            for (int c = 0; c <= m; ++c)
                CHECK(table[size_t((a * (m + 1) + b) * (m + 1) + c)] ==
                      basis.triple_product(a, b, c));
}

TEST_CASE("eval_all agrees with eval") {
    for (const auto& v : kAll) {
        const int m = 6;
        const auto basis = OrthonormalBasis::build(v, m);
        std::vector<double> psi(size_t(m) + 1, 0.0);
        const double x = 0.5 * (v.lower() + v.upper()) + 0.1;
        basis.eval_all(x, psi);
        for (int j = 0; j <= m; ++j) CHECK(psi[size_t(j)] == basis.eval(j, x));
    }
}

} // TEST_SUITE
