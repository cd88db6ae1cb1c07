#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "pdd/benchmarks.hpp"
#include "pdd/orthopoly.hpp"
#include "pdd/rng.hpp"

using namespace pdd::bench;
using pdd::ortho::OrthonormalBasis;
using pdd::rv::RandomStream;
using pdd::rv::RandomVariable;
using pdd::rv::RandomVector;

namespace {

constexpr double pi = std::numbers::pi;

// Integral of h over [a, b] by Gauss nodes of the uniform weight.
double integrate(const std::function<double(double)>& h, double a, double b, int n = 48) {
    const auto basis = OrthonormalBasis::build(RandomVariable::uniform(a, b), 1);
    const auto rule = basis.gauss_rule(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += rule.weights[size_t(k)] * h(rule.nodes[size_t(k)]);
    return (b - a) * acc;
}

// Tensor-product expectation over the harmonic benchmark variables at
// K = 1: resolves the numerator polynomial exactly and the 1/E factor to
// quadrature precision.
double expect5(const RandomVector& v, const std::function<double(std::span<const double>)>& h) {
    const int n = v.dimension();
    REQUIRE(n == 5);
    std::vector<OrthonormalBasis> bases;
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) {
        bases.push_back(OrthonormalBasis::build(v[i], 1));
        sizes.push_back(i == n - 1 ? 40 : 7);
    }
    std::vector<pdd::ortho::QuadratureRule> rules;
    for (int i = 0; i < n; ++i) rules.push_back(bases[size_t(i)].gauss_rule(sizes[size_t(i)]));

    double acc = 0.0;
    std::array<double, 5> x{};
    std::array<int, 5> idx{};
    while (true) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            x[size_t(i)] = rules[size_t(i)].nodes[size_t(idx[size_t(i)])];
            w *= rules[size_t(i)].weights[size_t(idx[size_t(i)])];
        }
        acc += w * h(x);
        int d = 0;
        while (d < n && ++idx[size_t(d)] == rules[size_t(d)].size()) idx[size_t(d++)] = 0;
        if (d == n) break;
    }
    return acc;
}

HarmonicPressure pressure_at(std::span<const double> x, int harmonics) {
    HarmonicPressure p;
    p.d0 = x[0];
    for (int k = 1; k <= harmonics; ++k) p.dk.push_back(x[size_t(k)]);
    for (int k = 1; k <= harmonics; ++k) p.ek.push_back(x[size_t(harmonics + k)]);
    return p;
}

} // namespace

TEST_SUITE("benchmarks") {

TEST_CASE("uniform disk closed forms") {
    CHECK(disk_compliance(2.0, 1.0, 0.2) == doctest::Approx(0.8 * pi).epsilon(1e-15));
    CHECK(disk_dt_center(2.0, 1.0) == doctest::Approx(2.0 * pi).epsilon(1e-15));
    // Compliance scales as p0^2 / E.
    CHECK(disk_compliance(4.0, 3.0, 0.2) ==
          doctest::Approx(9.0 / 2.0 * disk_compliance(2.0, 1.0, 0.2)).epsilon(1e-14));
    CHECK(disk_compliance(2.0, 1.0, 0.2) > 0.0);
    CHECK(disk_ring_compliance(2.0, 1.0, 0.2, 0.0) == disk_compliance(2.0, 1.0, 0.2));
    // A hole can only make the disk more compliant.
    CHECK(disk_ring_compliance(2.0, 1.0, 0.2, 0.3) > disk_compliance(2.0, 1.0, 0.2));
    CHECK_THROWS(disk_ring_compliance(2.0, 1.0, 0.2, 1.0));
}

TEST_CASE("compliance density is the distribution of the response") {
    const double nu = 0.2;
    const double g = pi * (1.0 - nu);
    const auto f = [&](double y) { return disk_pdf_compliance(y, nu); };

    CHECK(f(0.5 * g - 1e-9) == 0.0);
    CHECK(f(4.0 * g + 1e-9) == 0.0);
    // Continuity at the junctions of the three pieces.
    CHECK(f(g - 1e-10) == doctest::Approx(f(g + 1e-10)).epsilon(1e-6));
    CHECK(f(2.0 * g - 1e-10) == doctest::Approx(f(2.0 * g + 1e-10)).epsilon(1e-6));

    // Piecewise integrals: unit mass and the first two closed-form moments.
    const auto piece = [&](const std::function<double(double)>& h) {
        return integrate(h, 0.5 * g, g) + integrate(h, g, 2.0 * g) +
               integrate(h, 2.0 * g, 4.0 * g);
    };
    const auto ref = disk_reference_values(nu);
    CHECK(piece(f) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(piece([&](double y) { return y * f(y); }) == doctest::Approx(ref.m1).epsilon(1e-10));
    CHECK(piece([&](double y) { return y * y * f(y); }) ==
          doctest::Approx(ref.m2).epsilon(1e-10));
    CHECK(piece([&](double y) { return y * y * y * f(y); }) ==
          doctest::Approx(ref.m3).epsilon(1e-10));
}

TEST_CASE("disk reference moments match direct expectations") {
    const auto v = disk_random_vector();
    const auto ref = disk_reference_values(0.2);
    CHECK(v.dimension() == 2);

    // E[p0^2] and E[1/E] factorize the compliance moments.
    const auto be = OrthonormalBasis::build(v[0], 1).gauss_rule(40);
    const auto bp = OrthonormalBasis::build(v[1], 1).gauss_rule(40);
    double mom[4] = {0.0, 0.0, 0.0, 0.0};
    double dt[4] = {0.0, 0.0, 0.0, 0.0};
    for (int a = 0; a < 40; ++a)
        for (int b = 0; b < 40; ++b) {
            const double w = be.weights[size_t(a)] * bp.weights[size_t(b)];
            const double y = disk_compliance(be.nodes[size_t(a)], bp.nodes[size_t(b)], 0.2);
            const double z = disk_dt_center(be.nodes[size_t(a)], bp.nodes[size_t(b)]);
            for (int r = 1; r <= 3; ++r) {
                mom[r] += w * std::pow(y, r);
                dt[r] += w * double(r) * std::pow(y, r - 1) * z;
            }
        }
    CHECK(ref.m1 == doctest::Approx(mom[1]).epsilon(1e-12));
    CHECK(ref.m2 == doctest::Approx(mom[2]).epsilon(1e-12));
    CHECK(ref.m3 == doctest::Approx(mom[3]).epsilon(1e-12));
    CHECK(ref.dt_m1 == doctest::Approx(dt[1]).epsilon(1e-12));
    CHECK(ref.dt_m2 == doctest::Approx(dt[2]).epsilon(1e-12));
    CHECK(ref.dt_m3 == doctest::Approx(dt[3]).epsilon(1e-12));
}

TEST_CASE("disk reliability window and spot values") {
    const auto ref = disk_reference_values(0.2);
    CHECK(ref.threshold_in_window(7.5));
    CHECK(!ref.threshold_in_window(5.0));
    CHECK(!ref.threshold_in_window(10.1));
    CHECK_THROWS(ref.failure_probability(5.0));
    CHECK_THROWS(ref.dt_failure_probability(10.1));

    CHECK(ref.failure_probability(7.5) == doctest::Approx(0.0742721935463).epsilon(1e-10));
    CHECK(ref.dt_failure_probability(7.5) == doctest::Approx(1.17696577935).epsilon(1e-10));
    CHECK(ref.failure_probability(7.0) == doctest::Approx(0.109630325984).epsilon(1e-10));
    CHECK(ref.dt_failure_probability(7.0) == doctest::Approx(1.38144771239).epsilon(1e-10));

    // Exceedance from the density: P[y > t] integrates the upper tail,
    // which lies entirely inside the last density piece.
    const double g = pi * 0.8;
    const double tail = integrate([&](double y) { return disk_pdf_compliance(y, 0.2); }, 7.5,
                                  4.0 * g);
    CHECK(ref.failure_probability(7.5) == doctest::Approx(tail).epsilon(1e-10));

    // Sensitivity as the perforation limit of the exceedance: the ring
    // rescales the response by a deterministic factor, so the perforated
    // exceedance is the intact one at a shifted threshold.
    const double rho = 1e-4;
    const double scale = disk_ring_compliance(1.0, 1.0, 0.2, rho) / disk_compliance(1.0, 1.0, 0.2);
    const double fd =
        (ref.failure_probability(7.5 / scale) - ref.failure_probability(7.5)) / (rho * rho);
    CHECK(ref.dt_failure_probability(7.5) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("harmonic response reductions") {
    // Only the mean pressure present: the harmonic disk is the uniform disk.
    HarmonicPressure p;
    p.d0 = 1.3;
    p.dk = {0.0, 0.0};
    p.ek = {0.0, 0.0};
    CHECK(trig_compliance(p, 2.7, 0.2) ==
          doctest::Approx(disk_compliance(2.7, 1.3, 0.2)).epsilon(1e-14));
    CHECK(trig_ring_compliance(p, 2.7, 0.2, 0.3) ==
          doctest::Approx(disk_ring_compliance(2.7, 1.3, 0.2, 0.3)).epsilon(1e-14));
    CHECK(trig_dt_center(p, 2.7) == doctest::Approx(disk_dt_center(2.7, 1.3)).epsilon(1e-14));

    // Hand-evaluated single-harmonic value.
    HarmonicPressure q;
    q.d0 = 1.0;
    q.dk = {2.0};
    q.ek = {3.0};
    const double byhand =
        (2.0 * 1.0 * pi * 0.8 + (4.0 + 9.0) * pi * (0.2 + 3.0) / 3.0) / 2.0;
    CHECK(trig_compliance(q, 2.0, 0.2) == doctest::Approx(byhand).epsilon(1e-14));

    // Ring response approaches the intact response as the hole closes.
    CHECK(trig_ring_compliance(q, 2.0, 0.2, 1e-8) ==
          doctest::Approx(trig_compliance(q, 2.0, 0.2)).epsilon(1e-12));
    CHECK(trig_ring_compliance(q, 2.0, 0.2, 0.2) > trig_compliance(q, 2.0, 0.2));
    CHECK_THROWS(trig_ring_compliance(q, 2.0, 0.2, 0.0));
    CHECK_THROWS(trig_ring_compliance(q, 2.0, 0.2, 1.0));

    // The center sensitivity sees only the mean and first harmonic.
    HarmonicPressure q2 = q;
    q2.dk.push_back(5.0);
    q2.ek.push_back(7.0);
    HarmonicPressure q3 = q2;
    q3.dk[1] = 0.0;
    q3.ek[1] = 0.0;
    CHECK(trig_dt_center(q2, 2.0) == trig_dt_center(q3, 2.0));
    CHECK(trig_dt_center(q2, 2.0) ==
          doctest::Approx(4.0 * pi * (1.0 + 2.0 * 4.0 + 2.0 * 9.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("oracles agree with the closed forms") {
    const int harmonics = 3;
    const auto v = trig_random_vector(harmonics);
    CHECK(v.dimension() == 2 * harmonics + 3);
    const auto y = trig_oracle(harmonics);
    const auto z = trig_rate_oracle(harmonics);
    const auto ring = trig_ring_oracle(harmonics, 0.1);

    RandomStream s(3);
    std::vector<double> x(size_t(v.dimension()), 0.0);
    for (int rep = 0; rep < 5; ++rep) {
        v.sample(s, x);
        const auto p = pressure_at(x, harmonics);
        const double nu = x[size_t(2 * harmonics + 1)];
        const double young = x[size_t(2 * harmonics + 2)];
        CHECK(y(x) == doctest::Approx(trig_compliance(p, young, nu)).epsilon(1e-13));
        CHECK(z(x) == doctest::Approx(trig_dt_center(p, young)).epsilon(1e-13));
        CHECK(ring(x) == doctest::Approx(trig_ring_compliance(p, young, nu, 0.1)).epsilon(1e-13));
        CHECK(y(x) > 0.0);
    }

    std::vector<double> wrong(size_t(v.dimension() + 1), 1.0);
    CHECK_THROWS(y(wrong));
    CHECK_THROWS(z(wrong));
    CHECK_THROWS(ring(wrong));
    const auto dy = disk_oracle(0.2);
    std::vector<double> three(3, 2.0);
    CHECK_THROWS(dy(three));
}

TEST_CASE("harmonic variable layout") {
    const auto v = trig_random_vector(2);
    const std::vector<double> means{1.0, 2.0, 3.0, 2.0, 3.0, 0.2, 1e6};
    REQUIRE(v.dimension() == int(means.size()));
    for (int i = 0; i < v.dimension(); ++i) {
        CHECK(v[i].mean() == doctest::Approx(means[size_t(i)]).epsilon(1e-12));
        const double cv = i == 5 ? 0.01 : 0.1;
        const double sd = std::sqrt(v[i].raw_moment(2) - v[i].mean() * v[i].mean());
        CHECK(sd == doctest::Approx(cv * means[size_t(i)]).epsilon(1e-12));
    }
    CHECK_THROWS(trig_random_vector(-1));
}

TEST_CASE("harmonic exact moments against dense quadrature") {
    const int harmonics = 1;
    const auto v = trig_random_vector(harmonics);
    const auto ex = trig_exact_moments(v, harmonics);

    const auto y_at = [&](std::span<const double> x) {
        return trig_compliance(pressure_at(x, harmonics), x[4], x[3]);
    };
    const auto z_at = [&](std::span<const double> x) {
        return trig_dt_center(pressure_at(x, harmonics), x[4]);
    };
    CHECK(ex.m1 == doctest::Approx(expect5(v, y_at)).epsilon(1e-12));
    CHECK(ex.m2 == doctest::Approx(expect5(v, [&](std::span<const double> x) {
                       return std::pow(y_at(x), 2);
                   })).epsilon(1e-12));
    CHECK(ex.m3 == doctest::Approx(expect5(v, [&](std::span<const double> x) {
                       return std::pow(y_at(x), 3);
                   })).epsilon(1e-12));
    CHECK(ex.dt_m1 == doctest::Approx(expect5(v, z_at)).epsilon(1e-12));
    CHECK(ex.dt_m2 == doctest::Approx(expect5(v, [&](std::span<const double> x) {
                          return 2.0 * y_at(x) * z_at(x);
                      })).epsilon(1e-12));
    CHECK(ex.dt_m3 == doctest::Approx(expect5(v, [&](std::span<const double> x) {
                          return 3.0 * y_at(x) * y_at(x) * z_at(x);
                      })).epsilon(1e-12));
}

TEST_CASE("harmonic exact moments at the benchmark size") {
    const int harmonics = 25;
    const auto v = trig_random_vector(harmonics);
    const auto ex = trig_exact_moments(v, harmonics);
    CHECK(ex.m1 > 0.0);
    CHECK(ex.m2 > ex.m1 * ex.m1);                    // nondegenerate variance
    CHECK(ex.m3 > ex.m1 * (2.0 * ex.m2 - ex.m1 * ex.m1)); // positive skew side
    CHECK(ex.dt_m1 > 0.0);
    CHECK(ex.dt_m2 > 2.0 * ex.m1 * ex.dt_m1); // Cov(y, z) > 0 for this load
    const auto mism = trig_random_vector(3);
    CHECK_THROWS(trig_exact_moments(mism, 25));
}

} // TEST_SUITE
