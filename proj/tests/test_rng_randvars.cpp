#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "pdd/quadrature.hpp"
#include "pdd/random_variable.hpp"
#include "pdd/rng.hpp"

using pdd::rv::Kind;
using pdd::rv::RandomStream;
using pdd::rv::RandomVariable;
using pdd::rv::RandomVector;

namespace {

double integrate_pdf(const RandomVariable& v, int power) {
    return pdd::quad::integrate([&](double x) { return std::pow(x, power) * v.pdf(x); },
                                v.lower(), v.upper());
}

// Kolmogorov-Smirnov statistic of n fixed-seed samples against the cdf.
double ks_statistic(const RandomVariable& v, int n, uint64_t seed) {
    std::vector<double> xs(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        RandomStream s(seed, uint64_t(i));
        xs[size_t(i)] = v.sample(s);
    }
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double c = v.cdf(xs[size_t(i)]);
        d = std::max(d, std::abs(c - double(i) / n));
        d = std::max(d, std::abs(c - double(i + 1) / n));
    }
    return d;
}

const RandomVariable kAll[] = {
    RandomVariable::uniform(1.0, 2.0),
    RandomVariable::inverse_uniform(2.0, 4.0),
    RandomVariable::four_param_beta(4.0, 4.0, 0.7, 1.3),
    RandomVariable::truncated_gaussian(0.5, 0.2, 0.6),
};

} // namespace

TEST_SUITE("rng_randvars") {

TEST_CASE("stream determinism and substream independence") {
    RandomStream a(7, 3), b(7, 3), c(7, 4);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.next_unit(), y = b.next_unit(), z = c.next_unit();
        all_equal = all_equal && (x == y);
        any_diff = any_diff || (x != z);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("substreams do not depend on draw counts") {
    // Sample index i's first draw is the same whether or not stream i-1
    // was ever used; this is what makes threaded sampling reproducible.
    RandomStream fresh(42, 5);
    const double expected = fresh.next_unit();
    RandomStream other(42, 4);
    for (int i = 0; i < 17; ++i) other.next_unit();
    RandomStream again(42, 5);
    CHECK(again.next_unit() == expected);
}

TEST_CASE("uniform closed forms") {
    const auto u = RandomVariable::uniform(1.0, 2.0);
    CHECK(u.pdf(1.5) == doctest::Approx(1.0));
    CHECK(u.pdf(0.99) == 0.0);
    CHECK(u.pdf(2.01) == 0.0);
    CHECK(u.cdf(1.0) == doctest::Approx(0.0));
    CHECK(u.cdf(1.5) == doctest::Approx(0.5));
    CHECK(u.cdf(2.0) == doctest::Approx(1.0));
    CHECK(u.mean() == doctest::Approx(1.5));
    CHECK(u.raw_moment(2) == doctest::Approx(7.0 / 3.0)); // (2^3 - 1)/3
    CHECK(u.raw_moment(0) == doctest::Approx(1.0));
    CHECK_THROWS(RandomVariable::uniform(2.0, 2.0));
}

TEST_CASE("inverse uniform closed forms") {
    const auto v = RandomVariable::inverse_uniform(2.0, 4.0);
    // c = lo*hi/(hi-lo) = 4, so the density at the left endpoint is 1.
    CHECK(v.pdf(2.0) == doctest::Approx(1.0));
    CHECK(v.pdf(4.0) == doctest::Approx(0.25));
    CHECK(v.mean() == doctest::Approx(4.0 * std::log(2.0)));
    CHECK(v.raw_moment(2) == doctest::Approx(8.0)); // 4 * (4 - 2)
    CHECK(v.cdf(2.0) == doctest::Approx(0.0));
    CHECK(v.cdf(4.0) == doctest::Approx(1.0));
    CHECK_THROWS(RandomVariable::inverse_uniform(0.0, 4.0));
    CHECK_THROWS(RandomVariable::inverse_uniform(4.0, 2.0));
}

TEST_CASE("four-parameter beta closed forms") {
    const auto b = RandomVariable::four_param_beta(4.0, 4.0, 0.7, 1.3);
    CHECK(b.mean() == doctest::Approx(1.0));
    CHECK(b.pdf(0.69) == 0.0);
    CHECK(b.pdf(1.31) == 0.0);
    // Symmetric shapes: density mirrors about the midpoint.
    CHECK(b.pdf(0.9) == doctest::Approx(b.pdf(1.1)));
    CHECK(b.cdf(1.0) == doctest::Approx(0.5));
    CHECK_THROWS(RandomVariable::four_param_beta(0.5, 4.0, 0.0, 1.0));

    // The mean/cv factory matches its advertised two moments.
    const auto mc = RandomVariable::four_param_beta_mean_cv(2.0, 0.1);
    CHECK(mc.mean() == doctest::Approx(2.0));
    const double var = mc.raw_moment(2) - 4.0;
    CHECK(var == doctest::Approx(0.04).epsilon(1e-9));
    CHECK(mc.lower() == doctest::Approx(2.0 - 3.0 * 0.2));
    CHECK(mc.upper() == doctest::Approx(2.0 + 3.0 * 0.2));
}

TEST_CASE("truncated gaussian matches quadrature") {
    const auto g = RandomVariable::truncated_gaussian(0.5, 0.2, 0.6);
    CHECK(g.lower() == doctest::Approx(-0.1));
    CHECK(g.upper() == doctest::Approx(1.1));
    CHECK(g.pdf(0.5 - 0.3) == doctest::Approx(g.pdf(0.5 + 0.3)));
    CHECK(g.mean() == doctest::Approx(0.5));
    CHECK_THROWS(RandomVariable::truncated_gaussian(0.0, -1.0, 1.0));
}

TEST_CASE("pdf mass, quadrature moments and cdf endpoints for every kind") {
    for (const auto& v : kAll) {
        CAPTURE(int(v.kind()));
        CHECK(integrate_pdf(v, 0) == doctest::Approx(1.0).epsilon(1e-10));
        for (int r = 1; r <= 6; ++r)
            CHECK(v.raw_moment(r) == doctest::Approx(integrate_pdf(v, r)).epsilon(1e-9));
        CHECK(v.cdf(v.lower() - 1.0) == 0.0);
        CHECK(v.cdf(v.upper() + 1.0) == 1.0);
        // cdf is the integral of pdf up to the midpoint.
        const double mid = 0.5 * (v.lower() + v.upper());
        const double mass =
            pdd::quad::integrate([&](double x) { return v.pdf(x); }, v.lower(), mid);
        CHECK(v.cdf(mid) == doctest::Approx(mass).epsilon(1e-9));
    }
}

TEST_CASE("sampling agrees with the distribution") {
    const int n = 20000;
    for (const auto& v : kAll) {
        CAPTURE(int(v.kind()));
        // Deterministic given the seed; 2/sqrt(n) is ~4 sigma for KS.
        CHECK(ks_statistic(v, n, 1234) < 2.0 / std::sqrt(double(n)));
        double sum = 0.0, sum2 = 0.0;
        double lo = v.upper(), hi = v.lower();
        for (int i = 0; i < n; ++i) {
            RandomStream s(99, uint64_t(i));
            const double x = v.sample(s);
            sum += x;
            sum2 += x * x;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        CHECK(lo >= v.lower());
        CHECK(hi <= v.upper());
        const double mean = sum / n;
        const double var = sum2 / n - mean * mean;
        const double exact_var = v.raw_moment(2) - v.mean() * v.mean();
        CHECK(mean == doctest::Approx(v.mean()).epsilon(5.0 * std::sqrt(exact_var) /
                                                        (std::abs(v.mean()) * std::sqrt(n))));
        CHECK(var == doctest::Approx(exact_var).epsilon(0.05));
    }
}

TEST_CASE("parameter round trip") {
    for (const auto& v : kAll) {
        const auto rebuilt = RandomVariable::from_params(v.kind(), v.params());
        CHECK(rebuilt == v);
        CHECK(pdd::rv::kind_from_name(pdd::rv::kind_name(v.kind())) == v.kind());
    }
    CHECK_THROWS(pdd::rv::kind_from_name("not_a_kind"));
    const double two[] = {2.0, 1.0};
    CHECK_THROWS(RandomVariable::from_params(Kind::uniform, two)); // lo > hi
}

TEST_CASE("random vector sampling and joint pdf") {
    const RandomVector v({RandomVariable::inverse_uniform(2.0, 4.0),
                          RandomVariable::uniform(1.0, 2.0)});
    CHECK(v.dimension() == 2);
    CHECK(v.mean()[0] == doctest::Approx(4.0 * std::log(2.0)));
    CHECK(v.mean()[1] == doctest::Approx(1.5));

    const double inside[] = {2.0, 1.5};
    CHECK(v.joint_pdf(inside) == doctest::Approx(1.0)); // 1.0 * 1.0
    const double outside[] = {2.0, 2.5};
    CHECK(v.joint_pdf(outside) == 0.0);

    RandomStream s(5, 0);
    double x[2];
    v.sample(s, x);
    CHECK(x[0] >= 2.0);
    CHECK(x[0] <= 4.0);
    CHECK(x[1] >= 1.0);
    CHECK(x[1] <= 2.0);
}

} // TEST_SUITE
