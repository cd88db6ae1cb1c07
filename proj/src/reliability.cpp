#include "pdd/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pdd/rng.hpp"

namespace pdd::reliability {

namespace {

constexpr int block = core::BatchEvaluator::block;

bool fails(double v, const LimitState& l) {
    return l.direction == Direction::above ? v > l.threshold : v < l.threshold;
}

void check_mcs_args(long long n_samples, int threads) {
    if (n_samples < 1) throw std::invalid_argument("sampling: sample count must be >= 1");
    if (threads < 1 || threads > 256)
        throw std::invalid_argument("sampling: thread count must be in 1..256");
    if (!std::isfinite(double(n_samples)))
        throw std::invalid_argument("sampling: sample count overflow");
}

void check_limit(const LimitState& l) {
    if (!std::isfinite(l.threshold))
        throw std::invalid_argument("limit state: threshold must be finite");
}

// Runs body(chunk, begin, end) over a contiguous partition of [0, n).
template <typename Body>
void run_chunks(long long n, int threads, const Body& body) {
    if (threads == 1) {
        body(0, 0, n);
        return;
    }
    const long long per = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        const long long b = std::min<long long>(n, t * per);
        const long long e = std::min<long long>(n, b + per);
        if (b >= e) continue;
        pool.emplace_back([&body, t, b, e] { body(t, b, e); });
    }
    for (auto& th : pool) th.join();
}

void draw_block(const rv::RandomVector& v, uint64_t seed, long long base, int count,
                std::vector<double>& xs) {
    const int n = v.dimension();
    for (int s = 0; s < count; ++s) {
        rv::RandomStream stream(seed, uint64_t(base + s));
        v.sample(stream, {&xs[size_t(s) * size_t(n)], size_t(n)});
    }
}

McsResult binomial_result(long long hits, long long n_samples, uint64_t seed) {
    const double p = double(hits) / double(n_samples);
    return {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / double(n_samples)), n_samples, seed};
}

// Shared skeleton of the finite-difference pair estimators: per sample,
// indicator of the base response and of the perturbed response, same x.
struct FdTallies {
    long long base = 0;
    long long diff = 0;    // sum of (I_perturbed - I_base), each in {-1,0,1}
    long long absdiff = 0; // sum of squares (= absolute values)
};

FdResult fd_result(const FdTallies& t, long long n_samples, uint64_t seed, double scale) {
    const double l = double(n_samples);
    const double d_mean = double(t.diff) / l;
    const double d_sq = double(t.absdiff) / l;
    FdResult r;
    r.estimate = d_mean / scale;
    r.std_error = std::sqrt(std::max(0.0, d_sq - d_mean * d_mean) / l) / scale;
    const double p = double(t.base) / l;
    r.base_estimate = p;
    r.base_std_error = std::sqrt(std::max(0.0, p * (1.0 - p)) / l);
    r.sample_count = n_samples;
    r.seed = seed;
    return r;
}

} // namespace

McsResult failure_probability(const FailureSpec& spec, const rv::RandomVector& v,
                              long long n_samples, uint64_t seed, int threads) {
    check_mcs_args(n_samples, threads);
    const size_t k = spec.surrogates.size();
    if (k == 0) throw std::invalid_argument("failure spec: needs at least one surrogate");
    if (spec.limits.size() != k)
        throw std::invalid_argument("failure spec: one limit state per surrogate required");
    if (spec.combine == Combine::single && k != 1)
        throw std::invalid_argument("failure spec: single mode takes exactly one surrogate");
    for (const auto& l : spec.limits) check_limit(l);
    for (const auto& s : spec.surrogates)
        if (s.get().dimension() != v.dimension())
            throw std::invalid_argument("failure spec: surrogate dimension disagrees with "
                                        "the sampling vector");

    const int n = v.dimension();
    std::vector<long long> hits(size_t(threads), 0);
    run_chunks(n_samples, threads, [&](int chunk, long long b, long long e) {
        std::vector<core::BatchEvaluator> evals;
        evals.reserve(k);
        for (const auto& s : spec.surrogates) evals.emplace_back(s.get());
        std::vector<double> xs(size_t(block) * size_t(n));
        std::vector<double> vals(k * size_t(block));
        long long local = 0;
        for (long long base = b; base < e; base += block) {
            const int count = int(std::min<long long>(block, e - base));
            draw_block(v, seed, base, count, xs);
            for (size_t q = 0; q < k; ++q)
                evals[q].eval_block(xs, count, {&vals[q * size_t(block)], size_t(block)});
            for (int s = 0; s < count; ++s) {
                bool f = spec.combine == Combine::intersection_of;
                for (size_t q = 0; q < k; ++q) {
                    const bool fq = fails(vals[q * size_t(block) + size_t(s)], spec.limits[q]);
                    if (spec.combine == Combine::intersection_of)
                        f = f && fq;
                    else
                        f = f || fq;
                }
                local += f ? 1 : 0;
            }
        }
        hits[size_t(chunk)] = local;
    });

    long long total = 0;
    for (const long long h : hits) total += h;
    return binomial_result(total, n_samples, seed);
}

McsResult failure_probability(const core::Oracle& fn, LimitState limit,
                              const rv::RandomVector& v, long long n_samples, uint64_t seed,
                              int threads) {
    check_mcs_args(n_samples, threads);
    check_limit(limit);
    const int n = v.dimension();
    std::vector<long long> hits(size_t(threads), 0);
    run_chunks(n_samples, threads, [&](int chunk, long long b, long long e) {
        std::vector<double> xs(size_t(block) * size_t(n));
        long long local = 0;
        for (long long base = b; base < e; base += block) {
            const int count = int(std::min<long long>(block, e - base));
            draw_block(v, seed, base, count, xs);
            for (int s = 0; s < count; ++s)
                local += fails(fn({&xs[size_t(s) * size_t(n)], size_t(n)}), limit) ? 1 : 0;
        }
        hits[size_t(chunk)] = local;
    });
    long long total = 0;
    for (const long long h : hits) total += h;
    return binomial_result(total, n_samples, seed);
}

FdResult dt_failure_probability(const core::PddSurrogate& y, const core::PddSurrogate& rate,
                                const topo::PerforationSpec& perf, LimitState limit,
                                long long n_samples, uint64_t seed, int threads) {
    check_mcs_args(n_samples, threads);
    check_limit(limit);
    topo::validate(perf);
    if (!y.compatible_with(rate))
        throw std::invalid_argument("sensitivity sampling: response and rate surrogates "
                                    "share neither variables nor truncation");
    const double scale = std::pow(perf.rho, perf.spatial_dim);
    const rv::RandomVector& v = y.bases().variables();
    const int n = v.dimension();

    std::vector<FdTallies> parts(size_t(threads), FdTallies{});
    run_chunks(n_samples, threads, [&](int chunk, long long b, long long e) {
        core::BatchEvaluator ey(y), ez(rate);
        std::vector<double> xs(size_t(block) * size_t(n));
        std::vector<double> vy(block), vz(block);
        FdTallies local;
        for (long long base = b; base < e; base += block) {
            const int count = int(std::min<long long>(block, e - base));
            draw_block(v, seed, base, count, xs);
            ey.eval_block(xs, count, vy);
            ez.eval_block(xs, count, vz);
            for (int s = 0; s < count; ++s) {
                const int i0 = fails(vy[size_t(s)], limit) ? 1 : 0;
                const int i1 = fails(vy[size_t(s)] + scale * vz[size_t(s)], limit) ? 1 : 0;
                local.base += i0;
                local.diff += i1 - i0;
                local.absdiff += i1 == i0 ? 0 : 1;
            }
        }
        parts[size_t(chunk)] = local;
    });

    FdTallies total;
    for (const auto& p : parts) {
        total.base += p.base;
        total.diff += p.diff;
        total.absdiff += p.absdiff;
    }
    return fd_result(total, n_samples, seed, scale);
}

FdResult crude_mcs_fd(const core::Oracle& y_exact, const core::Oracle& y_ring_exact,
                      const rv::RandomVector& v, const topo::PerforationSpec& perf,
                      LimitState limit, long long n_samples, uint64_t seed, int threads) {
    check_mcs_args(n_samples, threads);
    check_limit(limit);
    topo::validate(perf);
    const double scale = std::pow(perf.rho, perf.spatial_dim);
    const int n = v.dimension();

    std::vector<FdTallies> parts(size_t(threads), FdTallies{});
    run_chunks(n_samples, threads, [&](int chunk, long long b, long long e) {
        std::vector<double> xs(size_t(block) * size_t(n));
        FdTallies local;
        for (long long base = b; base < e; base += block) {
            const int count = int(std::min<long long>(block, e - base));
            draw_block(v, seed, base, count, xs);
            for (int s = 0; s < count; ++s) {
                const std::span<const double> x{&xs[size_t(s) * size_t(n)], size_t(n)};
                const int i0 = fails(y_exact(x), limit) ? 1 : 0;
                const int i1 = fails(y_ring_exact(x), limit) ? 1 : 0;
                local.base += i0;
                local.diff += i1 - i0;
                local.absdiff += i1 == i0 ? 0 : 1;
            }
        }
        parts[size_t(chunk)] = local;
    });

    FdTallies total;
    for (const auto& p : parts) {
        total.base += p.base;
        total.diff += p.diff;
        total.absdiff += p.absdiff;
    }
    return fd_result(total, n_samples, seed, scale);
}

std::vector<std::pair<double, double>> cdf_curve(const core::PddSurrogate& s,
                                                 const rv::RandomVector& v, long long n_samples,
                                                 uint64_t seed, std::span<const double> grid,
                                                 int threads) {
    check_mcs_args(n_samples, threads);
    if (s.dimension() != v.dimension())
        throw std::invalid_argument("cdf curve: surrogate dimension disagrees with the "
                                    "sampling vector");
    const int n = v.dimension();
    std::vector<double> values(size_t(n_samples), 0.0);
    run_chunks(n_samples, threads, [&](int, long long b, long long e) {
        core::BatchEvaluator ev(s);
        std::vector<double> xs(size_t(block) * size_t(n));
        for (long long base = b; base < e; base += block) {
            const int count = int(std::min<long long>(block, e - base));
            draw_block(v, seed, base, count, xs);
            ev.eval_block(xs, count, {&values[size_t(base)], size_t(count)});
        }
    });

    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (const double g : grid) {
        const auto it = std::upper_bound(values.begin(), values.end(), g);
        out.emplace_back(g, double(it - values.begin()) / double(n_samples));
    }
    return out;
}

} // namespace pdd::reliability
