#include "pdd/rdd.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "pdd/orthopoly.hpp"

namespace pdd::core {

namespace {

double binom(int n, int k) {
    if (k < 0) return 0.0;
    if (k == 0) return 1.0; // empty product, even for negative n (full refinement)
    if (k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// Bit-exact point identity so the cache only merges evaluations at points
// that are literally the same doubles (the hash must agree with equality,
// which plain == on doubles would break for -0.0 vs 0.0).
struct PointHash {
    size_t operator()(const std::vector<double>& v) const {
        uint64_t h = 14695981039346656037ull;
        for (const double d : v) {
            h ^= std::bit_cast<uint64_t>(d);
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};
struct PointEq {
    bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (std::bit_cast<uint64_t>(a[i]) != std::bit_cast<uint64_t>(b[i])) return false;
        return true;
    }
};

struct Entry {
    size_t slot;
    std::vector<int> pos; // positions within the current subset
    std::vector<int> deg;
};

[[noreturn]] void throw_non_finite(size_t oracle_index, std::span<const double> x) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "oracle " << oracle_index << " returned a non-finite value at (";
    for (size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << ")";
    throw std::runtime_error(msg.str());
}

} // namespace

std::vector<PddSurrogate> estimate_coefficients_shared(std::span<const Oracle> oracles,
                                                       const rv::RandomVector& v, int max_order,
                                                       int max_degree, const RddScheme& scheme) {
    const int n = v.dimension();
    const size_t n_oracles = oracles.size();
    if (n_oracles == 0) throw std::invalid_argument("coefficient estimation: no oracles given");
    if (max_order < 1 || max_order > n)
        throw std::invalid_argument("coefficient estimation: interaction order must be in 1..dimension");
    if (max_degree < 1)
        throw std::invalid_argument("coefficient estimation: degree must be >= 1");

    const int refine = scheme.refine_order == 0 ? max_order : scheme.refine_order;
    if (refine < max_order || refine > n)
        throw std::invalid_argument(
            "coefficient estimation: refinement order must be in interaction_order..dimension");
    const int n_q = scheme.nodes_per_dim == 0 ? max_degree + 2 : scheme.nodes_per_dim;
    if (n_q < max_degree + 1)
        throw std::invalid_argument(
            "coefficient estimation: nodes per dimension must be at least degree + 1");

    std::vector<double> c = scheme.reference.empty() ? v.mean() : scheme.reference;
    if (int(c.size()) != n)
        throw std::invalid_argument("coefficient estimation: reference point dimension mismatch");
    for (int i = 0; i < n; ++i)
        if (!(c[size_t(i)] >= v[i].lower() && c[size_t(i)] <= v[i].upper()))
            throw std::invalid_argument(
                "coefficient estimation: reference point outside the support box");

    const auto bases = BasisSet::build(v, max_degree);
    std::vector<ortho::QuadratureRule> rules;
    std::vector<std::vector<double>> psi_tab; // per variable, (m+1) x n_q, degree-major
    rules.reserve(size_t(n));
    psi_tab.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        rules.push_back(bases->basis(i).gauss_rule(n_q));
        std::vector<double> tab(size_t(max_degree + 1) * size_t(n_q));
        std::vector<double> col(size_t(max_degree + 1));
        for (int q = 0; q < n_q; ++q) {
            bases->basis(i).eval_all(rules.back().nodes[size_t(q)], col);
            for (int j = 0; j <= max_degree; ++j)
                tab[size_t(j) * size_t(n_q) + size_t(q)] = col[size_t(j)];
        }
        psi_tab.push_back(std::move(tab));
    }

    const auto canonical = index_set(n, max_order, max_degree);
    std::map<std::pair<std::vector<int>, std::vector<int>>, size_t> slot_of;
    for (size_t k = 0; k < canonical.size(); ++k)
        slot_of[{canonical[k].vars, canonical[k].degs}] = k;

    std::vector<double> constant_acc(n_oracles, 0.0);
    std::vector<std::vector<double>> coeff_acc(n_oracles,
                                               std::vector<double>(canonical.size(), 0.0));

    std::unordered_map<std::vector<double>, std::vector<double>, PointHash, PointEq> cache;
    std::vector<double> x(size_t(n), 0.0);
    auto values_at = [&](const std::vector<double>& point) -> const std::vector<double>& {
        auto it = cache.find(point);
        if (it != cache.end()) return it->second;
        std::vector<double> vals(n_oracles);
        for (size_t o = 0; o < n_oracles; ++o) {
            vals[o] = oracles[o](point);
            if (!std::isfinite(vals[o])) throw_non_finite(o, point);
        }
        return cache.emplace(point, std::move(vals)).first->second;
    };

    for (int q = 0; q <= refine; ++q) {
        const int sz = refine - q;
        const double w = (q % 2 == 0 ? 1.0 : -1.0) * binom(n - refine + q - 1, q);
        if (w == 0.0) continue;

        if (sz == 0) {
            const auto& vals = values_at(c);
            for (size_t o = 0; o < n_oracles; ++o) constant_acc[o] += w * vals[o];
            continue;
        }

        std::vector<int> vsub(size_t(sz), 0);
        for (int p = 0; p < sz; ++p) vsub[size_t(p)] = p;
        while (true) {
            // Terms whose variable set lies inside this subset; their slots
            // receive contributions from this subset's grid.
            std::vector<Entry> entries;
            const int t_max = std::min(max_order, sz);
            for (int t = 1; t <= t_max; ++t) {
                std::vector<int> pos(size_t(t), 0);
                for (int p = 0; p < t; ++p) pos[size_t(p)] = p;
                while (true) {
                    std::vector<int> u_vars(size_t(t), 0);
                    for (int p = 0; p < t; ++p) u_vars[size_t(p)] = vsub[size_t(pos[size_t(p)])];
                    std::vector<int> deg(size_t(t), 1);
                    while (true) {
                        entries.push_back({slot_of.at({u_vars, deg}), pos, deg});
                        int p = t - 1;
                        while (p >= 0 && deg[size_t(p)] == max_degree) { deg[size_t(p)] = 1; --p; }
                        if (p < 0) break;
                        ++deg[size_t(p)];
                    }
                    int p = t - 1;
                    while (p >= 0 && pos[size_t(p)] == sz - t + p) --p;
                    if (p < 0) break;
                    ++pos[size_t(p)];
                    for (int r = p + 1; r < t; ++r) pos[size_t(r)] = pos[size_t(r - 1)] + 1;
                }
            }

            std::vector<int> idx(size_t(sz), 0);
            while (true) {
                x = c;
                double wq = w;
                for (int p = 0; p < sz; ++p) {
                    const auto& rule = rules[size_t(vsub[size_t(p)])];
                    x[size_t(vsub[size_t(p)])] = rule.nodes[size_t(idx[size_t(p)])];
                    wq *= rule.weights[size_t(idx[size_t(p)])];
                }
                const auto& vals = values_at(x);
                for (size_t o = 0; o < n_oracles; ++o) constant_acc[o] += wq * vals[o];
                for (const auto& e : entries) {
                    double pr = 1.0;
                    for (size_t p = 0; p < e.pos.size(); ++p) {
                        const int var = vsub[size_t(e.pos[p])];
                        pr *= psi_tab[size_t(var)][size_t(e.deg[p]) * size_t(n_q) +
                                                   size_t(idx[size_t(e.pos[p])])];
                    }
                    for (size_t o = 0; o < n_oracles; ++o)
                        coeff_acc[o][e.slot] += wq * vals[o] * pr;
                }

                int p = sz - 1;
                while (p >= 0 && idx[size_t(p)] == n_q - 1) { idx[size_t(p)] = 0; --p; }
                if (p < 0) break;
                ++idx[size_t(p)];
            }

            int p = sz - 1;
            while (p >= 0 && vsub[size_t(p)] == n - sz + p) --p;
            if (p < 0) break;
            ++vsub[size_t(p)];
            for (int r = p + 1; r < sz; ++r) vsub[size_t(r)] = vsub[size_t(r - 1)] + 1;
        }
    }

    const long long points = int64_t(cache.size());
    std::vector<PddSurrogate> out;
    out.reserve(n_oracles);
    for (size_t o = 0; o < n_oracles; ++o)
        out.emplace_back(bases, max_order, max_degree, constant_acc[o],
                         std::move(coeff_acc[o]), refine, c, points);
    return out;
}

PddSurrogate estimate_coefficients(const Oracle& oracle, const rv::RandomVector& v,
                                   int max_order, int max_degree, const RddScheme& scheme) {
    const Oracle arr[] = {oracle};
    auto built = estimate_coefficients_shared({arr, 1}, v, max_order, max_degree, scheme);
    return std::move(built.front());
}

std::pair<PddSurrogate, PddSurrogate> paired_build(const Oracle& performance, const Oracle& rate,
                                                   const rv::RandomVector& v, int max_order,
                                                   int max_degree, const RddScheme& scheme) {
    const Oracle arr[] = {performance, rate};
    auto built = estimate_coefficients_shared({arr, 2}, v, max_order, max_degree, scheme);
    return {std::move(built[0]), std::move(built[1])};
}

} // namespace pdd::core
