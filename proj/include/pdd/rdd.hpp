#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pdd/random_variable.hpp"
#include "pdd/surrogate.hpp"

namespace pdd::core {

using Oracle = std::function<double(std::span<const double>)>;

// Knobs for coefficient estimation via dimensional refinement of the
// oracle around a reference point. Zero / empty fields select defaults:
// refine_order = max_order, nodes_per_dim = max_degree + 2, reference =
// the componentwise mean.
struct RddScheme {
    int refine_order = 0;
    int nodes_per_dim = 0;
    std::vector<double> reference;
};

// Estimate expansion coefficients for each oracle over a shared point set:
// the oracles are restricted to every coordinate subset of size <=
// refine_order (other coordinates pinned at the reference), integrated on
// tensorized Gauss rules, and the subset integrals are combined with
// alternating binomial weights so that sub-subset contributions cancel.
// All oracles see exactly the same points, built once and cached, so a
// paired performance/rate build costs one point set, not two.
std::vector<PddSurrogate> estimate_coefficients_shared(
    std::span<const Oracle> oracles, const rv::RandomVector& v, int max_order,
    int max_degree, const RddScheme& scheme = {});

PddSurrogate estimate_coefficients(const Oracle& oracle, const rv::RandomVector& v,
                                   int max_order, int max_degree,
                                   const RddScheme& scheme = {});

std::pair<PddSurrogate, PddSurrogate> paired_build(const Oracle& performance,
                                                   const Oracle& rate,
                                                   const rv::RandomVector& v, int max_order,
                                                   int max_degree, const RddScheme& scheme = {});

} // namespace pdd::core
