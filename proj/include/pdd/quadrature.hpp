#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace pdd::quad {

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre
// recurrence; accurate to ~1e-15 for n <= 64).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Adaptive Gauss-Kronrod 7-15 over [a, b] to a relative tolerance.
// abs_floor guards integrals whose true value is ~0.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_floor = 1e-300);

} // namespace pdd::quad
