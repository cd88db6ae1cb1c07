#include "pdd/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pdd::quad {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(size_t(n), 0.0);
    weights.assign(size_t(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th positive root.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[size_t(i)] = -x;
        nodes[size_t(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[size_t(i)] = w;
        weights[size_t(n - 1 - i)] = w;
    }
}

namespace {

// Gauss-Kronrod 7-15 pair on [-1, 1] (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double fsum = f(c - x) + f(c + x);
        res_k += kWgk[j] * fsum;
        if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
    }
    res_k *= h;
    res_g *= h;
    return {res_k, std::abs(res_k - res_g)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor) {
    struct Panel {
        double a, b, value, error;
    };
    PanelResult whole = gk15(f, a, b);
    std::vector<Panel> stack{{a, b, whole.value, whole.error}};
    double total = whole.value, total_err = whole.error;
    int splits = 0;
    const int max_splits = 2000;
    while (total_err > rel_tol * std::abs(total) + abs_floor && splits < max_splits) {
        // Split the panel with the largest error estimate.
        size_t worst = 0;
        for (size_t i = 1; i < stack.size(); ++i)
            if (stack[i].error > stack[worst].error) worst = i;
        Panel p = stack[worst];
        stack.erase(stack.begin() + long(worst));
        double mid = 0.5 * (p.a + p.b);
        PanelResult left = gk15(f, p.a, mid), right = gk15(f, mid, p.b);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        stack.push_back({p.a, mid, left.value, left.error});
        stack.push_back({mid, p.b, right.value, right.error});
        ++splits;
    }
    if (splits >= max_splits)
        throw std::runtime_error("integrate: adaptive subdivision failed to converge");
    return total;
}

} // namespace pdd::quad
