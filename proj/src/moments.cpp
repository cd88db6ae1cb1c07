#include "pdd/moments.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace pdd::moments {

namespace {

double coeff_square_sum(const core::PddSurrogate& s) {
    double acc = 0.0;
    for (const double c : s.coeffs()) acc += c * c;
    return acc;
}

double coeff_dot(const core::PddSurrogate& a, const core::PddSurrogate& b) {
    if (!a.compatible_with(b))
        throw std::invalid_argument("moment sensitivity: surrogates share neither variables "
                                    "nor truncation");
    const auto ca = a.coeffs();
    const auto cb = b.coeffs();
    double acc = 0.0;
    for (size_t k = 0; k < ca.size(); ++k) acc += ca[k] * cb[k];
    return acc;
}

// Contiguous run of canonical terms sharing one variable subset.
struct Group {
    std::vector<int> vars;
    size_t begin = 0;
    size_t count = 0;
};

std::vector<Group> group_terms(const core::PddSurrogate& s) {
    const auto terms = s.terms();
    std::vector<Group> out;
    size_t k = 0;
    while (k < terms.size()) {
        size_t e = k;
        while (e < terms.size() && terms[e].vars == terms[k].vars) ++e;
        out.push_back({terms[k].vars, k, e - k});
        k = e;
    }
    return out;
}

// Degrees (1-based) for the combo at flat position `at` within a group of
// `s` variables, first position major; matches canonical term order.
void decode_degrees(size_t at, int s, int max_degree, int* deg) {
    for (int p = s - 1; p >= 0; --p) {
        deg[p] = 1 + int(at % size_t(max_degree));
        at /= size_t(max_degree);
    }
}

} // namespace

double mean(const core::PddSurrogate& s) { return s.constant(); }

double second_moment(const core::PddSurrogate& s) {
    const double y0 = s.constant();
    return y0 * y0 + coeff_square_sum(s);
}

double third_moment(const core::PddSurrogate& s) {
    const double y0 = s.constant();
    return y0 * y0 * y0 + 3.0 * y0 * coeff_square_sum(s) + interaction_triple_sum(s, s, s);
}

MomentReport compute_moments(const core::PddSurrogate& s) {
    MomentReport r;
    r.m1 = mean(s);
    r.variance = coeff_square_sum(s);
    r.m2 = r.m1 * r.m1 + r.variance;
    r.m3 = third_moment(s);
    r.max_order = s.max_order();
    r.max_degree = s.max_degree();
    return r;
}

double dt_mean(const core::PddSurrogate& rate) { return rate.constant(); }

double dt_second_moment(const core::PddSurrogate& y, const core::PddSurrogate& rate) {
    return 2.0 * (y.constant() * rate.constant() + coeff_dot(y, rate));
}

double dt_third_moment(const core::PddSurrogate& y, const core::PddSurrogate& rate) {
    const double cross = coeff_dot(y, rate); // also validates compatibility
    return 3.0 * (rate.constant() * second_moment(y) + 2.0 * y.constant() * cross +
                  interaction_triple_sum(y, y, rate));
}

MomentSensitivityReport compute_sensitivities(const core::PddSurrogate& y,
                                              const core::PddSurrogate& rate) {
    return {dt_mean(rate), dt_second_moment(y, rate), dt_third_moment(y, rate)};
}

double interaction_triple_sum(const core::PddSurrogate& a, const core::PddSurrogate& b,
                              const core::PddSurrogate& c) {
    if (!a.compatible_with(b) || !a.compatible_with(c))
        throw std::invalid_argument("interaction triple sum: surrogates share neither "
                                    "variables nor truncation");

    const int m = a.max_degree();
    const int max_order = a.max_order();
    if (max_order > 8)
        throw std::invalid_argument("interaction triple sum: interaction order above 8 "
                                    "is not supported");
    const auto groups = group_terms(a);
    std::map<std::vector<int>, size_t> group_of;
    for (size_t g = 0; g < groups.size(); ++g) group_of[groups[g].vars] = g;

    const auto ca = a.coeffs();
    const auto cb = b.coeffs();
    const auto cc = c.coeffs();
    const auto& bases = a.bases();
    const int tw = bases.max_degree() + 1; // triple-table row width

    std::vector<std::span<const double>> tri(size_t(a.dimension()));
    for (int i = 0; i < a.dimension(); ++i) tri[size_t(i)] = bases.basis(i).triple_table();

    double total = 0.0;
    std::vector<int> inter, sym, uni, wv;
    int du[8], dv[8], dw[8];
    int pu[16], pv[16], pw[16];

    for (const auto& gu : groups) {
        const int su = int(gu.vars.size());
        for (const auto& gv : groups) {
            const int sv = int(gv.vars.size());
            inter.clear();
            sym.clear();
            uni.clear();
            std::set_intersection(gu.vars.begin(), gu.vars.end(), gv.vars.begin(), gv.vars.end(),
                                  std::back_inserter(inter));
            std::set_symmetric_difference(gu.vars.begin(), gu.vars.end(), gv.vars.begin(),
                                          gv.vars.end(), std::back_inserter(sym));
            if (int(sym.size()) > max_order) continue;
            std::set_union(gu.vars.begin(), gu.vars.end(), gv.vars.begin(), gv.vars.end(),
                           std::back_inserter(uni));
            const int ni = int(inter.size());
            const int nd = int(uni.size());

            for (unsigned mask = 0; mask < (1u << ni); ++mask) {
                wv = sym;
                for (int p = 0; p < ni; ++p)
                    if (mask & (1u << p)) wv.push_back(inter[size_t(p)]);
                if (wv.empty() || int(wv.size()) > max_order) continue;
                std::sort(wv.begin(), wv.end());
                const auto& gw = groups[group_of.at(wv)];
                const int sw = int(gw.vars.size());

                for (int d = 0; d < nd; ++d) {
                    const int var = uni[size_t(d)];
                    auto pos_in = [var](const std::vector<int>& vs) {
                        for (size_t p = 0; p < vs.size(); ++p)
                            if (vs[p] == var) return int(p);
                        return -1;
                    };
                    pu[d] = pos_in(gu.vars);
                    pv[d] = pos_in(gv.vars);
                    pw[d] = pos_in(gw.vars);
                }

                for (size_t au = 0; au < gu.count; ++au) {
                    const double fa = ca[gu.begin + au];
                    if (fa == 0.0) continue;
                    decode_degrees(au, su, m, du);
                    for (size_t av = 0; av < gv.count; ++av) {
                        const double fb = cb[gv.begin + av];
                        if (fb == 0.0) continue;
                        decode_degrees(av, sv, m, dv);
                        const double fab = fa * fb;
                        for (size_t aw = 0; aw < gw.count; ++aw) {
                            const double fc = cc[gw.begin + aw];
                            if (fc == 0.0) continue;
                            decode_degrees(aw, sw, m, dw);
                            double prod = 1.0;
                            for (int d = 0; d < nd; ++d) {
                                const int ju = pu[d] < 0 ? 0 : du[pu[d]];
                                const int jv = pv[d] < 0 ? 0 : dv[pv[d]];
                                const int jw = pw[d] < 0 ? 0 : dw[pw[d]];
                                const double t =
                                    tri[size_t(uni[size_t(d)])]
                                       [size_t((ju * tw + jv) * tw + jw)];
                                if (t == 0.0) {
                                    prod = 0.0;
                                    break;
                                }
                                prod *= t;
                            }
                            if (prod != 0.0) total += fab * fc * prod;
                        }
                    }
                }
            }
        }
    }
    return total;
}

} // namespace pdd::moments
