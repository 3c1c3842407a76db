#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "idcm/bodies.hpp"
#include "idcm/grid.hpp"
#include "idcm/interp.hpp"
#include "idcm/parallel.hpp"
#include "idcm/quadrature.hpp"
#include "idcm/summation.hpp"
#include "idcm/vec.hpp"

namespace idcm {

struct AxisQuadratureOptions {
    int polar_order = 64;  // Gauss-Jacobi order in t = pole . v
    int azimuth = 48;      // uniform points per ring (n=3)
};

namespace detail {

inline void pole_frame(const Vec& u, Vec& e1, Vec& e2) {
    Vec a = std::abs(u.x) < 0.9 ? Vec{1, 0, 0} : Vec{0, 1, 0};
    e1 = normalized(cross(u, a));
    e2 = cross(u, e1);
}

// shared unit ring offsets (cos psi, sin psi) at half-step phase
inline const std::vector<std::pair<double, double>>& ring_table(int azimuth) {
    thread_local std::vector<std::pair<double, double>> tab;
    thread_local int tab_n = 0;
    if (tab_n != azimuth) {
        tab.resize(azimuth);
        for (int j = 0; j < azimuth; ++j) {
            double psi = 2.0 * std::numbers::pi * (j + 0.5) / azimuth;
            tab[j] = {std::cos(psi), std::sin(psi)};
        }
        tab_n = azimuth;
    }
    return tab;
}

inline bool is_even_integer(double x) {
    double r = std::round(x / 2.0) * 2.0;
    return x >= 0.0 && std::abs(x - r) < 1e-12;
}

// x^k for small even k, avoiding pow() in the all-pairs inner loop
inline double even_int_pow(double x, int k) {
    double x2 = x * x, r = 1.0;
    for (int i = 0; i < k / 2; ++i) r *= x2;
    return r;
}

}  // namespace detail

// int_{S^{n-1}} g(v) |pole . v|^exponent dv for even g, exponent > -1.
// The polar variable t = pole . v carries the Gauss-Jacobi weight
// |t|^exponent (1-t^2)^{(n-3)/2}; the azimuthal variable uses a uniform rule
// (n=3) or the two intersection points (n=2).
template <typename G>
double singular_axis_quadrature(int dim, G&& g, const Vec& pole, double exponent,
                                const AxisQuadratureOptions& opts = {}) {
    if (exponent <= -1.0)
        throw std::invalid_argument("kernel exponent must exceed -1 for integrability");
    SymmetricKernelRule rule =
        symmetric_kernel_rule(opts.polar_order, exponent, 0.5 * (dim - 3));
    if (dim == 2) {
        Vec perp{-pole.y, pole.x, 0.0};
        std::vector<double> terms(rule.nodes.size());
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            double t = rule.nodes[k], s = std::sqrt(1.0 - t * t);
            Vec vp = pole * t + perp * s;
            Vec vm = pole * t - perp * s;
            // g even: the -t branch duplicates the +t one
            terms[k] = 2.0 * rule.weights[k] * (g(vp) + g(vm));
        }
        return pairwise_sum(terms);
    }
    Vec e1, e2;
    detail::pole_frame(pole, e1, e2);
    const auto& ring_tab = detail::ring_table(opts.azimuth);
    const double dpsi = 2.0 * std::numbers::pi / opts.azimuth;
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        double t = rule.nodes[k], s = std::sqrt(1.0 - t * t);
        Vec center = pole * t;
        double ring = 0.0;
        for (const auto& [c, sn] : ring_tab) ring += g(center + (e1 * c + e2 * sn) * s);
        terms[k] = 2.0 * rule.weights[k] * ring * dpsi;
    }
    return pairwise_sum(terms);
}

struct TransformResult {
    EvenSphericalFunction values;
    std::optional<double> kernel_exponent;  // absent for the Radon transform
};

// (T_p f)(u) = int f(v) |u . v|^p dv.  Polynomial kernels (p a nonnegative
// even integer) go through the plain all-pairs sum; every other kernel is
// routed through the Gauss-Jacobi axis rule, whose weight absorbs both the
// singularity and the |t|^p derivative kinks.
inline TransformResult p_cosine_transform(const EvenSphericalFunction& f, double p,
                                          const AxisQuadratureOptions& opts = {}) {
    if (p <= -1.0) throw std::invalid_argument("p-cosine transform requires p > -1");
    const SphericalGrid& g = *f.grid;
    std::vector<double> out(g.nodes.size());

    if (detail::is_even_integer(p)) {
        const int k = static_cast<int>(std::lround(p));
        std::vector<double> wf(g.nodes.size());
        for (std::size_t j = 0; j < wf.size(); ++j) wf[j] = g.weights[j] * f.values[j];
        parallel_for(g.nodes.size(), [&](std::size_t i) {
            if (g.antipode[i] < static_cast<int>(i)) return;
            std::vector<double> terms(wf.size());
            for (std::size_t j = 0; j < wf.size(); ++j)
                terms[j] = wf[j] * detail::even_int_pow(dot(g.nodes[i], g.nodes[j]), k);
            out[i] = pairwise_sum(terms);
        });
    } else {
        EvenInterpolant interp(g, f.values);
        parallel_for(g.nodes.size(), [&](std::size_t i) {
            if (g.antipode[i] < static_cast<int>(i)) return;
            out[i] = singular_axis_quadrature(
                g.dim, [&](const Vec& v) { return interp(v); }, g.nodes[i], p, opts);
        });
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (g.antipode[i] < static_cast<int>(i)) out[i] = out[g.antipode[i]];
    return {{g, std::move(out)}, p};
}

// (R f)(u): n=2 evaluates the two-point fiber S^1 cap u-perp, n=3 integrates
// the great circle with a uniform rule (trapezoid on a circle: spectrally
// accurate for smooth integrands).
inline TransformResult radon_transform(const EvenSphericalFunction& f, int ring_points = 256) {
    const SphericalGrid& g = *f.grid;
    EvenInterpolant interp(g, f.values);
    std::vector<double> out(g.nodes.size());
    if (g.dim == 2) {
        parallel_for(g.nodes.size(), [&](std::size_t i) {
            Vec v{-g.nodes[i].y, g.nodes[i].x, 0.0};
            out[i] = 2.0 * interp(v);
        });
    } else {
        const double dpsi = 2.0 * std::numbers::pi / ring_points;
        parallel_for(g.nodes.size(), [&](std::size_t i) {
            if (g.antipode[i] < static_cast<int>(i)) return;
            Vec e1, e2;
            detail::pole_frame(g.nodes[i], e1, e2);
            double acc = 0.0;
            for (int j = 0; j < ring_points; ++j) {
                double psi = dpsi * (j + 0.5);
                acc += interp(e1 * std::cos(psi) + e2 * std::sin(psi));
            }
            out[i] = acc * dpsi;
        });
        for (std::size_t i = 0; i < out.size(); ++i)
            if (g.antipode[i] < static_cast<int>(i)) out[i] = out[g.antipode[i]];
    }
    return {{g, std::move(out)}, std::nullopt};
}

// max over nodes of |(1-p)/2 T_{-p} f - R f| / R f
inline double limit_consistency_check(const EvenSphericalFunction& f, double p,
                                      const AxisQuadratureOptions& opts = {}) {
    if (!(p > 0.9 && p < 1.0))
        throw std::invalid_argument("limit check expects p in (0.9, 1)");
    TransformResult tp = p_cosine_transform(f, -p, opts);
    TransformResult rf = radon_transform(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < tp.values.values.size(); ++i) {
        double approx = 0.5 * (1.0 - p) * tp.values.values[i];
        worst = std::max(worst, std::abs(approx - rf.values.values[i]) / rf.values.values[i]);
    }
    return worst;
}

}  // namespace idcm
