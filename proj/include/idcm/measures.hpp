#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "idcm/bodies.hpp"
#include "idcm/lp_bodies.hpp"
#include "idcm/quadrature.hpp"
#include "idcm/summation.hpp"
#include "idcm/transforms.hpp"

namespace idcm {

// Finite even Borel measure as antipodal atom pairs.
struct DiscreteSphericalMeasure {
    int dim = 2;
    bool even = true;
    std::vector<Vec> positions;
    std::vector<double> weights;
    std::vector<int> antipode;

    double total() const { return pairwise_sum(weights); }
    int size() const { return static_cast<int>(positions.size()); }
};

inline DiscreteSphericalMeasure make_even_measure(int dim, std::vector<Vec> positions,
                                                  std::vector<double> weights) {
    if (positions.size() != weights.size() || positions.empty())
        throw std::invalid_argument("need one weight per atom");
    DiscreteSphericalMeasure mu;
    mu.dim = dim;
    mu.positions = std::move(positions);
    mu.weights = std::move(weights);
    for (auto& u : mu.positions) u = normalized(u);
    for (double w : mu.weights)
        if (!(w > 0.0)) throw std::invalid_argument("atom weights must be positive");
    mu.antipode.assign(mu.positions.size(), -1);
    for (std::size_t i = 0; i < mu.positions.size(); ++i) {
        if (mu.antipode[i] >= 0) continue;
        for (std::size_t j = i + 1; j < mu.positions.size(); ++j) {
            if (mu.antipode[j] >= 0) continue;
            if (norm(mu.positions[i] + mu.positions[j]) < 1e-9) {
                mu.positions[j] = -mu.positions[i];
                mu.antipode[i] = static_cast<int>(j);
                mu.antipode[j] = static_cast<int>(i);
                break;
            }
        }
        if (mu.antipode[i] < 0)
            throw std::invalid_argument("even measure must have antipodally paired atoms");
        if (std::abs(mu.weights[i] - mu.weights[mu.antipode[i]]) >
            1e-9 * std::max(mu.weights[i], mu.weights[mu.antipode[i]]))
            throw std::invalid_argument("even measure must have equal weights on antipodal atoms");
    }
    return mu;
}

namespace detail {

// Per-facet integrals of an integrand over the reverse-image cells.
//
// n=2: the cells are the exact vertex-to-vertex arcs; each arc is integrated
//      by composite Gauss-Legendre panels against a callable integrand (the
//      integrand is smooth inside a cell, kinks sit on the arc endpoints).
// n=3: each grid node is assigned wholly to its Gauss-map facet and the node
//      values are summed against the grid weights.
template <typename F>
std::vector<double> cell_integrals_2d(const SymmetricPolytope& P, F&& integrand,
                                      int panel_order = 16) {
    const int f = P.facet_count();
    const double max_panel = std::numbers::pi / 16.0;
    Quadrature1D gl = gauss_legendre(panel_order);
    std::vector<double> sums(f, 0.0);
    for (int j = 0; j < f; ++j) {
        if (P.cell_width[j] <= 0.0) continue;
        int panels = std::max(1, static_cast<int>(std::ceil(P.cell_width[j] / max_panel)));
        double w = P.cell_width[j] / panels;
        std::vector<double> terms;
        terms.reserve(static_cast<std::size_t>(panels) * panel_order);
        for (int s = 0; s < panels; ++s) {
            double mid = P.cell_lo[j] + (s + 0.5) * w;
            for (int k = 0; k < panel_order; ++k) {
                double theta = mid + 0.5 * w * gl.nodes[k];
                terms.push_back(0.5 * w * gl.weights[k] * integrand(unit_from_angle(theta)));
            }
        }
        sums[j] = pairwise_sum(terms);
    }
    return sums;
}

inline std::vector<double> cell_sums_lumped(const SymmetricPolytope& P,
                                            const SphericalGrid& grid,
                                            const std::vector<double>& node_values) {
    const int f = P.facet_count();
    std::vector<double> sums(f, 0.0);
    std::vector<std::vector<double>> terms(f);
    for (int i = 0; i < grid.size(); ++i) {
        int j = radial_gauss_map(P, grid.nodes[i]);
        terms[j].push_back(grid.weights[i] * node_values[i]);
    }
    for (int j = 0; j < f; ++j) sums[j] = pairwise_sum(terms[j]);
    return sums;
}

// dispatch: callable integrand (usable anywhere) + its node samples
template <typename F>
std::vector<double> cell_sums(const SymmetricPolytope& P, const SphericalGrid& grid,
                              const std::vector<double>& node_values, F&& integrand) {
    if (grid.dim == 2) return cell_integrals_2d(P, integrand);
    return cell_sums_lumped(P, grid, node_values);
}

inline DiscreteSphericalMeasure atoms_from_cells(const SymmetricPolytope& P,
                                                 std::vector<double> cell_values) {
    DiscreteSphericalMeasure mu;
    mu.dim = P.dim;
    mu.even = true;
    mu.positions = P.normals;
    mu.weights = std::move(cell_values);
    mu.antipode = P.antipode;
    return mu;
}

}  // namespace detail

enum class IpMeasureRoute { direct, transform };

struct IpMeasureResult {
    DiscreteSphericalMeasure measure;
    StarBody lp_body;        // I_p P
    StarBody iterated_body;  // I_p^2 P (direct route only; empty grid otherwise)
    double lp_volume = 0.0;  // V(I_p P)
};

namespace detail {

// shared cell stage: atoms from an integrand available both at nodes and as
// a callable
template <typename F>
DiscreteSphericalMeasure ip_atoms(const SymmetricPolytope& P, const SphericalGrid& grid,
                                  const std::vector<double>& node_values, F&& integrand,
                                  double prefactor) {
    std::vector<double> cells = cell_sums(P, grid, node_values, integrand);
    for (double& c : cells) c *= prefactor;
    return atoms_from_cells(P, std::move(cells));
}

}  // namespace detail

// Direct route (the iterated-body form):
//   atom(v_j) = (n-p)/|p| int_{cell j} rho_P^{n-p} rho_{I_p^2 P}^p dv
inline IpMeasureResult ip_measure(const SymmetricPolytope& P, const LpBodyParams& prm,
                                  const SphericalGrid& grid, const LpBodyOptions& opts = {}) {
    detail::warn_conditioning(prm, opts, "ip_measure");
    const int n = prm.dim;
    const double p = prm.p;
    IpMeasureResult res;
    res.lp_body = lp_intersection_body(P, prm, grid, opts);
    res.iterated_body = lp_intersection_body(res.lp_body, prm, opts);
    res.lp_volume = volume_star(res.lp_body);
    std::vector<double> vals(grid.nodes.size());
    for (int i = 0; i < grid.size(); ++i) {
        double rho = radial_of_polytope(P, grid.nodes[i]);
        vals[i] = std::pow(rho, n - p) * std::exp(p * res.iterated_body.log_radial[i]);
    }
    auto integrand = [&](const Vec& u) {
        return std::pow(radial_of_polytope(P, u), n - p) *
               std::exp(p * res.iterated_body.interp(u));
    };
    res.measure = detail::ip_atoms(P, grid, vals, integrand, (n - p) / std::abs(p));
    return res;
}

// Transform route (the defining form):
//   atom(v_j) = (1-p)/(2|p|) int_{cell j} rho_P^{n-p} T_{-p} rho_{I_p P}^{n-p} dv
inline IpMeasureResult ip_measure_via_transform(const SymmetricPolytope& P,
                                                const LpBodyParams& prm,
                                                const SphericalGrid& grid,
                                                const LpBodyOptions& opts = {}) {
    detail::warn_conditioning(prm, opts, "ip_measure_via_transform");
    const int n = prm.dim;
    const double p = prm.p;
    IpMeasureResult res;
    res.lp_body = lp_intersection_body(P, prm, grid, opts);
    res.lp_volume = volume_star(res.lp_body);
    std::vector<double> pw(grid.nodes.size());
    for (std::size_t i = 0; i < pw.size(); ++i)
        pw[i] = std::exp((n - p) * res.lp_body.log_radial[i]);
    TransformResult t = p_cosine_transform({grid, std::move(pw)}, -p, opts.axis);
    EvenInterpolant t_interp(grid, t.values.values);
    std::vector<double> vals(grid.nodes.size());
    for (int i = 0; i < grid.size(); ++i) {
        double rho = radial_of_polytope(P, grid.nodes[i]);
        vals[i] = std::pow(rho, n - p) * t.values.values[i];
    }
    auto integrand = [&](const Vec& u) {
        return std::pow(radial_of_polytope(P, u), n - p) * t_interp(u);
    };
    res.measure = detail::ip_atoms(P, grid, vals, integrand, (1.0 - p) / (2.0 * std::abs(p)));
    return res;
}

// Cone-volume measure; exact route from facet geometry, with a quadrature
// route retained for cross-checks.
inline DiscreteSphericalMeasure cone_volume_measure(const SymmetricPolytope& P) {
    std::vector<double> w(P.normals.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = P.support[j] * P.facet_measure[j] / P.dim;
    return detail::atoms_from_cells(P, std::move(w));
}

inline DiscreteSphericalMeasure cone_volume_measure_quadrature(const SymmetricPolytope& P,
                                                               const SphericalGrid& grid) {
    std::vector<double> vals(grid.nodes.size());
    for (int i = 0; i < grid.size(); ++i)
        vals[i] = std::pow(radial_of_polytope(P, grid.nodes[i]), grid.dim);
    auto integrand = [&](const Vec& u) {
        return std::pow(radial_of_polytope(P, u), grid.dim);
    };
    return detail::ip_atoms(P, grid, vals, integrand, 1.0 / grid.dim);
}

// Pushforward by a unimodular map: atom (u, w) -> (<phi u>, w)
inline DiscreteSphericalMeasure measure_affine_image(const DiscreteSphericalMeasure& mu,
                                                     const Mat& phi) {
    require_unimodular(phi, /*allow_reflection=*/true);
    DiscreteSphericalMeasure out = mu;
    for (auto& u : out.positions) u = normalized(phi.apply(u));
    return out;
}

enum class ConcentrationBound { input, ip };

struct ConcentrationReport {
    double ratio;
    double bound;
    bool strict;
    int subspace_dim;
};

// Mass fraction carried by atoms within angular_tol of the subspace spanned
// by `basis`, against dim(xi)/n (inputs) or dim(xi)/(n-p) (I_p outputs).
inline ConcentrationReport subspace_concentration(const DiscreteSphericalMeasure& mu,
                                                  std::vector<Vec> basis, double angular_tol,
                                                  ConcentrationBound kind,
                                                  double p = 0.0) {
    // orthonormalize and drop dependent vectors
    std::vector<Vec> q;
    for (Vec v : basis) {
        for (const Vec& b : q) v = v - b * dot(v, b);
        if (norm(v) > 1e-12) q.push_back(normalized(v));
    }
    int k = static_cast<int>(q.size());
    if (k <= 0 || k >= mu.dim)
        throw std::invalid_argument("subspace dimension must satisfy 0 < dim < n");
    std::vector<double> inside;
    for (int i = 0; i < mu.size(); ++i) {
        Vec r = mu.positions[i];
        for (const Vec& b : q) r = r - b * dot(mu.positions[i], b);
        if (norm(r) <= angular_tol) inside.push_back(mu.weights[i]);
    }
    ConcentrationReport rep;
    rep.subspace_dim = k;
    rep.ratio = inside.empty() ? 0.0 : pairwise_sum(inside) / mu.total();
    if (kind == ConcentrationBound::input) {
        rep.bound = static_cast<double>(k) / mu.dim;
    } else {
        LpBodyParams check(p, mu.dim);  // validates p
        rep.bound = static_cast<double>(k) / (mu.dim - p);
    }
    rep.strict = rep.ratio < rep.bound;
    return rep;
}

// Total mass through the solid-integral form: radial-shell quadrature of
// (n-p)^2/|p| int_K rho_{I_p^2 K}^p(x) dx, independent of the per-cell path.
inline double ip_total_mass_solid(const SymmetricPolytope& P, const StarBody& iterated,
                                  const LpBodyParams& prm, const SphericalGrid& grid,
                                  int shells = 64) {
    const int n = prm.dim;
    const double p = prm.p;
    Quadrature1D gl = gauss_legendre(shells);
    std::vector<double> terms(grid.nodes.size());
    for (int i = 0; i < grid.size(); ++i) {
        double rK = radial_of_polytope(P, grid.nodes[i]);
        double rho2p = std::exp(p * iterated.log_radial[i]);
        double inner = 0.0;
        for (int s = 0; s < shells; ++s) {
            double r = 0.5 * rK * (1.0 + gl.nodes[s]);
            inner += 0.5 * rK * gl.weights[s] * std::pow(r, n - p - 1.0);
        }
        terms[i] = grid.weights[i] * rho2p * inner;
    }
    return (n - p) * (n - p) / std::abs(p) * pairwise_sum(terms);
}

}  // namespace idcm
