#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "idcm/grid.hpp"
#include "idcm/interp.hpp"
#include "idcm/summation.hpp"
#include "idcm/vec.hpp"

namespace idcm {

// Origin-symmetric convex polytope, stored as paired facet normals with
// support values.  Construction enumerates vertices, flags inactive facets
// (those whose support plane misses the body) and caches facet measures, so
// every instance is immutable and self-consistent afterwards.
struct SymmetricPolytope {
    int dim = 2;
    std::vector<Vec> normals;      // unit, closed under negation
    std::vector<double> support;   // h_i > 0, h(v) = h(-v)
    std::vector<int> antipode;     // facet pairing
    std::vector<bool> active;
    std::vector<Vec> vertices;
    std::vector<double> facet_measure;  // edge length (n=2) / facet area (n=3); 0 if inactive

    // n=2 only: reverse-image cone of facet i is the ccw angular arc
    // [cell_lo[i], cell_lo[i] + cell_width[i]); width 0 for inactive facets.
    std::vector<double> cell_lo;
    std::vector<double> cell_width;

    int facet_count() const { return static_cast<int>(normals.size()); }
    bool all_active() const {
        return std::all_of(active.begin(), active.end(), [](bool b) { return b; });
    }
    double volume() const {  // exact cone decomposition over active facets
        std::vector<double> cones(normals.size(), 0.0);
        for (std::size_t i = 0; i < normals.size(); ++i)
            cones[i] = support[i] * facet_measure[i] / dim;
        return pairwise_sum(cones);
    }
};

namespace detail {

inline constexpr double kGeomTol = 1e-9;

inline void pair_antipodes(std::vector<Vec>& normals, std::vector<double>& support,
                           std::vector<int>& antipode) {
    const std::size_t f = normals.size();
    antipode.assign(f, -1);
    for (std::size_t i = 0; i < f; ++i) {
        if (antipode[i] >= 0) continue;
        std::size_t match = f;
        for (std::size_t j = i + 1; j < f; ++j) {
            if (antipode[j] >= 0) continue;
            if (norm(normals[i] + normals[j]) < 1e-9) {
                match = j;
                break;
            }
        }
        if (match == f) throw std::invalid_argument("facet normals are not closed under negation");
        if (std::abs(support[i] - support[match]) > 1e-9 * std::max(support[i], support[match]))
            throw std::invalid_argument("support values differ on an antipodal normal pair");
        normals[match] = -normals[i];
        support[match] = support[i];
        antipode[i] = static_cast<int>(match);
        antipode[match] = static_cast<int>(i);
    }
}

inline bool spans_dimension(const std::vector<Vec>& normals, int dim) {
    // symmetric sets positively span iff they span linearly
    std::vector<Vec> basis;
    for (const Vec& v : normals) {
        Vec r = v;
        for (const Vec& b : basis) r = r - b * dot(r, b);
        if (norm(r) > 1e-9) basis.push_back(normalized(r));
        if (static_cast<int>(basis.size()) == dim) return true;
    }
    return false;
}

// Andrew's monotone chain; returns indices of hull vertices in ccw order,
// collinear points dropped.
inline std::vector<int> convex_hull_2d(const std::vector<Vec>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    auto turn = [&](int a, int b, int c) {
        return (pts[b].x - pts[a].x) * (pts[c].y - pts[a].y) -
               (pts[b].y - pts[a].y) * (pts[c].x - pts[a].x);
    };
    std::vector<int> hull(2 * n);
    int k = 0;
    for (int ii = 0; ii < n; ++ii) {
        int i = idx[ii];
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], i) <= 1e-14) --k;
        hull[k++] = i;
    }
    int lower = k + 1;
    for (int ii = n - 2; ii >= 0; --ii) {
        int i = idx[ii];
        while (k >= lower && turn(hull[k - 2], hull[k - 1], i) <= 1e-14) --k;
        hull[k++] = i;
    }
    hull.resize(k - 1);
    return hull;
}

inline void build_polygon(SymmetricPolytope& p) {
    const int f = p.facet_count();
    std::vector<Vec> q(f);
    for (int i = 0; i < f; ++i) q[i] = p.normals[i] / p.support[i];
    std::vector<int> hull = convex_hull_2d(q);  // facets that carry an edge, ccw
    const int m = static_cast<int>(hull.size());
    if (m < 3) throw std::invalid_argument("polygon is degenerate");

    // vertex between consecutive hull facets a, b: x . v_a = h_a, x . v_b = h_b
    std::vector<Vec> verts(m);
    for (int k = 0; k < m; ++k) {
        int a = hull[k], b = hull[(k + 1) % m];
        const Vec &va = p.normals[a], &vb = p.normals[b];
        double det = va.x * vb.y - va.y * vb.x;
        if (std::abs(det) < 1e-13) throw std::invalid_argument("adjacent facet normals parallel");
        verts[k] = {(p.support[a] * vb.y - p.support[b] * va.y) / det,
                    (va.x * p.support[b] - vb.x * p.support[a]) / det, 0.0};
    }
    p.vertices = verts;

    p.active.assign(f, false);
    p.facet_measure.assign(f, 0.0);
    p.cell_lo.assign(f, 0.0);
    p.cell_width.assign(f, 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < m; ++k) {
        int b = hull[(k + 1) % m];
        const Vec &v0 = verts[k], &v1 = verts[(k + 1) % m];
        p.active[b] = true;
        p.facet_measure[b] = norm(v1 - v0);
        double lo = angle_of(v0);
        double w = angle_of(v1) - lo;
        if (w < 0) w += two_pi;
        p.cell_lo[b] = lo;
        p.cell_width[b] = w;
    }
    // support-attainment may also hold for facets touching at a single vertex
    for (int i = 0; i < f; ++i) {
        if (p.active[i]) continue;
        for (const Vec& x : verts)
            if (dot(x, p.normals[i]) >= p.support[i] * (1.0 - kGeomTol)) {
                p.active[i] = true;
                break;
            }
    }
}

inline void build_polyhedron(SymmetricPolytope& p) {
    const int f = p.facet_count();
    std::vector<Vec> verts;
    for (int i = 0; i < f; ++i)
        for (int j = i + 1; j < f; ++j)
            for (int k = j + 1; k < f; ++k) {
                Mat m;
                m.a = {{{p.normals[i].x, p.normals[i].y, p.normals[i].z},
                        {p.normals[j].x, p.normals[j].y, p.normals[j].z},
                        {p.normals[k].x, p.normals[k].y, p.normals[k].z}}};
                if (std::abs(m.det()) < 1e-9) continue;
                Vec x = m.inverse().apply({p.support[i], p.support[j], p.support[k]});
                bool inside = true;
                for (int l = 0; l < f && inside; ++l)
                    inside = dot(x, p.normals[l]) <= p.support[l] + 1e-9;
                if (!inside) continue;
                bool dup = false;
                for (const Vec& v : verts)
                    if (norm(v - x) < 1e-8) {
                        dup = true;
                        break;
                    }
                if (!dup) verts.push_back(x);
            }
    if (verts.size() < 4) throw std::invalid_argument("polyhedron is degenerate");
    p.vertices = verts;

    p.active.assign(f, false);
    p.facet_measure.assign(f, 0.0);
    for (int i = 0; i < f; ++i) {
        std::vector<Vec> on;
        for (const Vec& x : verts)
            if (dot(x, p.normals[i]) >= p.support[i] - 1e-8) on.push_back(x);
        if (on.empty()) continue;
        p.active[i] = true;
        if (on.size() < 3) continue;
        // order around the facet centroid and take the polygon area
        Vec c{0, 0, 0};
        for (const Vec& x : on) c = c + x;
        c = c / static_cast<double>(on.size());
        Vec e1 = normalized(on[0] - c);
        Vec e2 = normalized(cross(p.normals[i], e1));
        std::sort(on.begin(), on.end(), [&](const Vec& a, const Vec& b) {
            return std::atan2(dot(a - c, e2), dot(a - c, e1)) <
                   std::atan2(dot(b - c, e2), dot(b - c, e1));
        });
        double area = 0.0;
        for (std::size_t k = 0; k < on.size(); ++k) {
            const Vec &a = on[k] - c, &b = on[(k + 1) % on.size()] - c;
            area += 0.5 * dot(cross(a, b), p.normals[i]);
        }
        p.facet_measure[i] = std::abs(area);
    }
}

}  // namespace detail

// The Wulff shape [h]: intersection of the halfspaces {x . v_i <= h_i}.
// Facets whose plane misses the resulting body are retained but flagged
// inactive.
inline SymmetricPolytope wulff_shape(int dim, std::vector<Vec> normals,
                                     std::vector<double> support) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
    if (normals.size() != support.size() || normals.empty())
        throw std::invalid_argument("need one support value per facet normal");
    for (std::size_t i = 0; i < normals.size(); ++i) {
        double n = norm(normals[i]);
        if (n < 1e-12) throw std::invalid_argument("zero facet normal");
        if (dim == 2 && std::abs(normals[i].z) > 1e-12)
            throw std::invalid_argument("planar normal has a z component");
        normals[i] = normals[i] / n;
        support[i] *= n;  // same halfspace, unit normal
        if (!(support[i] > 0.0)) throw std::invalid_argument("support values must be positive");
    }
    if (!detail::spans_dimension(normals, dim))
        throw std::invalid_argument("facet normals do not positively span: unbounded Wulff shape");

    SymmetricPolytope p;
    p.dim = dim;
    p.normals = std::move(normals);
    p.support = std::move(support);
    detail::pair_antipodes(p.normals, p.support, p.antipode);
    if (dim == 2) detail::build_polygon(p);
    else detail::build_polyhedron(p);
    return p;
}

inline SymmetricPolytope make_polytope(int dim, std::vector<Vec> normals,
                                       std::vector<double> support) {
    return wulff_shape(dim, std::move(normals), std::move(support));
}

// rho_P(u) = min { h_i / (u . v_i) : u . v_i > 0 }
inline double radial_of_polytope(const SymmetricPolytope& p, const Vec& u) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.facet_count(); ++i) {
        double d = dot(u, p.normals[i]);
        if (d > 1e-14) best = std::min(best, p.support[i] / d);
    }
    if (!std::isfinite(best))
        throw std::runtime_error("radial function unbounded along the given direction");
    return best;
}

// argmax_i (u . v_i) / h_i; ties broken by lowest facet index
inline int radial_gauss_map(const SymmetricPolytope& p, const Vec& u) {
    int best = -1;
    double bestval = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.facet_count(); ++i) {
        double v = dot(u, p.normals[i]) / p.support[i];
        if (v > bestval) {
            bestval = v;
            best = i;
        }
    }
    return best;
}

inline std::vector<int> reverse_image_partition(const SymmetricPolytope& p,
                                                const SphericalGrid& grid) {
    std::vector<int> cell(grid.size());
    for (int i = 0; i < grid.size(); ++i) cell[i] = radial_gauss_map(p, grid.nodes[i]);
    return cell;
}

// Star body: strictly positive even radial samples plus an interpolant of
// log(rho), which keeps interpolated values positive.
struct StarBody {
    const SphericalGrid* grid = nullptr;
    std::vector<double> log_radial;
    EvenInterpolant interp;

    double radial(const Vec& u) const { return std::exp(interp(u)); }
    double radial_at_node(int i) const { return std::exp(log_radial[i]); }
    EvenSphericalFunction radial_samples() const {
        std::vector<double> v(log_radial.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(log_radial[i]);
        return {*grid, std::move(v)};
    }
};

inline StarBody star_from_radial(const SphericalGrid& grid, const std::vector<double>& rho) {
    if (rho.size() != grid.nodes.size())
        throw std::invalid_argument("sample count does not match grid");
    StarBody s;
    s.grid = &grid;
    s.log_radial.resize(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (!(rho[i] > 0.0)) throw std::invalid_argument("radial samples must be positive");
        s.log_radial[i] = std::log(rho[i]);
    }
    s.interp = EvenInterpolant(grid, s.log_radial);
    return s;
}

inline StarBody star_of_polytope(const SymmetricPolytope& p, const SphericalGrid& grid) {
    std::vector<double> rho(grid.nodes.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = radial_of_polytope(p, grid.nodes[i]);
    return star_from_radial(grid, rho);
}

// V(S) = (1/n) int rho^n
inline double volume_star(const StarBody& s) {
    const SphericalGrid& g = *s.grid;
    std::vector<double> terms(s.log_radial.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = g.weights[i] * std::exp(g.dim * s.log_radial[i]);
    return pairwise_sum(terms) / g.dim;
}

// h_{phi K}(v) = |phi^t v| h_K(<phi^t v>): facets map to <phi^{-t} v_i> with
// supports h_i / |phi^{-t} v_i|.
inline SymmetricPolytope affine_apply(const SymmetricPolytope& p, const Mat& phi) {
    require_unimodular(phi);
    Mat phi_mt = phi.inverse().transpose();
    std::vector<Vec> normals(p.normals.size());
    std::vector<double> support(p.support.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
        Vec w = phi_mt.apply(p.normals[i]);
        double n = norm(w);
        normals[i] = w / n;
        support[i] = p.support[i] / n;
    }
    return wulff_shape(p.dim, std::move(normals), std::move(support));
}

// rho_{phi K}(u) = rho_K(<phi^{-1} u>) / |phi^{-1} u|, resampled on the grid
inline StarBody affine_apply(const StarBody& s, const Mat& phi) {
    require_unimodular(phi);
    Mat inv = phi.inverse();
    const SphericalGrid& g = *s.grid;
    std::vector<double> rho(g.nodes.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        Vec y = inv.apply(g.nodes[i]);
        double ny = norm(y);
        rho[i] = s.radial(y / ny) / ny;
    }
    return star_from_radial(g, rho);
}

// Polar body: normals are the vertex directions, supports their reciprocal
// lengths; satisfies rho_{K*} = 1 / h_K.
inline SymmetricPolytope polar_body(const SymmetricPolytope& p) {
    std::vector<Vec> normals;
    std::vector<double> support;
    for (const Vec& x : p.vertices) {
        double r = norm(x);
        normals.push_back(x / r);
        support.push_back(1.0 / r);
    }
    return wulff_shape(p.dim, std::move(normals), std::move(support));
}

// support function of the polytope (max over vertices)
inline double support_of(const SymmetricPolytope& p, const Vec& u) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& x : p.vertices) best = std::max(best, dot(x, u));
    return best;
}

}  // namespace idcm
