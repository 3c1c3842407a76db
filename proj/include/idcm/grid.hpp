#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "idcm/quadrature.hpp"
#include "idcm/summation.hpp"
#include "idcm/vec.hpp"

namespace idcm {

// Antipodally closed quadrature grid on S^{n-1}, n in {2,3}.
//
// n=2: `resolution` uniformly spaced angles with a half-step offset, weights
//      2*pi/N each.
// n=3: Gauss-Legendre nodes in the polar cosine times 2*resolution uniform
//      longitudes with a half-step offset.
//
// The second half of the node list is built by negating the first half, so
// the antipode map sends u to -u bit-exactly.
struct SphericalGrid {
    int dim = 2;
    int resolution = 0;
    std::string rule;
    std::vector<Vec> nodes;
    std::vector<double> weights;
    std::vector<int> antipode;

    // n=3 layout data (node index = polar * n_longitude + longitude)
    int n_polar = 0;
    int n_longitude = 0;
    std::vector<double> polar_cosines;  // ascending, length n_polar

    double surface_measure() const {
        return dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    }
    int size() const { return static_cast<int>(nodes.size()); }
};

inline SphericalGrid build_grid(int dim, int resolution) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("grid dimension must be 2 or 3");
    if (resolution <= 0 || resolution % 2 != 0)
        throw std::invalid_argument("grid resolution must be a positive even integer");

    SphericalGrid g;
    g.dim = dim;
    g.resolution = resolution;
    const double pi = std::numbers::pi;

    if (dim == 2) {
        g.rule = "uniform-offset";
        int n = resolution;
        g.nodes.resize(n);
        g.weights.assign(n, 2.0 * pi / n);
        g.antipode.resize(n);
        int half = n / 2;
        for (int j = 0; j < half; ++j) {
            double theta = pi * (2.0 * j + 1.0) / n;
            g.nodes[j] = unit_from_angle(theta);
        }
        for (int j = half; j < n; ++j) g.nodes[j] = -g.nodes[j - half];
        for (int j = 0; j < n; ++j) g.antipode[j] = (j + half) % n;
        return g;
    }

    g.rule = "gauss-latlong";
    int np = resolution;       // polar nodes
    int nl = 2 * resolution;   // longitudes
    g.n_polar = np;
    g.n_longitude = nl;
    Quadrature1D gl = gauss_legendre(np);

    // symmetrize the Legendre nodes so polar pairs negate exactly
    g.polar_cosines.resize(np);
    std::vector<double> pw(np);
    for (int i = 0; i < np / 2; ++i) {
        double t = 0.5 * (gl.nodes[np - 1 - i] - gl.nodes[i]);
        double w = 0.5 * (gl.weights[np - 1 - i] + gl.weights[i]);
        g.polar_cosines[np - 1 - i] = t;
        g.polar_cosines[i] = -t;
        pw[i] = pw[np - 1 - i] = w;
    }

    g.nodes.resize(static_cast<std::size_t>(np) * nl);
    g.weights.resize(g.nodes.size());
    g.antipode.resize(g.nodes.size());
    double wl = 2.0 * pi / nl;
    for (int i = np / 2; i < np; ++i) {  // upper hemisphere (t > 0) computed directly
        double t = g.polar_cosines[i];
        double s = std::sqrt(1.0 - t * t);
        for (int j = 0; j < nl; ++j) {
            double phi = 2.0 * pi * (j + 0.5) / nl;
            g.nodes[static_cast<std::size_t>(i) * nl + j] =
                Vec{s * std::cos(phi), s * std::sin(phi), t};
        }
    }
    for (int i = 0; i < np / 2; ++i) {  // mirror by exact negation
        for (int j = 0; j < nl; ++j) {
            int jm = (j + nl / 2) % nl;
            g.nodes[static_cast<std::size_t>(i) * nl + j] =
                -g.nodes[static_cast<std::size_t>(np - 1 - i) * nl + jm];
        }
    }
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nl; ++j) {
            std::size_t k = static_cast<std::size_t>(i) * nl + j;
            g.weights[k] = pw[i] * wl;
            g.antipode[k] = (np - 1 - i) * nl + (j + nl / 2) % nl;
        }
    return g;
}

// Even function sampled on a grid; values(i) must equal values(antipode(i)).
struct EvenSphericalFunction {
    const SphericalGrid* grid = nullptr;
    std::vector<double> values;

    EvenSphericalFunction() = default;
    EvenSphericalFunction(const SphericalGrid& g, std::vector<double> v)
        : grid(&g), values(std::move(v)) {
        if (values.size() != g.nodes.size())
            throw std::invalid_argument("sample count does not match grid");
    }
    static EvenSphericalFunction constant(const SphericalGrid& g, double c) {
        return {g, std::vector<double>(g.nodes.size(), c)};
    }
    template <typename F>
    static EvenSphericalFunction sample(const SphericalGrid& g, F&& f) {
        std::vector<double> v(g.nodes.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.nodes[i]);
        return {g, std::move(v)};
    }
};

inline double integrate(const EvenSphericalFunction& f) {
    const SphericalGrid& g = *f.grid;
    std::vector<double> terms(f.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = g.weights[i] * f.values[i];
    return pairwise_sum(terms);
}

}  // namespace idcm
