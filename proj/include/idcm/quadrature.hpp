#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "idcm/special.hpp"

namespace idcm {

struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1,1], a,b > -1,
// by Golub-Welsch on the three-term recurrence.  Memoized: the eigensolve
// dwarfs any single quadrature pass and the same few rules recur per pole.
inline Quadrature1D gauss_jacobi(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("quadrature order must be >= 1");
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("jacobi exponents must exceed -1");

    static std::mutex mtx;
    static std::map<std::tuple<int, double, double>, Quadrature1D> cache;
    {
        std::scoped_lock lock(mtx);
        auto it = cache.find({m, a, b});
        if (it != cache.end()) return it->second;
    }

    Eigen::VectorXd diag(m), sub(m > 1 ? m - 1 : 1);
    double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < m; ++k) {
        double t = 2.0 * k + ab;
        diag[k] = (b * b - a * a) / (t * (t + 2.0));
    }
    if (m > 1) {
        // k = 1 written separately: the generic formula is 0/0 when a+b = -1
        sub[0] = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
        for (int k = 2; k < m; ++k) {
            double t = 2.0 * k + ab;
            double bk = 4.0 * k * (k + a) * (k + b) * (k + ab) /
                        (t * t * (t + 1.0) * (t - 1.0));
            sub[k - 1] = std::sqrt(bk);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(m - 1, 0)));
    if (es.info() != Eigen::Success) throw std::runtime_error("jacobi eigensolve failed");

    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));
    Quadrature1D q;
    q.nodes.resize(m);
    q.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        q.nodes[i] = es.eigenvalues()[i];
        double v0 = es.eigenvectors()(0, i);
        q.weights[i] = mu0 * v0 * v0;
    }
    std::scoped_lock lock(mtx);
    cache.emplace(std::make_tuple(m, a, b), q);
    return q;
}

inline Quadrature1D gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

// Gauss-Legendre on [lo, hi]
inline Quadrature1D gauss_legendre(int m, double lo, double hi) {
    Quadrature1D q = gauss_legendre(m);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < m; ++i) {
        q.nodes[i] = mid + half * q.nodes[i];
        q.weights[i] *= half;
    }
    return q;
}

// Rule for int_{-1}^{1} |t|^alpha (1 - t^2)^ring_power g(t) dt with even g:
// returns positive nodes t_k and weights w_k such that the integral equals
// sum_k w_k (g(t_k) + g(-t_k)).  The algebraic |t|^alpha singularity is folded
// into the weight through the substitution s = t^2, which turns the integral
// into a Jacobi-weighted one on [0,1].
struct SymmetricKernelRule {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // per +-t pair
};

inline SymmetricKernelRule symmetric_kernel_rule(int m, double alpha, double ring_power) {
    if (alpha <= -1.0) throw std::invalid_argument("kernel exponent must exceed -1");

    // the eigensolve behind the rule is far more expensive than any single
    // quadrature pass, and the same few rules recur across every pole
    static std::mutex mtx;
    static std::map<std::tuple<int, double, double>, SymmetricKernelRule> cache;
    {
        std::scoped_lock lock(mtx);
        auto it = cache.find({m, alpha, ring_power});
        if (it != cache.end()) return it->second;
    }

    double a = ring_power;             // (1-s)^a
    double b = 0.5 * (alpha - 1.0);    // s^b
    Quadrature1D gj = gauss_jacobi(m, a, b);
    SymmetricKernelRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    double scale = std::pow(2.0, -(a + b + 1.0));
    for (int i = 0; i < m; ++i) {
        double s = 0.5 * (1.0 + gj.nodes[i]);
        r.nodes[i] = std::sqrt(s);
        r.weights[i] = 0.5 * scale * gj.weights[i];
    }
    std::scoped_lock lock(mtx);
    cache.emplace(std::make_tuple(m, alpha, ring_power), r);
    return r;
}

// d/dalpha at alpha=0 of int |t|^alpha (1-t^2)^ring_power dt; the analytic
// moment of ln|t| used to peel the logarithmic singularity off smooth factors.
inline double log_kernel_moment(double ring_power) {
    // (1/2) B(1/2, ring_power+1) [psi(1/2) - psi(ring_power + 3/2)]
    // only the two ring powers that occur on S^1 and S^2 are needed
    if (std::abs(ring_power + 0.5) < 1e-14) {
        return -std::acos(-1.0) * std::log(2.0);  // n = 2
    }
    if (std::abs(ring_power) < 1e-14) {
        return -2.0;  // n = 3
    }
    throw std::invalid_argument("log kernel moment available for ring powers -1/2 and 0 only");
}

}  // namespace idcm
