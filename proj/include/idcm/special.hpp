#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace idcm {

// Beta function through log-gamma differences; B(1-p, n) for p -> 1^- is huge
// and cancellation-prone if formed from three gamma values directly.
inline double log_beta(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::domain_error("log_beta requires positive arguments");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

// volume of the k-dimensional unit ball
inline double unit_ball_volume(int k) {
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

// surface measure of S^{n-1}: n * omega_n
inline double sphere_surface(int n) { return n * unit_ball_volume(n); }

}  // namespace idcm
