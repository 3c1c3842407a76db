#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "idcm/bodies.hpp"
#include "idcm/grid.hpp"
#include "idcm/parallel.hpp"
#include "idcm/special.hpp"
#include "idcm/summation.hpp"
#include "idcm/transforms.hpp"

namespace idcm {

struct LpBodyParams {
    double p;
    int dim;

    LpBodyParams(double p_, int dim_) : p(p_), dim(dim_) {
        if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
        if (p == 0.0 || p >= 1.0)
            throw std::invalid_argument("p must lie in (-inf,0) or (0,1)");
    }
    // exponent 1/p amplifies quadrature error by 1/|p|
    bool poorly_conditioned() const { return std::abs(p) < 0.05; }
};

struct LpBodyOptions {
    AxisQuadratureOptions axis{};
    std::vector<std::string>* warnings = nullptr;
};

namespace detail {

inline void warn_conditioning(const LpBodyParams& prm, const LpBodyOptions& opts,
                              const char* where) {
    if (!prm.poorly_conditioned()) return;
    if (opts.warnings)
        opts.warnings->push_back(std::string(where) + ": |p| = " + std::to_string(std::abs(prm.p)) +
                                 " < 0.05, radial values carry amplified quadrature error");
}

// Circulant resampling of the n=2 trig interpolant: out[i] = p(psi_i + delta)
// for all M half-grid angles at once.  The barycentric kernel depends only on
// the index difference, so one kernel row serves every pole.
inline void trig_shift_kernel(int m, double delta, std::vector<double>& row) {
    const double pi = std::numbers::pi;
    row.resize(m);
    for (int d = 0; d < m; ++d) {
        double x = 2.0 * (pi * d / m + delta);
        double hd = 0.5 * x;
        double s = std::sin(hd);
        if (std::abs(s) < 1e-11) {
            row[d] = 1.0;  // exact node hit
            continue;
        }
        row[d] = std::sin(m * hd) * std::cos(hd) / (s * m);
    }
}

inline void circulant_apply(const std::vector<double>& row, const std::vector<double>& samples,
                            std::vector<double>& out) {
    const int m = static_cast<int>(samples.size());
    out.assign(m, 0.0);
    for (int d = 0; d < m; ++d) {
        double c = row[d];
        if (c == 0.0) continue;
        for (int i = 0; i < m; ++i) out[i] += c * samples[(i - d + m) % m];
    }
}

// log rho_{I_p K} on the grid from an exact radial evaluator
template <typename RhoFn>
std::vector<double> lp_log_radial_eval(const SphericalGrid& grid, RhoFn&& rho,
                                       const LpBodyParams& prm, const LpBodyOptions& opts) {
    const int n = prm.dim;
    const double p = prm.p;
    const double alpha = -p;
    const double log_norm = std::log((1.0 - p) / (2.0 * (n - p)));
    std::vector<double> out(grid.nodes.size());

    if (is_even_integer(alpha)) {
        // polynomial kernel: plain all-pairs sum on the grid samples
        const int k = static_cast<int>(std::lround(alpha));
        std::vector<double> wr(grid.nodes.size());
        for (std::size_t j = 0; j < wr.size(); ++j)
            wr[j] = grid.weights[j] * std::pow(rho(grid.nodes[j]), n - p);
        parallel_for(grid.nodes.size(), [&](std::size_t i) {
            if (grid.antipode[i] < static_cast<int>(i)) return;
            std::vector<double> terms(wr.size());
            for (std::size_t j = 0; j < wr.size(); ++j)
                terms[j] = wr[j] * even_int_pow(dot(grid.nodes[i], grid.nodes[j]), k);
            out[i] = (log_norm + std::log(pairwise_sum(terms))) / p;
        });
    } else {
        parallel_for(grid.nodes.size(), [&](std::size_t i) {
            if (grid.antipode[i] < static_cast<int>(i)) return;
            double integral = singular_axis_quadrature(
                n, [&](const Vec& v) { return std::pow(rho(v), n - p); }, grid.nodes[i],
                alpha, opts.axis);
            out[i] = (log_norm + std::log(integral)) / p;
        });
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (grid.antipode[i] < static_cast<int>(i)) out[i] = out[grid.antipode[i]];
    return out;
}

// n=2 star-body fast path: the Gauss-Jacobi evaluation angles theta_i +- phi_k
// share offsets across poles, so each offset is one circulant pass over the
// log-radial samples.
inline std::vector<double> lp_log_radial_star2(const StarBody& body, const LpBodyParams& prm,
                                               const LpBodyOptions& opts) {
    const SphericalGrid& grid = *body.grid;
    const double p = prm.p;
    const int n = 2;
    const double log_norm = std::log((1.0 - p) / (2.0 * (n - p)));
    const int m = grid.resolution / 2;
    std::vector<double> half(body.log_radial.begin(), body.log_radial.begin() + m);

    SymmetricKernelRule rule =
        symmetric_kernel_rule(opts.axis.polar_order, -p, -0.5);
    std::vector<double> acc(m, 0.0);
    std::vector<double> row, shifted;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        double phi = std::acos(std::clamp(rule.nodes[k], -1.0, 1.0));
        for (double sign : {1.0, -1.0}) {
            trig_shift_kernel(m, sign * phi, row);
            circulant_apply(row, half, shifted);
            for (int i = 0; i < m; ++i)
                acc[i] += 2.0 * rule.weights[k] * std::exp((n - p) * shifted[i]);
        }
    }
    std::vector<double> out(grid.nodes.size());
    for (int i = 0; i < m; ++i) {
        out[i] = (log_norm + std::log(acc[i])) / p;
        out[i + m] = out[i];
    }
    return out;
}

}  // namespace detail

namespace detail {

// Semi-analytic polygon moment for n=2:
//   int_{S^1} rho_P(v)^{pw} |u . v|^{alpha} dv
// integrated arc by arc.  Inside the cone over one facet rho is smooth, so
// the circle is split at the exact vertex angles plus the two kernel zeros
// u^perp; panels touching a kernel zero use a Gauss-Jacobi rule graded like
// delta^alpha at that endpoint, the rest use Gauss-Legendre.  The result is a
// smooth function of the supports (the moving vertex breakpoints cancel
// because the integrand is continuous across them), which the solver's line
// search depends on.  pair_sums, when given, accumulates each arc's
// contribution on its facet pair: exactly the integrand split behind the
// variational measure.
struct PolygonMomentRule {
    int regular_order = 20;
    int singular_order = 20;
};

inline double polygon_moment(const SymmetricPolytope& P, const Vec& pole, double alpha,
                             double pw, const std::vector<int>* facet_pair = nullptr,
                             std::vector<double>* pair_sums = nullptr,
                             const PolygonMomentRule& rule = {}) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double theta_u = angle_of(pole);
    const bool singular_kernel = !is_even_integer(alpha);

    struct Break {
        double angle;
        bool singular;
    };
    std::vector<Break> brk;
    for (int j = 0; j < P.facet_count(); ++j)
        if (P.cell_width[j] > 0.0)
            brk.push_back({std::fmod(P.cell_lo[j], two_pi), false});
    if (singular_kernel) {
        brk.push_back({std::fmod(theta_u + 0.5 * std::numbers::pi, two_pi), true});
        brk.push_back({std::fmod(theta_u + 1.5 * std::numbers::pi, two_pi), true});
    }
    for (auto& b : brk)
        if (b.angle < 0) b.angle += two_pi;
    std::sort(brk.begin(), brk.end(), [](const Break& a, const Break& b) {
        return a.angle < b.angle;
    });
    // merge near-coincident breakpoints, keeping the singular flag
    std::vector<Break> merged;
    for (const auto& b : brk) {
        if (!merged.empty() && b.angle - merged.back().angle < 1e-12)
            merged.back().singular |= b.singular;
        else
            merged.push_back(b);
    }
    if (merged.size() < 2) return 0.0;

    Quadrature1D gl = gauss_legendre(rule.regular_order);
    Quadrature1D gj;
    if (singular_kernel) gj = gauss_jacobi(rule.singular_order, 0.0, alpha);

    auto facet_at = [&](double theta) { return radial_gauss_map(P, unit_from_angle(theta)); };
    auto rho_pow = [&](double theta) {
        return std::pow(radial_of_polytope(P, unit_from_angle(theta)), pw);
    };
    auto kernel = [&](double theta) {
        return std::pow(std::abs(std::cos(theta - theta_u)), alpha);
    };
    // signed offset to the nearest kernel zero (theta_u +- pi/2 mod pi)
    auto zero_offset = [&](double theta) {
        double d = std::remainder(theta - theta_u - 0.5 * std::numbers::pi, std::numbers::pi);
        return d;
    };

    double total = 0.0;
    const std::size_t nb = merged.size();
    for (std::size_t s = 0; s < nb; ++s) {
        double a = merged[s].angle;
        double b = (s + 1 < nb) ? merged[s + 1].angle : merged[0].angle + two_pi;
        double len = b - a;
        if (len < 1e-13) continue;
        bool sing_lo = merged[s].singular;
        bool sing_hi = (s + 1 < nb) ? merged[s + 1].singular : merged[0].singular;
        int facet = facet_at(0.5 * (a + b));
        double part = 0.0;
        auto graded = [&](double from, double l, bool forward) {
            // int_0^l delta^alpha [rho^pw (|cos|/delta)^alpha] via the
            // endpoint-graded Jacobi rule
            double acc = 0.0;
            double scale = std::pow(0.5 * l, alpha + 1.0);
            for (std::size_t k = 0; k < gj.nodes.size(); ++k) {
                double d = 0.5 * l * (1.0 + gj.nodes[k]);
                double theta = forward ? from + d : from - d;
                double smooth = std::pow(std::abs(std::cos(theta - theta_u)) / d, alpha);
                acc += scale * gj.weights[k] * rho_pow(theta) * smooth;
            }
            return acc;
        };
        if (singular_kernel && (sing_lo || sing_hi)) {
            if (sing_lo && sing_hi) {  // cannot occur for bounded cells; split anyway
                double mid = 0.5 * (a + b);
                part = graded(a, mid - a, true) + graded(b, b - mid, false);
            } else if (sing_lo) {
                part = graded(a, len, true);
            } else {
                part = graded(b, len, false);
            }
        } else if (singular_kernel) {
            // a kernel zero may sit arbitrarily close to a panel endpoint
            // (vertex near u-perp); integrating in a geometric variable
            // anchored at the zero keeps the rule accurate and smooth in the
            // supports at every separation
            double oa = zero_offset(a), ob = zero_offset(b);
            bool below = std::abs(oa) <= std::abs(ob);  // zero nearer the a side
            double dmin = below ? std::abs(oa) : std::abs(ob);
            double dmax = dmin + len;
            double logr = std::log(dmax / dmin);
            for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
                double xi = 0.5 * (1.0 + gl.nodes[k]);
                double d = dmin * std::exp(logr * xi);
                double theta = below ? a + (d - dmin) : b - (d - dmin);
                part += 0.5 * gl.weights[k] * logr * d * rho_pow(theta) * kernel(theta);
            }
        } else {
            for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
                double theta = 0.5 * (a + b) + 0.5 * len * gl.nodes[k];
                part += 0.5 * len * gl.weights[k] * rho_pow(theta) * kernel(theta);
            }
        }
        total += part;
        if (pair_sums) (*pair_sums)[(*facet_pair)[facet]] += part;
    }
    return total;
}

}  // namespace detail

// I_p[h] together with the exact derivative of the discretized volume with
// respect to the per-pair log-supports.  Writing the transform for pole u_i as
// Q_i = sum over quadrature points of W_ik rho(v_ik)^{n-p} |u_i . v_ik|^{-p},
// the chain rule gives
//   dV/dlog h_j = (n-p)/p sum_i w_i rho_{I_p}(u_i)^n S_ij / Q_i,
// with S_ij the part of Q_i carried by quadrature points whose Gauss-map facet
// lies in pair j.  Swapping the sums recovers the (2.3) form of the measure,
// so sgn(p) dV/dlog h_j is a discretization of I_p([h], {+-u_j}); unlike the
// two-stage route it is consistent with the discrete volume to roundoff,
// which is what a line search needs near the maximizer.
struct LpBodyVariation {
    StarBody body;
    double volume = 0.0;
    std::vector<double> dvol;          // dV/dlog h per antipodal pair
    std::vector<double> measure_pairs; // sgn(p) dvol
};

inline LpBodyVariation lp_body_with_variation(const SymmetricPolytope& P,
                                              const LpBodyParams& prm,
                                              const SphericalGrid& grid,
                                              const std::vector<int>& facet_pair,
                                              int pair_count,
                                              const LpBodyOptions& opts = {}) {
    const int n = prm.dim;
    const double p = prm.p;
    const double alpha = -p;
    const double log_norm = std::log((1.0 - p) / (2.0 * (n - p)));
    const std::size_t nn = grid.nodes.size();

    LpBodyVariation out;
    out.body.grid = &grid;
    out.body.log_radial.resize(nn);
    std::vector<double> vol_terms(nn, 0.0);
    // per-node, per-pair derivative contributions; reduced pairwise afterwards
    std::vector<double> dterms(nn * pair_count, 0.0);

    parallel_for(nn, [&](std::size_t i) {
        if (grid.antipode[i] < static_cast<int>(i)) return;
        const Vec& u = grid.nodes[i];
        double q = 0.0;
        std::vector<double> s(pair_count, 0.0);
        if (n == 2) {
            q = detail::polygon_moment(P, u, alpha, n - p, &facet_pair, &s);
        } else {
            // n=3 keeps the axis rule with per-point Gauss-map tallies; the
            // hard cell assignment leaves kinks at the single-point weight
            // scale, so gradients bottom out around 1e-5 here
            auto rho_and_pair = [&](const Vec& v, int& pair) {
                double best = std::numeric_limits<double>::infinity();
                int arg = -1;
                for (int f = 0; f < P.facet_count(); ++f) {
                    double d = dot(v, P.normals[f]);
                    if (d > 1e-14) {
                        double r = P.support[f] / d;
                        if (r < best) {
                            best = r;
                            arg = f;
                        }
                    }
                }
                pair = facet_pair[arg];
                return best;
            };
            SymmetricKernelRule rule =
                symmetric_kernel_rule(opts.axis.polar_order, alpha, 0.5 * (n - 3));
            Vec e1, e2;
            detail::pole_frame(u, e1, e2);
            const auto& ring = detail::ring_table(opts.axis.azimuth);
            const double dpsi = 2.0 * std::numbers::pi / opts.axis.azimuth;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                double t = rule.nodes[k], sq = std::sqrt(1.0 - t * t);
                double w = 2.0 * rule.weights[k] * dpsi;
                Vec center = u * t;
                for (const auto& [c, sn] : ring) {
                    int pr;
                    double g = w * std::pow(rho_and_pair(center + (e1 * c + e2 * sn) * sq, pr),
                                            n - p);
                    q += g;
                    s[pr] += g;
                }
            }
        }
        double log_rho = (log_norm + std::log(q)) / p;
        out.body.log_radial[i] = log_rho;
        double rho_n = std::exp(n * log_rho);
        // antipodal pole contributes identically; fold it in here
        vol_terms[i] = 2.0 * grid.weights[i] * rho_n / n;
        double f = 2.0 * (n - p) / p * grid.weights[i] * rho_n / q;
        for (int j = 0; j < pair_count; ++j) dterms[i * pair_count + j] = f * s[j];
    });
    for (std::size_t i = 0; i < nn; ++i)
        if (grid.antipode[i] < static_cast<int>(i))
            out.body.log_radial[i] = out.body.log_radial[grid.antipode[i]];

    out.volume = pairwise_sum(vol_terms);
    out.dvol.resize(pair_count);
    out.measure_pairs.resize(pair_count);
    std::vector<double> col(nn);
    for (int j = 0; j < pair_count; ++j) {
        for (std::size_t i = 0; i < nn; ++i) col[i] = dterms[i * pair_count + j];
        out.dvol[j] = pairwise_sum(col);
        out.measure_pairs[j] = (prm.p > 0 ? 1.0 : -1.0) * out.dvol[j];
    }
    out.body.interp = EvenInterpolant(grid, out.body.log_radial);
    return out;
}

// rho_{I_p K}(u)^p = (1-p)/(2(n-p)) int |v.u|^{-p} rho_K(v)^{n-p} dv,
// computed in the log domain.  Polygons go through the arc-split rule, which
// is spectrally accurate despite the radial kinks; n=3 uses the axis rule on
// the exact radial evaluator.
inline StarBody lp_intersection_body(const SymmetricPolytope& K, const LpBodyParams& prm,
                                     const SphericalGrid& grid, const LpBodyOptions& opts = {}) {
    detail::warn_conditioning(prm, opts, "lp_intersection_body");
    StarBody s;
    s.grid = &grid;
    if (prm.dim == 2) {
        const double log_norm = std::log((1.0 - prm.p) / (2.0 * (prm.dim - prm.p)));
        s.log_radial.resize(grid.nodes.size());
        parallel_for(grid.nodes.size(), [&](std::size_t i) {
            if (grid.antipode[i] < static_cast<int>(i)) return;
            double q = detail::polygon_moment(K, grid.nodes[i], -prm.p, prm.dim - prm.p);
            s.log_radial[i] = (log_norm + std::log(q)) / prm.p;
        });
        for (std::size_t i = 0; i < s.log_radial.size(); ++i)
            if (grid.antipode[i] < static_cast<int>(i))
                s.log_radial[i] = s.log_radial[grid.antipode[i]];
    } else {
        s.log_radial = detail::lp_log_radial_eval(
            grid, [&](const Vec& v) { return radial_of_polytope(K, v); }, prm, opts);
    }
    s.interp = EvenInterpolant(grid, s.log_radial);
    return s;
}

inline StarBody lp_intersection_body(const StarBody& K, const LpBodyParams& prm,
                                     const LpBodyOptions& opts = {}) {
    detail::warn_conditioning(prm, opts, "lp_intersection_body");
    std::vector<double> logs;
    if (prm.dim == 2 && !detail::is_even_integer(-prm.p)) {
        logs = detail::lp_log_radial_star2(K, prm, opts);
    } else {
        // the interpolated radial function is smooth; half the polar nodes
        // already resolve it to interpolation accuracy
        LpBodyOptions half = opts;
        half.axis.polar_order = std::max(16, opts.axis.polar_order / 2);
        logs = detail::lp_log_radial_eval(
            *K.grid, [&](const Vec& v) { return K.radial(v); }, prm, half);
    }
    StarBody s;
    s.grid = K.grid;
    s.log_radial = std::move(logs);
    s.interp = EvenInterpolant(*K.grid, s.log_radial);
    return s;
}

// I_p^2 K = I_p(I_p K); the inner body is consumed through its interpolant
inline StarBody iterated_lp_body(const SymmetricPolytope& K, const LpBodyParams& prm,
                                 const SphericalGrid& grid, const LpBodyOptions& opts = {}) {
    return lp_intersection_body(lp_intersection_body(K, prm, grid, opts), prm, opts);
}

// rho_{IK}(u) = V_{n-1}(K cap u-perp) = (1/(n-1)) R(rho_K^{n-1})(u)
inline StarBody intersection_body(const SymmetricPolytope& K, const SphericalGrid& grid,
                                  int ring_points = 256) {
    std::vector<double> rho(grid.nodes.size());
    if (grid.dim == 2) {
        // S^1 cap u-perp is a two-point fiber; even K gives 2 rho_K(u rotated)
        for (int i = 0; i < grid.size(); ++i) {
            Vec v{-grid.nodes[i].y, grid.nodes[i].x, 0.0};
            rho[i] = 2.0 * radial_of_polytope(K, v);
        }
    } else {
        const double dpsi = 2.0 * std::numbers::pi / ring_points;
        parallel_for(grid.nodes.size(), [&](std::size_t i) {
            if (grid.antipode[i] < static_cast<int>(i)) return;
            Vec e1, e2;
            detail::pole_frame(grid.nodes[i], e1, e2);
            double acc = 0.0;
            for (int j = 0; j < ring_points; ++j) {
                double psi = dpsi * (j + 0.5);
                double r = radial_of_polytope(K, e1 * std::cos(psi) + e2 * std::sin(psi));
                acc += r * r;
            }
            rho[i] = 0.5 * acc * dpsi;
        });
        for (std::size_t i = 0; i < rho.size(); ++i)
            if (grid.antipode[i] < static_cast<int>(i)) rho[i] = rho[grid.antipode[i]];
    }
    return star_from_radial(grid, rho);
}

inline StarBody intersection_body(const StarBody& K, int ring_points = 256) {
    const SphericalGrid& grid = *K.grid;
    const int n = grid.dim;
    std::vector<double> pw(grid.nodes.size());
    for (std::size_t i = 0; i < pw.size(); ++i)
        pw[i] = std::exp((n - 1) * K.log_radial[i]);
    TransformResult r = radon_transform({grid, std::move(pw)}, ring_points);
    std::vector<double> rho(grid.nodes.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = r.values.values[i] / (n - 1);
    return star_from_radial(grid, rho);
}

// p -> 0 limit body for V(K) = 2:
// rho_{I_0 K}(u) = exp(-(1/2) int_K ln|u.x| dx - 1).  The solid integral is
// reduced to the sphere; the logarithmic kernel is peeled into its analytic
// moment plus a bounded remainder.
inline StarBody i0_body(const SymmetricPolytope& K, const SphericalGrid& grid,
                        const AxisQuadratureOptions& axis = {}) {
    const int n = grid.dim;
    if (std::abs(K.volume() - 2.0) > 1e-6)
        throw std::invalid_argument("i0_body requires the body rescaled to volume 2");

    // int_K ln|u.x| dx = (1/n) int_S rho^n (ln rho - 1/n) dv
    //                  + (1/n) int_S rho^n ln|u.v| dv
    std::vector<double> rho_n(grid.nodes.size()), terms(grid.nodes.size());
    for (int i = 0; i < grid.size(); ++i) {
        double r = radial_of_polytope(K, grid.nodes[i]);
        rho_n[i] = std::pow(r, n);
        terms[i] = grid.weights[i] * rho_n[i] * (std::log(r) - 1.0 / n);
    }
    const double base = pairwise_sum(terms) / n;

    const double ring_power = 0.5 * (n - 3);
    const double moment = log_kernel_moment(ring_power);
    SymmetricKernelRule rule = symmetric_kernel_rule(axis.polar_order, 0.0, ring_power);
    const double pi = std::numbers::pi;

    auto ring_sum = [&](const Vec& pole, const Vec& e1, const Vec& e2, double t) {
        double s = std::sqrt(1.0 - t * t);
        if (n == 2) {
            Vec vp = pole * t + e1 * s, vm = pole * t - e1 * s;
            return std::pow(radial_of_polytope(K, vp), n) +
                   std::pow(radial_of_polytope(K, vm), n);
        }
        double acc = 0.0;
        const double dpsi = 2.0 * pi / axis.azimuth;
        for (int j = 0; j < axis.azimuth; ++j) {
            double psi = dpsi * (j + 0.5);
            acc += std::pow(radial_of_polytope(K, pole * t + (e1 * std::cos(psi) + e2 * std::sin(psi)) * s), n);
        }
        return acc * dpsi;
    };

    std::vector<double> rho_out(grid.nodes.size());
    parallel_for(grid.nodes.size(), [&](std::size_t i) {
        if (grid.antipode[i] < static_cast<int>(i)) return;
        const Vec& u = grid.nodes[i];
        Vec e1, e2;
        if (n == 2) e1 = Vec{-u.y, u.x, 0.0};
        else detail::pole_frame(u, e1, e2);
        double a0 = ring_sum(u, e1, e2, 0.0);
        double remainder = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            double t = rule.nodes[k];
            remainder += 2.0 * rule.weights[k] * std::log(t) * (ring_sum(u, e1, e2, t) - a0);
        }
        double log_term = (a0 * moment + remainder) / n;
        double solid = base + log_term;
        rho_out[i] = std::exp(-0.5 * solid - 1.0);
    });
    for (std::size_t i = 0; i < rho_out.size(); ++i)
        if (grid.antipode[i] < static_cast<int>(i)) rho_out[i] = rho_out[grid.antipode[i]];
    return star_from_radial(grid, rho_out);
}

// Lower/upper constants of the radial sandwich between I_p K and IK:
//   c_{n,p} V(K)^{(1-p)/p} rho_IK <= rho_{I_pK} <= 2^{(p-1)/p} V(K)^{(1-p)/p} rho_IK
struct SandwichConstants {
    double lower;
    double upper;

    SandwichConstants(int n, double p) {
        double lu = (p - 1.0) / p * std::log(2.0);
        upper = std::exp(lu);
        lower = std::exp(lu + (std::log1p(-p) + log_beta(1.0 - p, n) +
                               (1.0 - p) * std::log(n)) / p);
    }
};

struct SandwichMargins {
    double lower;  // min over nodes of rho_{I_pK} / lower_bound - 1
    double upper;  // min over nodes of upper_bound / rho_{I_pK} - 1
};

inline SandwichMargins sandwich_check(const SymmetricPolytope& K, const LpBodyParams& prm,
                                      const SphericalGrid& grid, const LpBodyOptions& opts = {}) {
    StarBody ip = lp_intersection_body(K, prm, grid, opts);
    StarBody ik = intersection_body(K, grid);
    SandwichConstants c(prm.dim, prm.p);
    double vol_factor = std::pow(K.volume(), (1.0 - prm.p) / prm.p);
    SandwichMargins m{std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < ip.log_radial.size(); ++i) {
        double rip = std::exp(ip.log_radial[i]);
        double rik = std::exp(ik.log_radial[i]);
        m.lower = std::min(m.lower, rip / (c.lower * vol_factor * rik) - 1.0);
        m.upper = std::min(m.upper, (c.upper * vol_factor * rik) / rip - 1.0);
    }
    return m;
}

// V(I_p(cK)) = c^{n(n-p)/p} V(I_pK)
inline double lp_volume_homogeneity_degree(const LpBodyParams& prm) {
    return prm.dim * (prm.dim - prm.p) / prm.p;
}

}  // namespace idcm
