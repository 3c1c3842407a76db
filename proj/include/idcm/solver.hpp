#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "idcm/bodies.hpp"
#include "idcm/lp_bodies.hpp"
#include "idcm/measures.hpp"

namespace idcm {

// E_mu(h) = -(1/|mu|) sum_a mu_a log h_a
inline double entropy(const DiscreteSphericalMeasure& mu, const std::vector<double>& h) {
    if (h.size() != mu.weights.size())
        throw std::invalid_argument("need one support value per atom");
    std::vector<double> terms(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) throw std::invalid_argument("entropy requires positive h");
        terms[i] = mu.weights[i] * std::log(h[i]);
    }
    return -pairwise_sum(terms) / mu.total();
}

struct SolverOptions {
    double grad_tol = 1e-7;
    int max_iter = 500;
    double armijo = 1e-4;
    double shrink = 0.5;
    double initial_step = 0.5;
    double spread_alarm = 30.0;  // log-support spread signalling degeneration
    LpBodyOptions lp{};
};

struct TraceRow {
    int iteration;
    double objective;
    double grad_norm;  // max |component|
    double step;
};

// Phi_{mu,p} over log-support vectors on mu's antipodal normal pairs.
// The gradient component of pair {+-u_j} is
//   I_p([h], {+-u_j}) / I_p([h], S^{n-1})  -  (mu_j + mu_{-j}) / |mu|,
// where the total-mass identity I_p(K, S^{n-1}) = n(n-p)/|p| V(I_pK) has been
// used to normalize the measure term; this keeps the components summing to
// zero in floating point as well.
class MinkowskiObjective {
public:
    MinkowskiObjective(const DiscreteSphericalMeasure& mu, const LpBodyParams& prm,
                       const SphericalGrid& grid, LpBodyOptions opts = {})
        : params_(prm), grid_(&grid), opts_(std::move(opts)) {
        if (!mu.even) throw std::invalid_argument("solver requires an even measure");
        if (mu.dim != prm.dim) throw std::invalid_argument("measure/parameter dimension mismatch");
        mu_total_ = mu.total();
        for (int i = 0; i < mu.size(); ++i) {
            if (mu.antipode[i] < i) continue;
            pair_normals_.push_back(mu.positions[i]);
            pair_weights_.push_back(mu.weights[i] + mu.weights[mu.antipode[i]]);
        }
    }

    int pair_count() const { return static_cast<int>(pair_normals_.size()); }
    const std::vector<Vec>& pair_normals() const { return pair_normals_; }
    const std::vector<double>& pair_weights() const { return pair_weights_; }
    double measure_total() const { return mu_total_; }
    const LpBodyParams& params() const { return params_; }
    const SphericalGrid& grid() const { return *grid_; }

    SymmetricPolytope wulff_of(const std::vector<double>& log_h) const {
        std::vector<Vec> normals;
        std::vector<double> support;
        normals.reserve(2 * pair_normals_.size());
        for (const Vec& v : pair_normals_) normals.push_back(v);
        for (const Vec& v : pair_normals_) normals.push_back(-v);
        for (double lh : log_h) support.push_back(std::exp(lh));
        for (double lh : log_h) support.push_back(std::exp(lh));
        return wulff_shape(params_.dim, std::move(normals), std::move(support));
    }

    struct Eval {
        double objective;
        double lp_volume;
        SymmetricPolytope body;
        StarBody lp_body;
    };

    struct GradEval {
        Eval base;
        std::vector<double> gradient;       // per pair
        std::vector<double> measure_pairs;  // I_p([h], {+-u_j}), variational form
        double measure_total;
    };

    Eval value(const std::vector<double>& log_h) const { return evaluate(log_h, nullptr); }

    GradEval value_and_gradient(const std::vector<double>& log_h) const {
        GradEval ge;
        ge.base = evaluate(log_h, &ge);
        return ge;
    }

private:
    // one transform pass yields the discrete volume and, when asked, its exact
    // per-pair derivative; objective and gradient therefore never disagree
    Eval evaluate(const std::vector<double>& log_h, GradEval* ge) const {
        Eval e{0.0, 0.0, wulff_of(log_h), {}};
        const int m = pair_count();
        std::vector<int> facet_pair(2 * m);
        for (int j = 0; j < m; ++j) facet_pair[j] = facet_pair[j + m] = j;
        LpBodyVariation var =
            lp_body_with_variation(e.body, params_, *grid_, facet_pair, m, opts_);
        e.lp_body = std::move(var.body);
        e.lp_volume = var.volume;
        e.objective = params_.p / (params_.dim * (params_.dim - params_.p)) *
                          std::log(e.lp_volume) +
                      entropy_of(log_h);
        if (ge) {
            const double c = params_.p / (params_.dim * (params_.dim - params_.p));
            ge->measure_pairs = var.measure_pairs;
            ge->measure_total = pairwise_sum(var.measure_pairs);
            ge->gradient.resize(m);
            for (int j = 0; j < m; ++j)
                ge->gradient[j] =
                    c * var.dvol[j] / var.volume - pair_weights_[j] / mu_total_;
        }
        return e;
    }

public:

    double entropy_of(const std::vector<double>& log_h) const {
        std::vector<double> terms(log_h.size());
        for (std::size_t j = 0; j < log_h.size(); ++j) terms[j] = pair_weights_[j] * log_h[j];
        return -pairwise_sum(terms) / mu_total_;
    }

private:
    LpBodyParams params_;
    const SphericalGrid* grid_;
    LpBodyOptions opts_;
    std::vector<Vec> pair_normals_;
    std::vector<double> pair_weights_;
    double mu_total_ = 0.0;
};

struct MinkowskiSolution {
    SymmetricPolytope body;  // K_0 = [exp(log_h)], unscaled
    double c = 1.0;          // V(I_p(c K_0)) = |p||mu| / (n(n-p))
    double residual = 0.0;   // max_j |I_p(cK_0,{+-u_j}) - mu_pair_j| / mu_pair_j
    bool converged = false;
    bool divergence_alarm = false;
    bool concentration_warning = false;  // input violates the strict inequality
    int iterations = 0;
    double final_grad_norm = 0.0;
    std::vector<double> log_h;
    DiscreteSphericalMeasure achieved;  // I_p(c K_0, .)
    std::vector<TraceRow> trace;
};

// Gradient ascent on log-support coordinates from h = 1, Armijo backtracking,
// gauge-fixed by mean(log_h) = 0 after each step.
inline MinkowskiSolution solve_minkowski(const DiscreteSphericalMeasure& mu,
                                         const LpBodyParams& prm, const SphericalGrid& grid,
                                         const SolverOptions& opts = {}) {
    MinkowskiObjective obj(mu, prm, grid, opts.lp);
    const int m = obj.pair_count();
    if (m < prm.dim)
        throw std::invalid_argument("measure support does not span: no bounded Wulff shape");

    MinkowskiSolution sol;
    // Eq. (1.4) check on the input; violation forfeits the existence theorem
    // but is not an error
    for (int axis = 0; axis < prm.dim && !sol.concentration_warning; ++axis) {
        Vec e;
        e[axis] = 1.0;
        auto rep = subspace_concentration(mu, {e}, 1e-9, ConcentrationBound::input);
        if (!rep.strict) sol.concentration_warning = true;
    }

    std::vector<double> log_h(m, 0.0);
    auto ge = obj.value_and_gradient(log_h);
    double step = opts.initial_step;
    auto grad_norm = [](const std::vector<double>& g) {
        double worst = 0.0;
        for (double x : g) worst = std::max(worst, std::abs(x));
        return worst;
    };
    sol.trace.push_back({0, ge.base.objective, grad_norm(ge.gradient), 0.0});

    int it = 0;
    std::vector<double> prev_x, prev_g;
    while (it < opts.max_iter && grad_norm(ge.gradient) > opts.grad_tol) {
        ++it;
        double g2 = 0.0;
        for (double x : ge.gradient) g2 += x * x;
        // Barzilai-Borwein trial step (|dx|^2 / |dx.dg|) after the first
        // iteration; plain ascent at the fixed initial step crawls once a
        // nearly redundant facet flattens the curvature
        double s = opts.initial_step;
        if (!prev_x.empty()) {
            double dxdx = 0.0, dxdg = 0.0;
            for (int j = 0; j < m; ++j) {
                double dx = log_h[j] - prev_x[j];
                double dg = ge.gradient[j] - prev_g[j];
                dxdx += dx * dx;
                dxdg += dx * dg;
            }
            if (std::abs(dxdg) > 1e-300 && dxdx > 0.0)
                s = std::clamp(dxdx / std::abs(dxdg), 1e-6, 1e6);
        }
        prev_x = log_h;
        prev_g = ge.gradient;
        bool accepted = false;
        while (s > 1e-14) {
            std::vector<double> trial(m);
            double mean = 0.0;
            for (int j = 0; j < m; ++j) {
                trial[j] = log_h[j] + s * ge.gradient[j];
                mean += trial[j];
            }
            mean /= m;
            for (double& x : trial) x -= mean;  // gauge: remove the 0-homogeneity direction
            double tval = obj.value(trial).objective;
            if (tval >= ge.base.objective + opts.armijo * s * g2) {
                log_h = std::move(trial);
                step = s;
                accepted = true;
                break;
            }
            s *= opts.shrink;
        }
        if (!accepted) break;
        ge = obj.value_and_gradient(log_h);
        sol.trace.push_back({it, ge.base.objective, grad_norm(ge.gradient), step});
        double lo = *std::min_element(log_h.begin(), log_h.end());
        double hi = *std::max_element(log_h.begin(), log_h.end());
        if (hi - lo > opts.spread_alarm) {
            sol.divergence_alarm = true;
            break;
        }
    }

    sol.iterations = it;
    sol.final_grad_norm = grad_norm(ge.gradient);
    sol.converged = sol.final_grad_norm <= opts.grad_tol && !sol.divergence_alarm;
    sol.log_h = log_h;
    sol.body = ge.base.body;

    // closed-form rescaling from the homogeneity degree n(n-p)/p of V(I_p .)
    double target = std::abs(prm.p) * obj.measure_total() / (prm.dim * (prm.dim - prm.p));
    double degree = lp_volume_homogeneity_degree(prm);
    sol.c = std::pow(target / ge.base.lp_volume, 1.0 / degree);
    double mass_scale = std::pow(sol.c, degree);

    // residual against the measure operation itself (the two-stage route),
    // not against the solver's internal variational atoms
    IpMeasureResult check = ip_measure(ge.base.body, prm, grid, opts.lp);
    sol.achieved = check.measure;
    for (double& w : sol.achieved.weights) w *= mass_scale;
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
        double got = sol.achieved.weights[j] + sol.achieved.weights[ge.base.body.antipode[j]];
        double want = obj.pair_weights()[j];
        worst = std::max(worst, std::abs(got - want) / want);
    }
    sol.residual = worst;
    return sol;
}

}  // namespace idcm
