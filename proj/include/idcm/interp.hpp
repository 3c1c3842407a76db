#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "idcm/grid.hpp"
#include "idcm/vec.hpp"

namespace idcm {

// Even interpolant of grid samples.  Evaluation canonicalizes the direction
// into a fundamental half-domain first, so I(u) == I(-u) holds exactly.
//
// n=2: trigonometric (barycentric) interpolation of the N/2 samples on
//      [0, pi), seen as an equispaced periodic problem in x = 2*theta.
// n=3: local bicubic Lagrange on the lat-long table, longitudes periodic,
//      polar ghost rows obtained by the pole reflection
//      (theta, phi) -> (-theta, phi + pi).
class EvenInterpolant {
public:
    EvenInterpolant() = default;

    EvenInterpolant(const SphericalGrid& grid, const std::vector<double>& values) {
        if (values.size() != grid.nodes.size())
            throw std::invalid_argument("sample count does not match grid");
        dim_ = grid.dim;
        if (dim_ == 2) {
            m_ = grid.resolution / 2;
            data_.assign(values.begin(), values.begin() + m_);
        } else {
            np_ = grid.n_polar;
            nl_ = grid.n_longitude;
            // rows by ascending polar angle (descending cosine), plus 2 ghost
            // rows above the north pole
            theta_.resize(np_ + 2);
            data_.resize(static_cast<std::size_t>(np_ + 2) * nl_);
            for (int r = 0; r < np_; ++r) {
                int i = np_ - 1 - r;
                theta_[r + 2] = std::acos(grid.polar_cosines[i]);
                for (int j = 0; j < nl_; ++j)
                    data_[static_cast<std::size_t>(r + 2) * nl_ + j] =
                        values[static_cast<std::size_t>(i) * nl_ + j];
            }
            for (int k = 0; k < 2; ++k) {
                theta_[1 - k] = -theta_[2 + k];
                for (int j = 0; j < nl_; ++j)
                    data_[static_cast<std::size_t>(1 - k) * nl_ + j] =
                        data_[static_cast<std::size_t>(2 + k) * nl_ + (j + nl_ / 2) % nl_];
            }
            // Lagrange denominators per polar window, hoisted out of the
            // evaluation loop
            int windows = static_cast<int>(theta_.size()) - 3;
            invden_.resize(static_cast<std::size_t>(windows) * 4);
            for (int r0 = 0; r0 < windows; ++r0)
                for (int k = 0; k < 4; ++k) {
                    double d = 1.0;
                    for (int l = 0; l < 4; ++l)
                        if (l != k) d *= theta_[r0 + k] - theta_[r0 + l];
                    invden_[static_cast<std::size_t>(r0) * 4 + k] = 1.0 / d;
                }
        }
    }

    double operator()(const Vec& u) const {
        if (dim_ == 2) {
            Vec c = u;
            if (c.y < 0 || (c.y == 0 && c.x < 0)) c = -c;  // fold to the upper half-circle
            return eval2(std::atan2(c.y, c.x));
        }
        Vec c = u;
        if (c.z < 0 || (c.z == 0 && (c.y < 0 || (c.y == 0 && c.x < 0)))) c = -c;
        double theta = std::acos(std::clamp(c.z / norm(c), -1.0, 1.0));
        double phi = std::atan2(c.y, c.x);
        return eval3(theta, phi);
    }

    // n=2 convenience: evaluate at a planar angle
    double at_angle(double theta) const { return eval2(theta); }

private:
    double eval2(double theta) const {
        const double pi = std::numbers::pi;
        double x = 2.0 * std::fmod(theta, pi);
        if (x < 0) x += 2.0 * pi;
        // sample angles: x_j = (2j+1) * pi / m
        double sum = 0.0;
        for (int j = 0; j < m_; ++j) {
            double d = x - (2.0 * j + 1.0) * pi / m_;
            double hd = 0.5 * d;
            double s = std::sin(hd);
            if (std::abs(s) < 1e-11) return data_[j];
            sum += data_[j] * std::sin(m_ * hd) * std::cos(hd) / s;
        }
        return sum / m_;
    }

    double eval3(double theta, double phi) const {
        const double pi = std::numbers::pi;
        // longitude stencil (uniform, periodic); phi in (-pi, pi]
        double wl = 2.0 * pi / nl_;
        double jr = (phi < 0 ? phi + 2.0 * pi : phi) / wl - 0.5;
        double jf = std::floor(jr);
        double s = jr - jf;
        int j1 = static_cast<int>(jf);
        double sm1 = s - 1.0, sp1 = s + 1.0, sm2 = s - 2.0;
        double lphi[4] = {-s * sm1 * sm2 / 6.0, sp1 * sm1 * sm2 * 0.5,
                          -sp1 * s * sm2 * 0.5, sp1 * s * sm1 / 6.0};
        int jdx[4];
        for (int k = 0; k < 4; ++k) {
            int j = j1 - 1 + k;
            if (j < 0) j += nl_;
            else if (j >= nl_) j -= nl_;
            jdx[k] = j;
        }
        // polar stencil: rows r0..r0+3 with theta in [theta_[r0+1], theta_[r0+2]];
        // rows are close to uniform in theta, so a hint plus a local scan beats
        // a binary search
        const int rows = static_cast<int>(theta_.size());
        int lo = 2 + static_cast<int>(theta / pi * np_);
        lo = std::clamp(lo, 1, rows - 2);
        while (lo > 1 && theta_[lo] > theta) --lo;
        while (lo + 1 < rows - 1 && theta_[lo + 1] <= theta) ++lo;
        int r0 = std::clamp(lo - 1, 0, rows - 4);
        double rowv[4];
        for (int k = 0; k < 4; ++k) {
            const double* row = data_.data() + static_cast<std::size_t>(r0 + k) * nl_;
            rowv[k] = lphi[0] * row[jdx[0]] + lphi[1] * row[jdx[1]] +
                      lphi[2] * row[jdx[2]] + lphi[3] * row[jdx[3]];
        }
        double d0 = theta - theta_[r0], d1 = theta - theta_[r0 + 1];
        double d2 = theta - theta_[r0 + 2], d3 = theta - theta_[r0 + 3];
        const double* inv = invden_.data() + static_cast<std::size_t>(r0) * 4;
        return rowv[0] * inv[0] * d1 * d2 * d3 + rowv[1] * inv[1] * d0 * d2 * d3 +
               rowv[2] * inv[2] * d0 * d1 * d3 + rowv[3] * inv[3] * d0 * d1 * d2;
    }

    int dim_ = 2;
    int m_ = 0;                   // n=2 sample count on the half-circle
    int np_ = 0, nl_ = 0;         // n=3 table shape
    std::vector<double> theta_;   // n=3 extended polar angles
    std::vector<double> invden_;  // n=3 Lagrange denominators per window
    std::vector<double> data_;
};

}  // namespace idcm
