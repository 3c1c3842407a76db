#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace idcm {

// Pairwise summation with a tree fixed by index, so the result does not
// depend on how work was partitioned across threads.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v.data(), v.size()));
}

}  // namespace idcm
