#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bhtv/grid.hpp"

namespace testing {

inline bhtv::Image random_image(int rows, int cols, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    bhtv::Image u(rows, cols);
    for (double& x : u.values()) x = dist(rng);
    return u;
}

inline bhtv::GradientField random_gradient_field(int rows, int cols, std::mt19937_64& rng) {
    return {random_image(rows, cols, rng), random_image(rows, cols, rng)};
}

inline bhtv::HessianField random_hessian_field(int rows, int cols, std::mt19937_64& rng) {
    return {random_image(rows, cols, rng), random_image(rows, cols, rng), random_image(rows, cols, rng),
            random_image(rows, cols, rng)};
}

inline double max_abs_diff(const bhtv::Image& a, const bhtv::Image& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
    return m;
}

inline double relative_diff(const bhtv::Image& a, const bhtv::Image& b) {
    return bhtv::l2(a - b) / std::max(bhtv::l2(b), 1e-300);
}

}  // namespace testing
