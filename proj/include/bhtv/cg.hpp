#pragma once

#include <functional>

#include "bhtv/grid.hpp"

namespace bhtv {

struct InnerSolverConfig {
    int max_cg_iters = 4;
    double cg_tol = 1e-4;
};

/// Symmetric positive (semi)definite linear map on images.
using LinearMap = std::function<Image(const Image&)>;

struct CgResult {
    Image x;
    int iterations = 0;
    /// |A x - rhs| / |rhs| (absolute residual when rhs = 0).
    double relative_residual = 0.0;
    /// Set when a search direction had nonpositive curvature; x is the last good iterate.
    bool breakdown = false;
};

/// Plain (unpreconditioned) conjugate gradients, warm-started at x0. Stops
/// after max_cg_iters steps or once the relative residual drops below cg_tol.
CgResult cg_solve(const LinearMap& system, const Image& rhs, Image x0, const InnerSolverConfig& cfg);

}  // namespace bhtv
