#pragma once

// Split Bregman drivers for
//
//   min_u  F(u0 - T u) + alpha |grad u|_1 + beta |H u|_1
//
// with F = 1/2 |.|_2^2 (Gaussian noise) or |.|_1 (impulse noise), isotropic
// (group) or anisotropic (componentwise) 1-norms, and the standard or the
// alternative variable splitting. Every u-subproblem is a symmetric positive
// definite system solved matrix-free by a few warm-started CG steps.
//
// A regulariser whose weight is zero has no constraint to enforce, so its
// auxiliary stream (v, b1 or w, b2) is dropped from the iteration instead of
// being carried as an exact copy of grad u / H u.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bhtv/cg.hpp"
#include "bhtv/forward.hpp"
#include "bhtv/grid.hpp"

namespace bhtv {

struct SolverConfig {
    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 1.0;
    int max_outer = 300;
    /// Early exit once |u^k - u^{k-1}| / |u^k| drops below this; 0 disables it.
    double residual_tol = 1e-4;
    InnerSolverConfig inner;
    std::uint64_t seed = 0;

    /// Throws ParameterError on negative weights, nonpositive lambda, max_outer < 1 etc.
    void validate() const;
};

struct IterationRecord {
    int iter = 0;
    double relative_residual = 0.0;
    double constraint_gap_1 = 0.0;  ///< |grad u - v|
    double constraint_gap_2 = 0.0;  ///< |H u - w| (|grad v~ - w| for the alternative splitting)
    double energy = 0.0;            ///< objective value at u^k
};

struct SolverTrace {
    std::vector<IterationRecord> records;
    int iterations_run() const noexcept { return static_cast<int>(records.size()); }
};

/// A non-finite value appeared in an iterate. Holds the trace up to that point.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, SolverTrace trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const SolverTrace& trace() const noexcept { return trace_; }

private:
    SolverTrace trace_;
};

/// Iteration state. Fields not used by a variant stay empty; streams of a
/// zero-weight regulariser stay at zero.
struct BregmanState {
    Image u;
    GradientField v;
    HessianField w;
    GradientField b1;
    HessianField b2;
    // L1 fidelity
    Image c;
    Image u_tilde;
    // alternative splitting: b2_split enforces v~ = v, b3 enforces w = grad v~
    GradientField v_tilde;
    GradientField b2_split;
    HessianField b3;
};

struct SolveResult {
    Image u;
    SolverTrace trace;
};

/// Called after each outer iteration with the 1-based iteration number.
using IterationObserver = std::function<void(int, const BregmanState&)>;

/// T*T u - lambda div(grad u) + lambda divH(H u).
Image apply_system(const ForwardOp& op, double lambda, const Image& u);

/// As apply_system with separate weights on the gradient and Hessian terms.
Image apply_system(const ForwardOp& op, double grad_weight, double hess_weight, const Image& u);

/// 1/2 |u0 - T u|^2 + alpha |grad u|_1 + beta |H u|_1 (group norms).
double energy_l2_iso(const Image& u0, const ForwardOp& op, double alpha, double beta, const Image& u);
double energy_l2_aniso(const Image& u0, const ForwardOp& op, double alpha, double beta, const Image& u);
/// |u0 - T u|_1 + alpha |grad u|_1 + beta |H u|_1.
double energy_l1_iso(const Image& u0, const ForwardOp& op, double alpha, double beta, const Image& u);

SolveResult solve_l2_iso(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                         const IterationObserver& observer = {});
SolveResult solve_l2_iso_alt(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                             const IterationObserver& observer = {});
SolveResult solve_l2_aniso(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                           const IterationObserver& observer = {});
SolveResult solve_l1(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                     const IterationObserver& observer = {});

enum class Fidelity { L2, L1 };
enum class Regularizer { Isotropic, Anisotropic };
enum class Splitting { Standard, Alternative };

struct SolverChoice {
    Fidelity fidelity = Fidelity::L2;
    Regularizer regularizer = Regularizer::Isotropic;
    Splitting splitting = Splitting::Standard;

    /// Only L2 fidelity has the anisotropic and alternative-splitting variants.
    void validate() const;
};

SolveResult solve(const Image& u0, const ForwardOp& op, const SolverConfig& cfg, const SolverChoice& choice);

struct ColorSolveResult {
    ColorImage u;
    std::array<SolverTrace, 3> traces;
};

/// Runs `solve_channel` on each plane independently (concurrently).
ColorSolveResult solve_rgb(const ColorImage& u0, const std::function<SolveResult(const Image&)>& solve_channel);

/// Starting iterate: u0, with the unknown pixels of a mask set to the mean of the known ones.
Image initial_iterate(const Image& u0, const ForwardOp& op);

}  // namespace bhtv
