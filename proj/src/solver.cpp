#include "bhtv/solver.hpp"

#include <cmath>
#include <future>
#include <string>

#include "bhtv/error.hpp"
#include "bhtv/prox.hpp"

namespace bhtv {

void SolverConfig::validate() const {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) throw ParameterError(msg);
    };
    check(std::isfinite(alpha) && alpha >= 0.0, "alpha must be finite and nonnegative");
    check(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
    check(std::isfinite(lambda) && lambda > 0.0, "lambda must be finite and positive");
    check(max_outer >= 1, "max_outer must be at least 1");
    check(std::isfinite(residual_tol) && residual_tol >= 0.0, "residual_tol must be nonnegative");
    check(inner.max_cg_iters >= 1, "max_cg_iters must be at least 1");
    check(std::isfinite(inner.cg_tol) && inner.cg_tol >= 0.0, "cg_tol must be nonnegative");
}

void SolverChoice::validate() const {
    if (fidelity == Fidelity::L1 && regularizer == Regularizer::Anisotropic) {
        throw ParameterError("L1 fidelity supports only the isotropic regulariser");
    }
    if (splitting == Splitting::Alternative && (fidelity != Fidelity::L2 || regularizer != Regularizer::Isotropic)) {
        throw ParameterError("the alternative splitting is available for isotropic L2 only");
    }
}

Image apply_system(const ForwardOp& op, double grad_weight, double hess_weight, const Image& u) {
    Image out = op.adjoint(op.apply(u));
    if (grad_weight != 0.0) {
        Image d = divergence(gradient(u));
        d *= -grad_weight;
        out += d;
    }
    if (hess_weight != 0.0) {
        Image d = divergence_h(hessian(u));
        d *= hess_weight;
        out += d;
    }
    return out;
}

Image apply_system(const ForwardOp& op, double lambda, const Image& u) {
    return apply_system(op, lambda, lambda, u);
}

double energy_l2_iso(const Image& u0, const ForwardOp& op, double alpha, double beta, const Image& u) {
    const double fit = l2(u0 - op.apply(u));
    return 0.5 * fit * fit + alpha * l1_group(gradient(u)) + beta * l1_group(hessian(u));
}

double energy_l2_aniso(const Image& u0, const ForwardOp& op, double alpha, double beta, const Image& u) {
    const double fit = l2(u0 - op.apply(u));
    return 0.5 * fit * fit + alpha * l1_aniso(gradient(u)) + beta * l1_aniso(hessian(u));
}

double energy_l1_iso(const Image& u0, const ForwardOp& op, double alpha, double beta, const Image& u) {
    return l1(u0 - op.apply(u)) + alpha * l1_group(gradient(u)) + beta * l1_group(hessian(u));
}

Image initial_iterate(const Image& u0, const ForwardOp& op) {
    if (op.kind() != ForwardOp::Kind::Mask) return u0;
    const Image& mask = op.mask_plane();
    double sum = 0.0;
    std::size_t known = 0;
    for (std::size_t k = 0; k < u0.size(); ++k) {
        if (mask.values()[k] != 0.0) {
            sum += u0.values()[k];
            ++known;
        }
    }
    const double fill = known > 0 ? sum / static_cast<double>(known) : 0.0;
    Image u = u0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (mask.values()[k] == 0.0) u.values()[k] = fill;
    }
    return u;
}

namespace {

enum class Shrink { Isotropic, Anisotropic };

template <typename Field>
Field shrink(Field x, double t, Shrink kind) {
    return kind == Shrink::Isotropic ? shrink_field_iso(std::move(x), ShrinkThreshold(t))
                                     : shrink_field_aniso(std::move(x), ShrinkThreshold(t));
}

double relative_change(const Image& current, const Image& previous) {
    const double diff = l2(current - previous);
    const double norm = l2(current);
    return norm > 0.0 ? diff / norm : diff;
}

void prepare(const Image& u0, const ForwardOp& op, const SolverConfig& cfg) {
    cfg.validate();
    op.check_compatible(u0);
    if (!all_finite(u0)) throw ParameterError("input image contains non-finite values");
}

// Records one iteration, throwing DivergenceError on a non-finite iterate.
void record(SolverTrace& trace, IterationRecord rec, const Image& u) {
    const bool finite = all_finite(u) && std::isfinite(rec.relative_residual) &&
                        std::isfinite(rec.constraint_gap_1) && std::isfinite(rec.constraint_gap_2) &&
                        std::isfinite(rec.energy);
    if (!finite) {
        throw DivergenceError("non-finite iterate at outer iteration " + std::to_string(rec.iter), trace);
    }
    trace.records.push_back(rec);
}

// Standard splitting, shared by the isotropic / anisotropic L2 drivers and the
// L1 driver. With L1 fidelity the data term is split as well: u~ = T u - u0
// with Bregman variable c.
SolveResult run_standard(const Image& u0, const ForwardOp& op, const SolverConfig& cfg, Shrink kind,
                         Fidelity fidelity, const IterationObserver& observer) {
    prepare(u0, op, cfg);
    const int n = u0.rows();
    const int m = u0.cols();
    const double lambda = cfg.lambda;
    const bool grad_on = cfg.alpha > 0.0;
    const bool hess_on = cfg.beta > 0.0;
    const bool l1_fit = fidelity == Fidelity::L1;

    BregmanState s;
    s.u = initial_iterate(u0, op);
    s.v = GradientField(n, m);
    s.b1 = GradientField(n, m);
    s.w = HessianField(n, m);
    s.b2 = HessianField(n, m);
    if (l1_fit) {
        s.c = Image(n, m);
        s.u_tilde = Image(n, m);
    }

    // With L2 fidelity the system is T*T + lambda(grad*grad + H*H); with L1
    // fidelity every term carries lambda, which is divided out.
    const double coupling = l1_fit ? 1.0 : lambda;
    const double gw = grad_on ? coupling : 0.0;
    const double hw = hess_on ? coupling : 0.0;
    const LinearMap system = [&](const Image& x) { return apply_system(op, gw, hw, x); };

    const Image adj_data = op.adjoint(u0);
    SolverTrace trace;
    for (int k = 1; k <= cfg.max_outer; ++k) {
        Image rhs = l1_fit ? op.adjoint(u0 - s.c + s.u_tilde) : adj_data;
        if (grad_on) {
            Image d = divergence(s.b1 - s.v);
            d *= gw;
            rhs += d;
        }
        if (hess_on) {
            Image d = divergence_h(s.b2 - s.w);
            d *= hw;
            rhs -= d;
        }

        const Image previous = s.u;
        s.u = cg_solve(system, rhs, std::move(s.u), cfg.inner).x;

        IterationRecord rec;
        rec.iter = k;
        if (l1_fit) {
            const Image misfit = op.apply(s.u) - u0;
            s.u_tilde = shrink_image(s.c + misfit, ShrinkThreshold(1.0 / lambda));
            s.c += misfit - s.u_tilde;
        }
        if (grad_on) {
            const GradientField g = gradient(s.u);
            s.v = shrink(s.b1 + g, cfg.alpha / lambda, kind);
            const GradientField gap = g - s.v;
            s.b1 += gap;
            rec.constraint_gap_1 = l2(gap);
        }
        if (hess_on) {
            const HessianField h = hessian(s.u);
            s.w = shrink(s.b2 + h, cfg.beta / lambda, kind);
            const HessianField gap = h - s.w;
            s.b2 += gap;
            rec.constraint_gap_2 = l2(gap);
        }

        rec.relative_residual = relative_change(s.u, previous);
        if (l1_fit) {
            rec.energy = energy_l1_iso(u0, op, cfg.alpha, cfg.beta, s.u);
        } else if (kind == Shrink::Isotropic) {
            rec.energy = energy_l2_iso(u0, op, cfg.alpha, cfg.beta, s.u);
        } else {
            rec.energy = energy_l2_aniso(u0, op, cfg.alpha, cfg.beta, s.u);
        }
        record(trace, rec, s.u);
        if (observer) observer(k, s);
        if (rec.relative_residual < cfg.residual_tol) break;
    }
    return {std::move(s.u), std::move(trace)};
}

// Jacobian of a vector field, laid out to match the Hessian planes:
// q11 = d_j v1, q12 = d_i v1, q21 = d_j v2, q22 = d_i v2.
HessianField jacobian(const GradientField& v) {
    GradientField g1 = gradient(v.p1);
    GradientField g2 = gradient(v.p2);
    return HessianField(std::move(g1.p1), std::move(g2.p2), std::move(g1.p2), std::move(g2.p1));
}

}  // namespace

SolveResult solve_l2_iso(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                         const IterationObserver& observer) {
    return run_standard(u0, op, cfg, Shrink::Isotropic, Fidelity::L2, observer);
}

SolveResult solve_l2_aniso(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                           const IterationObserver& observer) {
    return run_standard(u0, op, cfg, Shrink::Anisotropic, Fidelity::L2, observer);
}

SolveResult solve_l1(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                     const IterationObserver& observer) {
    return run_standard(u0, op, cfg, Shrink::Isotropic, Fidelity::L1, observer);
}

// Constraints v~ = grad u, v~ = v, w = grad v~ with Bregman variables b1, b2, b3.
// One u-solve coupled through the gradient only, then one screened Poisson
// solve per component of v~.
SolveResult solve_l2_iso_alt(const Image& u0, const ForwardOp& op, const SolverConfig& cfg,
                             const IterationObserver& observer) {
    prepare(u0, op, cfg);
    const int n = u0.rows();
    const int m = u0.cols();
    const double lambda = cfg.lambda;
    const bool grad_on = cfg.alpha > 0.0;
    const bool hess_on = cfg.beta > 0.0;
    const bool coupled = grad_on || hess_on;

    BregmanState s;
    s.u = initial_iterate(u0, op);
    s.v = GradientField(n, m);
    s.w = HessianField(n, m);
    s.b1 = GradientField(n, m);
    s.v_tilde = GradientField(n, m);
    s.b2_split = GradientField(n, m);
    s.b3 = HessianField(n, m);

    const double uw = coupled ? lambda : 0.0;
    const LinearMap u_system = [&](const Image& x) { return apply_system(op, uw, 0.0, x); };
    const double diag = 1.0 + (grad_on ? 1.0 : 0.0);
    const LinearMap v_system = [&](const Image& x) {
        Image out = x;
        out *= diag;
        if (hess_on) out -= divergence(gradient(x));
        return out;
    };

    const Image adj_data = op.adjoint(u0);
    SolverTrace trace;
    for (int k = 1; k <= cfg.max_outer; ++k) {
        Image rhs = adj_data;
        if (coupled) {
            Image d = divergence(s.b1 - s.v_tilde);
            d *= lambda;
            rhs += d;
        }
        const Image previous = s.u;
        s.u = cg_solve(u_system, rhs, std::move(s.u), cfg.inner).x;

        IterationRecord rec;
        rec.iter = k;
        if (coupled) {
            const GradientField g = gradient(s.u);
            GradientField target = s.b1 + g;
            if (grad_on) target += s.v - s.b2_split;

            Image rhs1 = target.p1;
            Image rhs2 = target.p2;
            if (hess_on) {
                const HessianField d = s.b3 - s.w;
                rhs1 += divergence(GradientField{d.q11, d.q12});
                rhs2 += divergence(GradientField{d.q21, d.q22});
            }
            s.v_tilde.p1 = cg_solve(v_system, rhs1, std::move(s.v_tilde.p1), cfg.inner).x;
            s.v_tilde.p2 = cg_solve(v_system, rhs2, std::move(s.v_tilde.p2), cfg.inner).x;

            if (grad_on) {
                s.v = shrink_field_iso(s.b2_split + s.v_tilde, ShrinkThreshold(cfg.alpha / lambda));
                s.b2_split += s.v_tilde - s.v;
                rec.constraint_gap_1 = l2(g - s.v);
            }
            if (hess_on) {
                const HessianField jv = jacobian(s.v_tilde);
                s.w = shrink_field_iso(s.b3 + jv, ShrinkThreshold(cfg.beta / lambda));
                const HessianField gap = jv - s.w;
                s.b3 += gap;
                rec.constraint_gap_2 = l2(gap);
            }
            s.b1 += g - s.v_tilde;
        }

        rec.relative_residual = relative_change(s.u, previous);
        rec.energy = energy_l2_iso(u0, op, cfg.alpha, cfg.beta, s.u);
        record(trace, rec, s.u);
        if (observer) observer(k, s);
        if (rec.relative_residual < cfg.residual_tol) break;
    }
    return {std::move(s.u), std::move(trace)};
}

SolveResult solve(const Image& u0, const ForwardOp& op, const SolverConfig& cfg, const SolverChoice& choice) {
    choice.validate();
    if (choice.fidelity == Fidelity::L1) return solve_l1(u0, op, cfg);
    if (choice.regularizer == Regularizer::Anisotropic) return solve_l2_aniso(u0, op, cfg);
    if (choice.splitting == Splitting::Alternative) return solve_l2_iso_alt(u0, op, cfg);
    return solve_l2_iso(u0, op, cfg);
}

ColorSolveResult solve_rgb(const ColorImage& u0, const std::function<SolveResult(const Image&)>& solve_channel) {
    std::array<std::future<SolveResult>, 3> jobs;
    for (std::size_t c = 0; c < 3; ++c) {
        jobs[c] = std::async(std::launch::async, [&, c] { return solve_channel(u0[c]); });
    }
    ColorSolveResult out;
    for (std::size_t c = 0; c < 3; ++c) {
        SolveResult r = jobs[c].get();
        out.u[c] = std::move(r.u);
        out.traces[c] = std::move(r.trace);
    }
    return out;
}

}  // namespace bhtv
