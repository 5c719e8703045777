#include "bhtv/cg.hpp"

#include <cmath>

#include "bhtv/error.hpp"

namespace bhtv {

namespace {

// y += a * x
void axpy(double a, const Image& x, Image& y) {
    const auto xs = x.values();
    auto ys = y.values();
    for (std::size_t k = 0; k < ys.size(); ++k) ys[k] += a * xs[k];
}

// p = r + b * p
void xpby(const Image& r, double b, Image& p) {
    const auto rs = r.values();
    auto ps = p.values();
    for (std::size_t k = 0; k < ps.size(); ++k) ps[k] = rs[k] + b * ps[k];
}

}  // namespace

CgResult cg_solve(const LinearMap& system, const Image& rhs, Image x0, const InnerSolverConfig& cfg) {
    if (!rhs.same_shape(x0)) throw DimensionError("cg_solve: rhs and initial guess differ in shape");

    CgResult out;
    out.x = std::move(x0);

    const double rhs_norm = l2(rhs);
    const double scale = rhs_norm > 0.0 ? rhs_norm : 1.0;

    Image r = rhs - system(out.x);
    double rr = inner_product(r, r);
    out.relative_residual = std::sqrt(rr) / scale;
    if (rr == 0.0) return out;

    Image p = r;
    while (out.iterations < cfg.max_cg_iters && out.relative_residual >= cfg.cg_tol) {
        const Image ap = system(p);
        const double curvature = inner_product(p, ap);
        if (!(curvature > 0.0)) {
            out.breakdown = true;
            break;
        }
        const double step = rr / curvature;
        axpy(step, p, out.x);
        axpy(-step, ap, r);
        ++out.iterations;

        const double rr_next = inner_product(r, r);
        out.relative_residual = std::sqrt(rr_next) / scale;
        if (rr_next == 0.0) break;
        xpby(r, rr_next / rr, p);
        rr = rr_next;
    }
    return out;
}

}  // namespace bhtv
