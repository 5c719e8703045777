#pragma once

// Shrinkage (proximal) maps for the group and componentwise 1-norms.

#include <span>

#include "bhtv/grid.hpp"

namespace bhtv {

/// Nonnegative finite shrinkage threshold (1/lambda, alpha/lambda or beta/lambda).
class ShrinkThreshold {
public:
    explicit ShrinkThreshold(double t);
    double value() const noexcept { return t_; }

private:
    double t_;
};

/// In-place vector shrinkage: a <- max(|a| - t, 0) a / |a|, with a = 0 mapped to 0.
/// This is the minimiser of |x|_2 + |x - a|_2^2 / (2t).
void shrink_vector(std::span<double> a, ShrinkThreshold t) noexcept;

double shrink_scalar(double a, ShrinkThreshold t) noexcept;

GradientField shrink_field_iso(GradientField x, ShrinkThreshold t);
HessianField shrink_field_iso(HessianField x, ShrinkThreshold t);
GradientField shrink_field_aniso(GradientField x, ShrinkThreshold t);
HessianField shrink_field_aniso(HessianField x, ShrinkThreshold t);
Image shrink_image(Image x, ShrinkThreshold t);

}  // namespace bhtv
