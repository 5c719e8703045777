#pragma once

// Linear forward operators T and their adjoints: identity (denoising),
// circular convolution (deblurring) and a 0/1 mask (inpainting).

#include <optional>

#include "bhtv/grid.hpp"

namespace bhtv {

/// Normalised Gaussian on a (2r+1)^2 stencil, k(x,y) ~ exp(-(x^2+y^2)/(2 sigma^2)).
/// When `radius` is omitted it defaults to ceil(3 sigma).
Image gaussian_kernel(double sigma, std::optional<int> radius = std::nullopt);

class ForwardOp {
public:
    enum class Kind { Identity, CircularBlur, Mask };

    static ForwardOp identity();
    /// Kernel must be odd, square, nonnegative and sum to one.
    static ForwardOp circular_blur(Image kernel);
    /// 1 marks a known pixel, 0 a pixel of the inpainting domain.
    static ForwardOp mask(Image mask);

    Kind kind() const noexcept { return kind_; }
    const Image& kernel() const noexcept { return data_; }
    const Image& mask_plane() const noexcept { return data_; }

    Image apply(const Image& u) const;
    Image adjoint(const Image& y) const;

    /// Throws DimensionError when the operator cannot act on `u`.
    void check_compatible(const Image& u) const;

private:
    ForwardOp(Kind kind, Image data) : kind_(kind), data_(std::move(data)) {}

    Kind kind_;
    Image data_;
};

/// Loads a mask from a grayscale plane: any value > 0.5 is a known pixel.
Image threshold_mask(const Image& gray);

}  // namespace bhtv
