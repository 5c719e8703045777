#pragma once

// Deterministic test images and seeded noise models.

#include <cstdint>
#include <utility>

#include "bhtv/grid.hpp"

namespace bhtv {

struct NoiseSpec {
    enum class Kind { Gaussian, Impulse };
    Kind kind = Kind::Gaussian;
    /// Variance for Gaussian noise, replacement density for impulse noise.
    double level = 0.0;
    std::uint64_t seed = 0;

    static NoiseSpec gaussian(double variance, std::uint64_t seed);
    static NoiseSpec impulse(double density, std::uint64_t seed);
};

/// Piecewise-affine scene in [0,1]: a background of square pyramids, a
/// horizontal ramp and a flat disc both crossed by the middle row, and a flat
/// rectangle.
/// Both dimensions must be at least 16.
Image make_geometric(int height, int width);

enum class StripeAngle { Deg0, Deg45 };

struct StripeScene {
    Image image;  ///< 1 on the stripe, 0 elsewhere
    Image mask;   ///< 1 = known pixel, 0 = central gap to inpaint
};

/// Stripe through the image centre with a band of columns of relative width
/// `gap_fraction` removed from the middle. gap_fraction must lie in [0, 1).
StripeScene make_stripe(int height, int width, StripeAngle angle, double gap_fraction);

/// Stripe half-width in pixels used by make_stripe.
int stripe_half_width(int height, int width);

/// Gaussian: u + N(0, variance) per pixel, clamped to [0,1].
/// Impulse: each pixel replaced with probability `density` by a U[0,1] draw.
Image add_noise(const Image& u, const NoiseSpec& spec);

/// Noise added before clamping; used to check the Gaussian sampler.
Image gaussian_perturbation(int rows, int cols, double variance, std::uint64_t seed);

}  // namespace bhtv
