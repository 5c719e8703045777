#include "bhtv/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bhtv/error.hpp"

namespace bhtv {

NoiseSpec NoiseSpec::gaussian(double variance, std::uint64_t seed) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) throw ParameterError("noise variance must be nonnegative");
    return {Kind::Gaussian, variance, seed};
}

NoiseSpec NoiseSpec::impulse(double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) throw ParameterError("impulse density must lie in [0,1]");
    return {Kind::Impulse, density, seed};
}

Image make_geometric(int height, int width) {
    if (height < 16 || width < 16) {
        throw ParameterError("make_geometric needs at least 16x16, got " + std::to_string(height) + "x" +
                             std::to_string(width));
    }
    // Layout is defined on a 300x200 reference canvas and scaled to the request.
    const auto tent = [](double t) {
        t -= std::floor(t);
        return t < 0.5 ? 2.0 * t : 2.0 - 2.0 * t;
    };
    Image u(height, width);
    for (int i = 0; i < height; ++i) {
        const double y = (i + 0.5) * 200.0 / height;
        for (int j = 0; j < width; ++j) {
            const double x = (j + 0.5) * 300.0 / width;

            // background of square pyramids, period 50
            double v = 0.2 + 0.5 * std::min(tent(x / 50.0), tent(y / 50.0 + 0.25));

            // horizontal ramp through the middle rows
            if (y > 80 && y < 120 && x > 15 && x < 135) v = 0.15 + 0.7 * (x - 15) / 120;

            // flat disc, also crossed by the middle row
            const double dx = x - 205, dy = y - 105;
            if (dx * dx + dy * dy <= 30.0 * 30.0) v = 0.9;

            // rectangle, upper right
            if (y > 15 && y < 60 && x > 170 && x < 280) v = 0.1;

            u(i, j) = v;
        }
    }
    return u;
}

int stripe_half_width(int height, int width) {
    return std::max(1, static_cast<int>(std::lround(0.1 * std::min(height, width))));
}

StripeScene make_stripe(int height, int width, StripeAngle angle, double gap_fraction) {
    if (height < 1 || width < 1) throw ParameterError("make_stripe: dimensions must be positive");
    if (!(gap_fraction >= 0.0 && gap_fraction < 1.0)) {
        throw ParameterError("gap_fraction must lie in [0,1), got " + std::to_string(gap_fraction));
    }
    const int half = stripe_half_width(height, width);
    const int centre_row = height / 2;
    const int offset = height / 2 - width / 2;

    StripeScene s{Image(height, width), Image(height, width, 1.0)};
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            const bool on = angle == StripeAngle::Deg0 ? std::abs(i - centre_row) <= half
                                                       : std::abs(i - j - offset) <= half;
            s.image(i, j) = on ? 1.0 : 0.0;
        }
    }

    const int gap = static_cast<int>(std::lround(gap_fraction * width));
    const int first = (width - gap) / 2;
    for (int i = 0; i < height; ++i) {
        for (int j = first; j < first + gap; ++j) s.mask(i, j) = 0.0;
    }
    return s;
}

Image gaussian_perturbation(int rows, int cols, double variance, std::uint64_t seed) {
    Image e(rows, cols);
    if (variance == 0.0) return e;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(variance));
    for (double& x : e.values()) x = normal(rng);
    return e;
}

Image add_noise(const Image& u, const NoiseSpec& spec) {
    Image out = u;
    if (spec.level == 0.0) return out;
    if (spec.kind == NoiseSpec::Kind::Gaussian) {
        out += gaussian_perturbation(u.rows(), u.cols(), spec.level, spec.seed);
        for (double& x : out.values()) x = std::clamp(x, 0.0, 1.0);
        return out;
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (double& x : out.values()) {
        const double draw = uniform(rng);
        const double value = uniform(rng);
        if (draw < spec.level) x = value;
    }
    return out;
}

}  // namespace bhtv
