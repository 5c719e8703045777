#include "bhtv/prox.hpp"

#include <array>
#include <cmath>
#include <string>
#include <tuple>

#include "bhtv/error.hpp"

namespace bhtv {

namespace {

template <typename Field>
Field shrink_iso(Field x, ShrinkThreshold t) {
    auto planes = x.planes();
    constexpr std::size_t d = std::tuple_size_v<decltype(planes)>;
    const std::size_t n = planes[0]->size();
    std::array<double, d> a{};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t c = 0; c < d; ++c) a[c] = planes[c]->values()[k];
        shrink_vector(a, t);
        for (std::size_t c = 0; c < d; ++c) planes[c]->values()[k] = a[c];
    }
    return x;
}

template <typename Field>
Field shrink_aniso(Field x, ShrinkThreshold t) {
    for (Image* p : x.planes()) {
        for (double& v : p->values()) v = shrink_scalar(v, t);
    }
    return x;
}

}  // namespace

ShrinkThreshold::ShrinkThreshold(double t) : t_(t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ParameterError("shrink threshold must be finite and nonnegative, got " + std::to_string(t));
    }
}

void shrink_vector(std::span<double> a, ShrinkThreshold t) noexcept {
    double sq = 0.0;
    for (double x : a) sq += x * x;
    const double norm = std::sqrt(sq);
    if (norm <= t.value()) {
        for (double& x : a) x = 0.0;
        return;
    }
    const double scale = (norm - t.value()) / norm;
    for (double& x : a) x *= scale;
}

double shrink_scalar(double a, ShrinkThreshold t) noexcept {
    const double mag = std::abs(a);
    if (mag <= t.value()) return 0.0;
    return std::copysign(mag - t.value(), a);
}

GradientField shrink_field_iso(GradientField x, ShrinkThreshold t) { return shrink_iso(std::move(x), t); }
HessianField shrink_field_iso(HessianField x, ShrinkThreshold t) { return shrink_iso(std::move(x), t); }
GradientField shrink_field_aniso(GradientField x, ShrinkThreshold t) { return shrink_aniso(std::move(x), t); }
HessianField shrink_field_aniso(HessianField x, ShrinkThreshold t) { return shrink_aniso(std::move(x), t); }

Image shrink_image(Image x, ShrinkThreshold t) {
    for (double& v : x.values()) v = shrink_scalar(v, t);
    return x;
}

}  // namespace bhtv
