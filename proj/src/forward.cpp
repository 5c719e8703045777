#include "bhtv/forward.hpp"

#include <cmath>
#include <string>

#include "bhtv/error.hpp"

namespace bhtv {

namespace {

int wrap(int k, int n) noexcept {
    const int r = k % n;
    return r < 0 ? r + n : r;
}

// sign = +1 convolves, sign = -1 correlates (the adjoint).
Image circular_filter(const Image& u, const Image& kernel, int sign) {
    const int n = u.rows();
    const int m = u.cols();
    const int r = kernel.rows() / 2;
    Image out(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int x = -r; x <= r; ++x) {
                const int row = wrap(i - sign * x, n);
                for (int y = -r; y <= r; ++y) {
                    s += kernel(x + r, y + r) * u(row, wrap(j - sign * y, m));
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

Image masked(const Image& u, const Image& mask) {
    Image out = u;
    const auto w = mask.values();
    auto v = out.values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] *= w[k];
    return out;
}

}  // namespace

Image gaussian_kernel(double sigma, std::optional<int> radius) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("gaussian_kernel: sigma must be positive, got " + std::to_string(sigma));
    }
    const int r = radius.value_or(static_cast<int>(std::ceil(3.0 * sigma)));
    if (r < 1) throw ParameterError("gaussian_kernel: radius must be positive, got " + std::to_string(r));

    Image k(2 * r + 1, 2 * r + 1);
    double total = 0.0;
    for (int x = -r; x <= r; ++x) {
        for (int y = -r; y <= r; ++y) {
            const double v = std::exp(-static_cast<double>(x * x + y * y) / (2.0 * sigma * sigma));
            k(x + r, y + r) = v;
            total += v;
        }
    }
    k *= 1.0 / total;
    return k;
}

ForwardOp ForwardOp::identity() { return ForwardOp(Kind::Identity, Image{}); }

ForwardOp ForwardOp::circular_blur(Image kernel) {
    if (kernel.empty() || kernel.rows() != kernel.cols() || kernel.rows() % 2 == 0) {
        throw ParameterError("blur kernel must be a nonempty odd square array");
    }
    double total = 0.0;
    for (double v : kernel.values()) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("blur kernel entries must be nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ParameterError("blur kernel must sum to 1, got " + std::to_string(total));
    }
    return ForwardOp(Kind::CircularBlur, std::move(kernel));
}

ForwardOp ForwardOp::mask(Image mask) {
    if (mask.empty()) throw ParameterError("mask must be nonempty");
    for (double v : mask.values()) {
        if (v != 0.0 && v != 1.0) throw ParameterError("mask entries must be 0 or 1");
    }
    return ForwardOp(Kind::Mask, std::move(mask));
}

void ForwardOp::check_compatible(const Image& u) const {
    if (kind_ == Kind::Mask && !data_.same_shape(u)) {
        throw DimensionError("mask is " + std::to_string(data_.rows()) + "x" + std::to_string(data_.cols()) +
                             " but image is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    }
}

Image ForwardOp::apply(const Image& u) const {
    check_compatible(u);
    switch (kind_) {
        case Kind::Identity: return u;
        case Kind::CircularBlur: return circular_filter(u, data_, +1);
        case Kind::Mask: return masked(u, data_);
    }
    return u;
}

Image ForwardOp::adjoint(const Image& y) const {
    check_compatible(y);
    switch (kind_) {
        case Kind::Identity: return y;
        case Kind::CircularBlur: return circular_filter(y, data_, -1);
        case Kind::Mask: return masked(y, data_);
    }
    return y;
}

Image threshold_mask(const Image& gray) {
    Image m(gray.rows(), gray.cols());
    const auto g = gray.values();
    auto out = m.values();
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = g[k] > 0.5 ? 1.0 : 0.0;
    return m;
}

}  // namespace bhtv
