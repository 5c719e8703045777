#include "bhtv/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bhtv/error.hpp"

namespace bhtv {

namespace {

void require_same_shape(const Image& a, const Image& b, const char* where) {
    if (!a.same_shape(b)) throw DimensionError(std::string(where) + ": images differ in shape");
}

std::vector<double> gaussian_window_1d(int size, double sigma) {
    std::vector<double> w(size);
    const int r = size / 2;
    double total = 0.0;
    for (int k = 0; k < size; ++k) {
        const double x = k - r;
        w[k] = std::exp(-x * x / (2.0 * sigma * sigma));
        total += w[k];
    }
    for (double& x : w) x /= total;
    return w;
}

// Separable "valid" filtering: output is (n - size + 1) x (m - size + 1).
Image filter_valid(const Image& u, const std::vector<double>& w) {
    const int size = static_cast<int>(w.size());
    const int n = u.rows();
    const int m = u.cols();
    const int out_m = m - size + 1;
    const int out_n = n - size + 1;
    Image across(n, out_m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < out_m; ++j) {
            double s = 0.0;
            for (int k = 0; k < size; ++k) s += w[k] * u(i, j + k);
            across(i, j) = s;
        }
    }
    Image out(out_n, out_m);
    for (int i = 0; i < out_n; ++i) {
        for (int j = 0; j < out_m; ++j) {
            double s = 0.0;
            for (int k = 0; k < size; ++k) s += w[k] * across(i + k, j);
            out(i, j) = s;
        }
    }
    return out;
}

Image product(const Image& a, const Image& b) {
    Image out = a;
    auto o = out.values();
    const auto y = b.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] *= y[k];
    return out;
}

}  // namespace

double psnr(const Image& test, const Image& reference) {
    require_same_shape(test, reference, "psnr");
    const auto a = test.values();
    const auto b = reference.values();
    double sse = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sse += d * d;
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Image& test, const Image& reference, const SsimParams& params) {
    require_same_shape(test, reference, "ssim");
    if (params.window < 1 || params.window % 2 == 0) throw ParameterError("ssim window must be odd and positive");
    if (!(params.k1 > 0.0) || !(params.k2 > 0.0) || !(params.sigma > 0.0) || !(params.dynamic_range > 0.0)) {
        throw ParameterError("ssim constants must be positive");
    }

    int size = std::min({params.window, test.rows(), test.cols()});
    if (size % 2 == 0) --size;
    const std::vector<double> w = gaussian_window_1d(size, params.sigma);

    const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
    const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);

    const Image mu_x = filter_valid(test, w);
    const Image mu_y = filter_valid(reference, w);
    const Image xx = filter_valid(product(test, test), w);
    const Image yy = filter_valid(product(reference, reference), w);
    const Image xy = filter_valid(product(test, reference), w);

    double total = 0.0;
    for (std::size_t k = 0; k < mu_x.size(); ++k) {
        const double mx = mu_x.values()[k];
        const double my = mu_y.values()[k];
        const double sxx = xx.values()[k] - mx * mx;
        const double syy = yy.values()[k] - my * my;
        const double sxy = xy.values()[k] - mx * my;
        const double num = (2.0 * mx * my + c1) * (2.0 * sxy + c2);
        const double den = (mx * mx + my * my + c1) * (sxx + syy + c2);
        total += num / den;
    }
    return total / static_cast<double>(mu_x.size());
}

}  // namespace bhtv
