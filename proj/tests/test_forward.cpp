#include <cmath>
#include <random>

#include "bhtv/error.hpp"
#include "bhtv/forward.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bhtv;
using testing::max_abs_diff;

namespace {

// Direct periodic convolution, (k * u)(i, j) = sum_{x,y} k(x, y) u(i - x, j - y)
// with x, y in [-r, r].
Image periodic_convolution(const Image& u, const Image& k) {
    const int n = u.rows(), m = u.cols(), r = k.rows() / 2;
    Image out(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double s = 0;
            for (int x = -r; x <= r; ++x) {
                for (int y = -r; y <= r; ++y) {
                    const int ii = ((i - x) % n + n) % n;
                    const int jj = ((j - y) % m + m) % m;
                    s += k(x + r, y + r) * u(ii, jj);
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

Image asymmetric_kernel() {
    Image k = Image::from_rows({{0.05, 0.10, 0.0}, {0.20, 0.30, 0.05}, {0.0, 0.15, 0.15}});
    return k;
}

}  // namespace

TEST_SUITE("forward") {

TEST_CASE("gaussian kernel") {
    CHECK_THROWS_AS(gaussian_kernel(0.0), ParameterError);
    CHECK_THROWS_AS(gaussian_kernel(-1.0), ParameterError);
    CHECK_THROWS_AS(gaussian_kernel(1.0, -1), ParameterError);

    const Image k = gaussian_kernel(2.0);
    CHECK(k.rows() == 13);  // ceil(3 sigma) = 6
    CHECK(k.cols() == 13);
    double sum = 0;
    for (double x : k.values()) sum += x;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (int x = 0; x < 13; ++x)
        for (int y = 0; y < 13; ++y) CHECK(k(x, y) == k(12 - x, 12 - y));
    // ratio of neighbouring weights follows the Gaussian profile
    CHECK(k(6, 7) / k(6, 6) == doctest::Approx(std::exp(-1.0 / 8.0)).epsilon(1e-12));

    const Image delta = gaussian_kernel(0.05, 1);
    CHECK(delta.rows() == 3);
    CHECK(delta(1, 1) > 0.999);
}

TEST_CASE("kernel and mask validation") {
    CHECK_THROWS_AS(ForwardOp::circular_blur(Image(2, 2, 0.25)), ParameterError);
    CHECK_THROWS_AS(ForwardOp::circular_blur(Image(3, 1, 1.0 / 3)), ParameterError);
    CHECK_THROWS_AS(ForwardOp::circular_blur(Image(3, 3, 0.2)), ParameterError);
    Image neg(3, 3);
    neg(1, 1) = 1.5;
    neg(0, 0) = -0.5;
    CHECK_THROWS_AS(ForwardOp::circular_blur(neg), ParameterError);
    CHECK_THROWS_AS(ForwardOp::mask(Image(2, 2, 0.5)), ParameterError);

    const ForwardOp m = ForwardOp::mask(Image(3, 3, 1.0));
    CHECK_THROWS_AS(m.apply(Image(3, 4)), DimensionError);
    CHECK_THROWS_AS(m.adjoint(Image(4, 3)), DimensionError);
}

TEST_CASE("identity and trivial cases") {
    std::mt19937_64 rng(31);
    const Image u = testing::random_image(5, 8, rng);
    CHECK(ForwardOp::identity().apply(u) == u);
    CHECK(ForwardOp::identity().adjoint(u) == u);
    CHECK(ForwardOp::mask(Image(5, 8, 1.0)).apply(u) == u);

    const Image c(7, 9, 0.37);
    const Image blurred = ForwardOp::circular_blur(gaussian_kernel(1.3)).apply(c);
    CHECK(max_abs_diff(blurred, c) <= 1e-15);
}

TEST_CASE("circular convolution matches a direct periodic sum") {
    std::mt19937_64 rng(32);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{9, 11}, {4, 3}, {2, 2}, {1, 6}}) {
        const Image u = testing::random_image(n, m, rng);
        for (const Image& k : {asymmetric_kernel(), gaussian_kernel(1.0), gaussian_kernel(0.8, 3)}) {
            CHECK(max_abs_diff(ForwardOp::circular_blur(k).apply(u), periodic_convolution(u, k)) <= 1e-13);
        }
    }
}

TEST_CASE("adjointness") {
    std::mt19937_64 rng(33);
    Image mask(9, 11);
    std::bernoulli_distribution coin(0.6);
    for (double& x : mask.values()) x = coin(rng) ? 1.0 : 0.0;
    const ForwardOp ops[] = {ForwardOp::identity(), ForwardOp::circular_blur(asymmetric_kernel()),
                             ForwardOp::circular_blur(gaussian_kernel(2.0)), ForwardOp::mask(mask)};
    for (const ForwardOp& op : ops) {
        for (int rep = 0; rep < 20; ++rep) {
            const Image u = testing::random_image(9, 11, rng), y = testing::random_image(9, 11, rng);
            const double lhs = inner_product(op.apply(u), y);
            const double rhs = inner_product(u, op.adjoint(y));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (l2(u) * l2(y) + 1));
        }
    }
}

TEST_CASE("symmetric kernels are self-adjoint, masks idempotent") {
    std::mt19937_64 rng(34);
    const Image u = testing::random_image(10, 7, rng);
    const ForwardOp blur = ForwardOp::circular_blur(gaussian_kernel(1.5));
    CHECK(max_abs_diff(blur.apply(u), blur.adjoint(u)) <= 1e-12);

    Image mask(10, 7, 1.0);
    for (int j = 2; j < 5; ++j) mask(4, j) = 0.0;
    const ForwardOp m = ForwardOp::mask(mask);
    CHECK(m.adjoint(u) == m.apply(u));
    CHECK(m.apply(m.apply(u)) == m.apply(u));
    CHECK(m.apply(u)(4, 3) == 0.0);
}

TEST_CASE("blur preserves the mean") {
    std::mt19937_64 rng(35);
    const Image u = testing::random_image(12, 17, rng);
    const Image b = ForwardOp::circular_blur(asymmetric_kernel()).apply(u);
    double su = 0, sb = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        su += u.values()[k];
        sb += b.values()[k];
    }
    CHECK(std::abs(su - sb) / u.size() <= 1e-12);
}

TEST_CASE("threshold_mask") {
    const Image m = threshold_mask(Image::from_rows({{0.0, 0.5, 0.51}, {1.0, 0.2, 0.9}}));
    CHECK(m == Image::from_rows({{0, 0, 1}, {1, 0, 1}}));
}

}  // TEST_SUITE
