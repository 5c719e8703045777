#include <random>
#include <vector>

#include "bhtv/error.hpp"
#include "bhtv/grid.hpp"
#include "doctest.h"
#include "stencil_oracle.hpp"
#include "support.hpp"

using namespace bhtv;
using namespace testing;

TEST_SUITE("grid") {

TEST_CASE("image construction") {
    CHECK_THROWS_AS(Image(0, 3), DimensionError);
    CHECK_THROWS_AS(Image(2, -1), DimensionError);
    CHECK_THROWS_AS(Image::from_rows({{1, 2}, {3}}), DimensionError);
    const Image u = Image::from_rows({{1, 2, 3}, {4, 5, 6}});
    CHECK(u.rows() == 2);
    CHECK(u.cols() == 3);
    CHECK(u(1, 0) == 4);
    CHECK_THROWS_AS(GradientField(Image(2, 2), Image(2, 3)), DimensionError);
}

TEST_CASE("gradient examples") {
    const Image c(3, 5, 0.7);
    const GradientField gc = gradient(c);
    CHECK(l2(gc) == 0.0);

    const GradientField g = gradient(Image::from_rows({{0, 1}, {2, 3}}));
    CHECK(g.p1 == Image::from_rows({{1, 0}, {1, 0}}));
    CHECK(g.p2 == Image::from_rows({{2, 2}, {0, 0}}));

    Image ramp(4, 5);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) ramp(i, j) = j + 1;
    const GradientField gr = gradient(ramp);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 5; ++j) {
            CHECK(gr.p1(i, j) == (j < 4 ? 1.0 : 0.0));
            CHECK(gr.p2(i, j) == 0.0);
        }
    }
}

TEST_CASE("hessian examples") {
    CHECK(l2(hessian(Image(4, 4, -2.5))) == 0.0);

    Image ramp(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) ramp(i, j) = j + 1;
    const HessianField h = hessian(ramp);
    for (int i = 0; i < 3; ++i) {
        CHECK(h.q11(i, 0) == 1.0);
        CHECK(h.q11(i, 1) == 0.0);
        CHECK(h.q11(i, 2) == 0.0);
        CHECK(h.q11(i, 3) == -1.0);
    }
    CHECK(l2(h.q22) == 0.0);
    CHECK(l2(h.q12) == 0.0);
    CHECK(l2(h.q21) == 0.0);

    const HessianField s = hessian(Image::from_rows({{0, 1}, {2, 3}}));
    CHECK(s.q11 == Image::from_rows({{1, -1}, {1, -1}}));
    CHECK(s.q22 == Image::from_rows({{2, 2}, {-2, -2}}));
    CHECK(l2(s.q12) == 0.0);
    CHECK(l2(s.q21) == 0.0);
}

TEST_CASE("divergence examples") {
    GradientField v(2, 2);
    CHECK(l2(divergence(v)) == 0.0);
    v.p1(0, 0) = 1;
    CHECK(divergence(v) == Image::from_rows({{1, -1}, {0, 0}}));
    GradientField v2(2, 2);
    v2.p2(0, 0) = 1;
    CHECK(divergence(v2) == Image::from_rows({{1, 0}, {-1, 0}}));

    HessianField w(3, 3);
    CHECK(l2(divergence_h(w)) == 0.0);
    w.q11(1, 1) = 1;
    CHECK(divergence_h(w) == Image::from_rows({{0, 0, 0}, {1, -2, 1}, {0, 0, 0}}));
}

TEST_CASE("boundary zeros") {
    std::mt19937_64 rng(11);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 7}, {7, 1}, {1, 1}, {2, 2}, {5, 6}}) {
        const Image u = testing::random_image(n, m, rng);
        const GradientField g = gradient(u);
        const HessianField h = hessian(u);
        for (int i = 0; i < n; ++i) {
            CHECK(g.p1(i, m - 1) == 0.0);
            CHECK(h.q12(i, 0) == 0.0);
            CHECK(h.q21(i, m - 1) == 0.0);
        }
        for (int j = 0; j < m; ++j) {
            CHECK(g.p2(n - 1, j) == 0.0);
            CHECK(h.q12(n - 1, j) == 0.0);
            CHECK(h.q21(0, j) == 0.0);
        }
    }
}

TEST_CASE("one-row images have no row-direction terms") {
    std::mt19937_64 rng(5);
    const Image u = testing::random_image(1, 9, rng);
    CHECK(l2(gradient(u).p2) == 0.0);
    const HessianField h = hessian(u);
    CHECK(l2(h.q22) == 0.0);
    CHECK(l2(h.q12) == 0.0);
    CHECK(l2(h.q21) == 0.0);
}

TEST_CASE("stencils match the case definitions") {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 7; ++n) {
        for (int m = 1; m <= 7; ++m) {
            const Image u = testing::random_image(n, m, rng);
            const GradientField g = gradient(u), gs = stencil_gradient(u);
            CHECK(max_abs_diff(g.p1, gs.p1) == 0.0);
            CHECK(max_abs_diff(g.p2, gs.p2) == 0.0);
            if (n < 2 || m < 2) continue;
            const HessianField h = hessian(u), hs = stencil_hessian(u);
            for (std::size_t k = 0; k < 4; ++k) CHECK(max_abs_diff(*h.planes()[k], *hs.planes()[k]) == 0.0);
        }
    }
}

TEST_CASE("divergences match the case tables") {
    std::mt19937_64 rng(2);
    for (int n = 2; n <= 9; ++n) {
        for (int m = 2; m <= 9; ++m) {
            const GradientField v = testing::random_gradient_field(n, m, rng);
            const HessianField w = testing::random_hessian_field(n, m, rng);
            CHECK(max_abs_diff(divergence(v), table_divergence(v)) <= 1e-14);
            CHECK(max_abs_diff(divergence_h(w), table_divergence_h(w)) <= 1e-14);
        }
    }
}

TEST_CASE("adjointness on random instances") {
    std::mt19937_64 rng(3);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{8, 13}, {16, 16}, {1, 7}, {4, 1}}) {
        for (int rep = 0; rep < 100; ++rep) {
            const Image u = testing::random_image(n, m, rng);
            const GradientField v = testing::random_gradient_field(n, m, rng);
            const HessianField w = testing::random_hessian_field(n, m, rng);
            const double lhs1 = -inner_product(divergence(v), u);
            const double rhs1 = inner_product(v, gradient(u));
            CHECK(std::abs(lhs1 - rhs1) <= 1e-12 * (l2(v) * l2(gradient(u)) + 1));
            const double lhs2 = inner_product(divergence_h(w), u);
            const double rhs2 = inner_product(w, hessian(u));
            CHECK(std::abs(lhs2 - rhs2) <= 1e-12 * (l2(w) * l2(hessian(u)) + 1));
        }
    }
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(4);
    const Image u = testing::random_image(6, 9, rng), v = testing::random_image(6, 9, rng);
    const Image combo = 2.5 * u + (-0.75) * v;
    const GradientField g = gradient(combo);
    const GradientField gl(2.5 * gradient(u).p1 + (-0.75) * gradient(v).p1,
                           2.5 * gradient(u).p2 + (-0.75) * gradient(v).p2);
    CHECK(max_abs_diff(g.p1, gl.p1) <= 1e-12);
    CHECK(max_abs_diff(g.p2, gl.p2) <= 1e-12);
    const HessianField h = hessian(combo), hu = hessian(u), hv = hessian(v);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(max_abs_diff(*h.planes()[k], 2.5 * *hu.planes()[k] + (-0.75) * *hv.planes()[k]) <= 1e-12);
    }
}

TEST_CASE("norms") {
    CHECK(l2(Image::from_rows({{3, 0}, {0, 4}})) == doctest::Approx(5.0).epsilon(1e-15));
    const GradientField v(Image(2, 2, 3.0), Image(2, 2, 4.0));
    CHECK(l1_group(v) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(l1_aniso(v) == doctest::Approx(28.0).epsilon(1e-15));
    const HessianField w(Image(1, 2, 1.0), Image(1, 2, 1.0), Image(1, 2, -1.0), Image(1, 2, 1.0));
    CHECK(l1_group(w) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(l1_aniso(w) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(l2(GradientField(3, 3)) == 0.0);
    CHECK(l1_group(HessianField(3, 3)) == 0.0);
    CHECK(l1(Image(2, 5)) == 0.0);
    CHECK(inner_product(Image(2, 2, 2.0), Image(2, 2, 3.0)) == 24.0);
    CHECK_THROWS_AS(inner_product(Image(2, 2), Image(2, 3)), DimensionError);
    CHECK_THROWS_AS(inner_product(GradientField(2, 2), GradientField(3, 2)), DimensionError);
}

TEST_CASE("all_finite") {
    Image u(2, 2);
    CHECK(all_finite(u));
    u(1, 1) = std::nan("");
    CHECK_FALSE(all_finite(u));
}

}  // TEST_SUITE
