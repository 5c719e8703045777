#pragma once

// Independent transcriptions of the stencils and their case tables, written
// with 1-based (i, j) exactly as the formulas are usually stated.

#include "bhtv/grid.hpp"

namespace testing {

using bhtv::GradientField;
using bhtv::HessianField;
using bhtv::Image;

struct OneBased {
    const Image& u;
    double operator()(int i, int j) const { return u(i - 1, j - 1); }
};

inline GradientField stencil_gradient(const Image& img) {
    const int n = img.rows(), m = img.cols();
    OneBased u{img};
    GradientField g(n, m);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            g.p1(i - 1, j - 1) = j < m ? u(i, j + 1) - u(i, j) : 0.0;
            g.p2(i - 1, j - 1) = i < n ? u(i + 1, j) - u(i, j) : 0.0;
        }
    }
    return g;
}

// Valid for n, m >= 2.
inline HessianField stencil_hessian(const Image& img) {
    const int n = img.rows(), m = img.cols();
    OneBased u{img};
    HessianField h(n, m);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            double xx;
            if (j == 1) xx = u(i, j + 1) - u(i, j);
            else if (j == m) xx = u(i, j - 1) - u(i, j);
            else xx = u(i, j + 1) - 2 * u(i, j) + u(i, j - 1);
            double yy;
            if (i == 1) yy = u(i + 1, j) - u(i, j);
            else if (i == n) yy = u(i - 1, j) - u(i, j);
            else yy = u(i + 1, j) - 2 * u(i, j) + u(i - 1, j);
            h.q11(i - 1, j - 1) = xx;
            h.q22(i - 1, j - 1) = yy;
            h.q12(i - 1, j - 1) = (i < n && j > 1) ? u(i + 1, j) - u(i + 1, j - 1) - u(i, j) + u(i, j - 1) : 0.0;
            h.q21(i - 1, j - 1) = (i > 1 && j < m) ? u(i, j + 1) - u(i - 1, j + 1) - u(i, j) + u(i - 1, j) : 0.0;
        }
    }
    return h;
}

inline Image table_divergence(const GradientField& v) {
    const int n = v.rows(), m = v.cols();
    OneBased v1{v.p1}, v2{v.p2};
    Image d(n, m);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            double a;
            if (j == 1) a = v1(i, j);
            else if (j == m) a = -v1(i, j - 1);
            else a = v1(i, j) - v1(i, j - 1);
            double b;
            if (i == 1) b = v2(i, j);
            else if (i == n) b = -v2(i - 1, j);
            else b = v2(i, j) - v2(i - 1, j);
            d(i - 1, j - 1) = a + b;
        }
    }
    return d;
}

// Valid for n, m >= 2. The first mixed-term case is the interior 1<i<n, 1<j<m.
inline Image table_divergence_h(const HessianField& w) {
    const int n = w.rows(), m = w.cols();
    OneBased w11{w.q11}, w22{w.q22}, w12{w.q12}, w21{w.q21};
    Image d(n, m);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            double a;
            if (j == 1) a = w11(i, j + 1) - w11(i, j);
            else if (j == m) a = w11(i, j - 1) - w11(i, j);
            else a = w11(i, j - 1) - 2 * w11(i, j) + w11(i, j + 1);

            double b;
            if (i == 1) b = w22(i + 1, j) - w22(i, j);
            else if (i == n) b = w22(i - 1, j) - w22(i, j);
            else b = w22(i - 1, j) - 2 * w22(i, j) + w22(i + 1, j);

            const bool top = i == 1, bottom = i == n, left = j == 1, right = j == m;
            double c;
            if (!top && !bottom && !left && !right) c = w12(i - 1, j) - w12(i, j) - w12(i - 1, j + 1) + w12(i, j + 1);
            else if (top && !left && !right) c = w12(i, j + 1) - w12(i, j);
            else if (bottom && !left && !right) c = w12(i - 1, j) - w12(i - 1, j + 1);
            else if (!top && !bottom && left) c = w12(i, j + 1) - w12(i - 1, j + 1);
            else if (!top && !bottom && right) c = w12(i - 1, j) - w12(i, j);
            else if (top && left) c = w12(i, j + 1);
            else if (top && right) c = -w12(i, j);
            else if (bottom && left) c = -w12(i - 1, j + 1);
            else c = w12(i - 1, j);

            double e;
            if (!top && !bottom && !left && !right) e = w21(i, j - 1) - w21(i, j) - w21(i + 1, j - 1) + w21(i + 1, j);
            else if (top && !left && !right) e = w21(i + 1, j) - w21(i + 1, j - 1);
            else if (bottom && !left && !right) e = w21(i, j - 1) - w21(i, j);
            else if (!top && !bottom && left) e = w21(i + 1, j) - w21(i, j);
            else if (!top && !bottom && right) e = w21(i, j - 1) - w21(i + 1, j - 1);
            else if (top && left) e = w21(i + 1, j);
            else if (top && right) e = -w21(i + 1, j - 1);
            else if (bottom && left) e = -w21(i, j);
            else e = w21(i, j - 1);

            d(i - 1, j - 1) = a + b + c + e;
        }
    }
    return d;
}

}  // namespace testing
