#include "bhtv/grid.hpp"

#include <cmath>

#include "bhtv/error.hpp"

namespace bhtv {

namespace {

void require_same_shape(const Image& a, const Image& b, const char* where) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(where) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

double sum_squares(const Image& u) {
    double s = 0.0;
    for (double x : u.values()) s += x * x;
    return s;
}

template <typename Field>
double field_l2(const Field& f) {
    double s = 0.0;
    for (const Image* p : f.planes()) s += sum_squares(*p);
    return std::sqrt(s);
}

template <typename Field>
double field_l1_group(const Field& f) {
    const auto planes = f.planes();
    const std::size_t n = planes[0]->size();
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double sq = 0.0;
        for (const Image* p : planes) {
            const double x = p->values()[k];
            sq += x * x;
        }
        s += std::sqrt(sq);
    }
    return s;
}

template <typename Field>
double field_l1_aniso(const Field& f) {
    double s = 0.0;
    for (const Image* p : f.planes()) s += l1(*p);
    return s;
}

template <typename Field>
double field_inner(const Field& a, const Field& b) {
    const auto pa = a.planes();
    const auto pb = b.planes();
    double s = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k) s += inner_product(*pa[k], *pb[k]);
    return s;
}

// Second difference along one axis with the one-sided boundary rules; used for
// both (Hu)_11 / (Hu)_22 and their adjoints, since the stencil matrix is symmetric.
// `at(k)` reads the k-th sample along the axis, `len` is the axis length.
template <typename Read>
double second_difference(Read at, int k, int len) {
    if (len < 2) return 0.0;
    if (k == 0) return at(1) - at(0);
    if (k == len - 1) return at(len - 2) - at(len - 1);
    return at(k + 1) - 2.0 * at(k) + at(k - 1);
}

}  // namespace

Image::Image(int rows, int cols, double fill) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) {
        throw DimensionError("image dimensions must be positive, got " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
    data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Image Image::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionError("from_rows: empty input");
    Image u(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < u.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != u.cols()) throw DimensionError("from_rows: ragged rows");
        for (int j = 0; j < u.cols(); ++j) u(i, j) = rows[i][j];
    }
    return u;
}

Image& Image::operator+=(const Image& rhs) {
    require_same_shape(*this, rhs, "Image::operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Image& Image::operator-=(const Image& rhs) {
    require_same_shape(*this, rhs, "Image::operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Image& Image::operator*=(double s) noexcept {
    for (double& x : data_) x *= s;
    return *this;
}

Image operator+(Image lhs, const Image& rhs) { return lhs += rhs; }
Image operator-(Image lhs, const Image& rhs) { return lhs -= rhs; }
Image operator*(double s, Image rhs) { return rhs *= s; }

GradientField::GradientField(Image first, Image second) : p1(std::move(first)), p2(std::move(second)) {
    require_same_shape(p1, p2, "GradientField");
}

HessianField::HessianField(Image xx, Image yy, Image xy, Image yx)
    : q11(std::move(xx)), q22(std::move(yy)), q12(std::move(xy)), q21(std::move(yx)) {
    require_same_shape(q11, q22, "HessianField");
    require_same_shape(q11, q12, "HessianField");
    require_same_shape(q11, q21, "HessianField");
}

GradientField& GradientField::operator+=(const GradientField& rhs) {
    p1 += rhs.p1;
    p2 += rhs.p2;
    return *this;
}

GradientField& GradientField::operator-=(const GradientField& rhs) {
    p1 -= rhs.p1;
    p2 -= rhs.p2;
    return *this;
}

HessianField& HessianField::operator+=(const HessianField& rhs) {
    q11 += rhs.q11;
    q22 += rhs.q22;
    q12 += rhs.q12;
    q21 += rhs.q21;
    return *this;
}

HessianField& HessianField::operator-=(const HessianField& rhs) {
    q11 -= rhs.q11;
    q22 -= rhs.q22;
    q12 -= rhs.q12;
    q21 -= rhs.q21;
    return *this;
}

GradientField operator+(GradientField lhs, const GradientField& rhs) { return lhs += rhs; }
GradientField operator-(GradientField lhs, const GradientField& rhs) { return lhs -= rhs; }
HessianField operator+(HessianField lhs, const HessianField& rhs) { return lhs += rhs; }
HessianField operator-(HessianField lhs, const HessianField& rhs) { return lhs -= rhs; }

GradientField gradient(const Image& u) {
    const int n = u.rows();
    const int m = u.cols();
    GradientField g(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            g.p1(i, j) = j < m - 1 ? u(i, j + 1) - u(i, j) : 0.0;
            g.p2(i, j) = i < n - 1 ? u(i + 1, j) - u(i, j) : 0.0;
        }
    }
    return g;
}

HessianField hessian(const Image& u) {
    const int n = u.rows();
    const int m = u.cols();
    HessianField h(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            h.q11(i, j) = second_difference([&](int c) { return u(i, c); }, j, m);
            h.q22(i, j) = second_difference([&](int r) { return u(r, j); }, i, n);
            h.q12(i, j) = (i < n - 1 && j > 0) ? u(i + 1, j) - u(i + 1, j - 1) - u(i, j) + u(i, j - 1) : 0.0;
            h.q21(i, j) = (i > 0 && j < m - 1) ? u(i, j + 1) - u(i - 1, j + 1) - u(i, j) + u(i - 1, j) : 0.0;
        }
    }
    return h;
}

Image divergence(const GradientField& v) {
    require_same_shape(v.p1, v.p2, "divergence");
    const int n = v.rows();
    const int m = v.cols();
    Image d(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            if (j < m - 1) s += v.p1(i, j);
            if (j > 0) s -= v.p1(i, j - 1);
            if (i < n - 1) s += v.p2(i, j);
            if (i > 0) s -= v.p2(i - 1, j);
            d(i, j) = s;
        }
    }
    return d;
}

Image divergence_h(const HessianField& w) {
    for (const Image* p : w.planes()) require_same_shape(w.q11, *p, "divergence_h");
    const int n = w.rows();
    const int m = w.cols();
    Image d(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double s = second_difference([&](int c) { return w.q11(i, c); }, j, m);
            s += second_difference([&](int r) { return w.q22(r, j); }, i, n);

            // Transpose of the mixed stencils, one gated term per stencil tap.
            if (i > 0 && j > 0) s += w.q12(i - 1, j);
            if (i > 0 && j < m - 1) s -= w.q12(i - 1, j + 1);
            if (i < n - 1 && j > 0) s -= w.q12(i, j);
            if (i < n - 1 && j < m - 1) s += w.q12(i, j + 1);

            if (i > 0 && j > 0) s += w.q21(i, j - 1);
            if (i < n - 1 && j > 0) s -= w.q21(i + 1, j - 1);
            if (i > 0 && j < m - 1) s -= w.q21(i, j);
            if (i < n - 1 && j < m - 1) s += w.q21(i + 1, j);
            d(i, j) = s;
        }
    }
    return d;
}

double l2(const Image& u) { return std::sqrt(sum_squares(u)); }
double l2(const GradientField& v) { return field_l2(v); }
double l2(const HessianField& w) { return field_l2(w); }

double l1(const Image& u) {
    double s = 0.0;
    for (double x : u.values()) s += std::abs(x);
    return s;
}

double l1_group(const GradientField& v) { return field_l1_group(v); }
double l1_group(const HessianField& w) { return field_l1_group(w); }
double l1_aniso(const GradientField& v) { return field_l1_aniso(v); }
double l1_aniso(const HessianField& w) { return field_l1_aniso(w); }

double inner_product(const Image& a, const Image& b) {
    require_same_shape(a, b, "inner_product");
    const auto x = a.values();
    const auto y = b.values();
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

double inner_product(const GradientField& a, const GradientField& b) { return field_inner(a, b); }
double inner_product(const HessianField& a, const HessianField& b) { return field_inner(a, b); }

bool all_finite(const Image& u) noexcept {
    for (double x : u.values()) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace bhtv
