#pragma once

// Grid types and the discrete differential operators.
//
// Indexing is 0-based (row i, column j) with row-major storage. The stencils
// are forward differences with zero trailing boundary for the gradient and
// the piecewise one-sided rules for the Hessian; div and divH are their exact
// negative adjoint / adjoint:
//
//   <-div(v), u> = <v, grad u>        <divH(w), u> = <w, H u>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bhtv {

class Image {
public:
    Image() = default;
    Image(int rows, int cols, double fill = 0.0);

    static Image from_rows(const std::vector<std::vector<double>>& rows);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const noexcept { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    bool same_shape(const Image& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    Image& operator+=(const Image& rhs);
    Image& operator-=(const Image& rhs);
    Image& operator*=(double s) noexcept;

    friend bool operator==(const Image&, const Image&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Image operator+(Image lhs, const Image& rhs);
Image operator-(Image lhs, const Image& rhs);
Image operator*(double s, Image rhs);

/// Two planes: p1 is the column-direction (j) component, p2 the row-direction (i) component.
struct GradientField {
    Image p1, p2;

    GradientField() = default;
    GradientField(int rows, int cols) : p1(rows, cols), p2(rows, cols) {}
    /// Throws DimensionError if the planes differ in shape.
    GradientField(Image first, Image second);

    int rows() const noexcept { return p1.rows(); }
    int cols() const noexcept { return p1.cols(); }

    std::array<Image*, 2> planes() noexcept { return {&p1, &p2}; }
    std::array<const Image*, 2> planes() const noexcept { return {&p1, &p2}; }

    GradientField& operator+=(const GradientField& rhs);
    GradientField& operator-=(const GradientField& rhs);

    friend bool operator==(const GradientField&, const GradientField&) = default;
};

/// Four planes: q11 = u_xx (along j), q22 = u_yy (along i), q12 and q21 the mixed terms.
struct HessianField {
    Image q11, q22, q12, q21;

    HessianField() = default;
    HessianField(int rows, int cols) : q11(rows, cols), q22(rows, cols), q12(rows, cols), q21(rows, cols) {}
    /// Throws DimensionError if the planes differ in shape.
    HessianField(Image xx, Image yy, Image xy, Image yx);

    int rows() const noexcept { return q11.rows(); }
    int cols() const noexcept { return q11.cols(); }

    std::array<Image*, 4> planes() noexcept { return {&q11, &q22, &q12, &q21}; }
    std::array<const Image*, 4> planes() const noexcept { return {&q11, &q22, &q12, &q21}; }

    HessianField& operator+=(const HessianField& rhs);
    HessianField& operator-=(const HessianField& rhs);

    friend bool operator==(const HessianField&, const HessianField&) = default;
};

GradientField operator+(GradientField lhs, const GradientField& rhs);
GradientField operator-(GradientField lhs, const GradientField& rhs);
HessianField operator+(HessianField lhs, const HessianField& rhs);
HessianField operator-(HessianField lhs, const HessianField& rhs);

/// Three independent colour planes (r, g, b).
using ColorImage = std::array<Image, 3>;

GradientField gradient(const Image& u);
HessianField hessian(const Image& u);
Image divergence(const GradientField& v);
Image divergence_h(const HessianField& w);

// Norms. l1_group sums the pixelwise Euclidean norm of the 2- or 4-vector,
// l1_aniso sums absolute values of every component.
double l2(const Image& u);
double l2(const GradientField& v);
double l2(const HessianField& w);
double l1(const Image& u);
double l1_group(const GradientField& v);
double l1_group(const HessianField& w);
double l1_aniso(const GradientField& v);
double l1_aniso(const HessianField& w);

double inner_product(const Image& a, const Image& b);
double inner_product(const GradientField& a, const GradientField& b);
double inner_product(const HessianField& a, const HessianField& b);

bool all_finite(const Image& u) noexcept;

}  // namespace bhtv
