#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "azurep/field.hpp"

namespace azurep {

/// Dense matrix over an exact field. Row-major storage.
class Mat {
public:
    Mat() = default;
    Mat(ExactField field, std::size_t rows, std::size_t cols);

    static Mat identity(ExactField field, std::size_t n);
    /// Builds a matrix whose rows are the given vectors (all same length).
    static Mat from_rows(ExactField field, const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const ExactField& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;
    Mat transpose() const;
    Scalar trace() const;
    bool is_zero() const;

    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Vec operator*(const Mat& a, const Vec& v);
    Mat operator*(const Scalar& s) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::string str() const;

private:
    ExactField field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
bool is_zero(const Vec& v);
Vec zero_vec(ExactField field, std::size_t n);
Vec unit_vec(ExactField field, std::size_t n, std::size_t i);

/// In-place reduced row echelon form. Returns the rank; pivot column indices
/// are appended to *pivots when given.
std::size_t rref(Mat& m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(Mat m);
bool is_invertible(const Mat& m);
std::optional<Mat> inverse(const Mat& m);

/// One solution x of Ax = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

/// Basis of {x : Ax = 0}, one vector per free column, deterministic order.
std::vector<Vec> null_space(const Mat& a);

/// Canonical basis (nonzero rref rows) of the span of the given vectors.
std::vector<Vec> span_basis(ExactField field, const std::vector<Vec>& vectors, std::size_t dim);

bool spans_equal(ExactField field, const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim);

/// True iff v lies in the span of the (already canonical or not) basis.
bool in_span(ExactField field, const std::vector<Vec>& basis, const Vec& v);

/// Kronecker product, row-major block convention.
Mat kronecker(const Mat& a, const Mat& b);

} // namespace azurep
