#include "azurep/matrix.hpp"

#include <sstream>

namespace azurep {

Mat::Mat(ExactField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

Mat Mat::identity(ExactField field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
}

Mat Mat::from_rows(ExactField field, const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Vec Mat::row(std::size_t r) const {
    return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

Vec Mat::col(std::size_t c) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Scalar Mat::trace() const {
    if (rows_ != cols_) throw InputError("trace of a non-square matrix");
    Scalar s = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) s += at(i, i);
    return s;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix shape mismatch in +");
    Mat out = a;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
    return out;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix shape mismatch in -");
    Mat out = a;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
    return out;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in *");
    Mat out(a.field_, a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.at(r, k);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const Scalar& y = b.at(k, c);
                if (!y.is_zero()) out.at(r, c) += x * y;
            }
        }
    return out;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols() != v.size()) throw InputError("matrix/vector shape mismatch");
    Vec out(a.rows(), a.field().zero());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!a.at(r, c).is_zero() && !v[c].is_zero()) out[r] += a.at(r, c) * v[c];
    return out;
}

Mat Mat::operator*(const Scalar& s) const {
    Mat out = *this;
    for (auto& x : out.a_) x *= s;
    return out;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r == 0 ? "[" : " ");
        for (std::size_t c = 0; c < cols_; ++c) os << at(r, c).str() << (c + 1 < cols_ ? " " : "");
        os << (r + 1 < rows_ ? "\n" : "]");
    }
    return os.str();
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("vector length mismatch");
    Vec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("vector length mismatch");
    Vec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

Vec scale(const Scalar& c, const Vec& v) {
    Vec out = v;
    for (auto& x : out) x *= c;
    return out;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec zero_vec(ExactField field, std::size_t n) { return Vec(n, field.zero()); }

Vec unit_vec(ExactField field, std::size_t n, std::size_t i) {
    Vec v(n, field.zero());
    v[i] = field.one();
    return v;
}

std::size_t rref(Mat& m, std::vector<std::size_t>* pivots) {
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t pivot = lead;
        while (pivot < m.rows() && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != lead)
            for (std::size_t k = c; k < m.cols(); ++k) std::swap(m.at(pivot, k), m.at(lead, k));
        const Scalar inv = m.at(lead, c).inverse();
        for (std::size_t k = c; k < m.cols(); ++k) m.at(lead, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m.at(r, c).is_zero()) continue;
            const Scalar f = m.at(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) {
                if (!m.at(lead, k).is_zero()) m.at(r, k) -= f * m.at(lead, k);
            }
        }
        if (pivots) pivots->push_back(c);
        ++lead;
    }
    return lead;
}

std::size_t rank(Mat m) { return rref(m); }

bool is_invertible(const Mat& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Mat aug(m.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = m.field().one();
    }
    if (rref(aug) != n) return std::nullopt;
    // rank n on an n x 2n system means the left block reduced to the identity
    Mat inv(m.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    for (std::size_t i = 0; i < n; ++i)
        if (!aug.at(i, i).is_one()) return std::nullopt;
    return inv;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.rows() != b.size()) throw InputError("solve: shape mismatch");
    Mat aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<std::size_t> pivots;
    rref(aug, &pivots);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt; // 0 = 1 row
    Vec x(a.cols(), a.field().zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols());
    return x;
}

std::vector<Vec> null_space(const Mat& a) {
    Mat m = a;
    std::vector<std::size_t> pivots;
    rref(m, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(a.cols(), a.field().zero());
        v[free] = a.field().one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> span_basis(ExactField field, const std::vector<Vec>& vectors, std::size_t dim) {
    Mat m = Mat::from_rows(field, vectors, dim);
    std::size_t r = rref(m);
    std::vector<Vec> basis;
    basis.reserve(r);
    for (std::size_t i = 0; i < r; ++i) basis.push_back(m.row(i));
    return basis;
}

bool spans_equal(ExactField field, const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim) {
    return span_basis(field, a, dim) == span_basis(field, b, dim);
}

bool in_span(ExactField field, const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) return is_zero(v);
    std::vector<Vec> rows = basis;
    const std::size_t dim = v.size();
    const std::size_t r0 = span_basis(field, rows, dim).size();
    rows.push_back(v);
    return span_basis(field, rows, dim).size() == r0;
}

Mat kronecker(const Mat& a, const Mat& b) {
    Mat out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (a.at(r, c).is_zero()) continue;
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out.at(r * b.rows() + i, c * b.cols() + j) = a.at(r, c) * b.at(i, j);
        }
    return out;
}

} // namespace azurep
