#include "azurep/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace azurep::alg {

namespace {

/// Sparse accumulator over a fixed-dimension scratch space.
class Accum {
public:
    Accum(ExactField field, std::size_t dim) : field_(field), dense_(dim, field.zero()) {}

    void add(std::uint32_t idx, const Scalar& v) {
        if (dense_[idx].is_zero() && !v.is_zero()) touched_.push_back(idx);
        dense_[idx] += v;
    }

    SparseRow take() {
        std::sort(touched_.begin(), touched_.end());
        SparseRow row;
        row.reserve(touched_.size());
        for (auto idx : touched_) {
            if (!dense_[idx].is_zero()) row.push_back({idx, dense_[idx]});
            dense_[idx] = field_.zero();
        }
        touched_.clear();
        return row;
    }

private:
    ExactField field_;
    Vec dense_;
    std::vector<std::uint32_t> touched_;
};

SparseRow sparsify(const Vec& v) {
    SparseRow row;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) row.push_back({static_cast<std::uint32_t>(i), v[i]});
    return row;
}

} // namespace

StructureAlgebra::StructureAlgebra(ExactField field, std::size_t dim, std::vector<SparseRow> table,
                                   Vec unit)
    : field_(field), dim_(dim), table_(std::move(table)), unit_(std::move(unit)) {
    if (dim_ == 0) throw InputError("algebra dimension must be positive");
    if (table_.size() != dim_ * dim_) throw InputError("structure constant table has wrong size");
    if (unit_.size() != dim_) throw InputError("unit vector has wrong length");
    for (auto& row : table_)
        for (auto& e : row) {
            if (e.index >= dim_) throw InputError("structure constant index out of range");
            if (!(e.value.field() == field_)) throw InputError("structure constant in wrong field");
        }
    for (auto& x : unit_)
        if (!(x.field() == field_)) throw InputError("unit coordinate in wrong field");
    validate();
}

StructureAlgebra StructureAlgebra::from_dense(ExactField field, std::size_t dim,
                                              const std::vector<Scalar>& constants, Vec unit) {
    if (constants.size() != dim * dim * dim)
        throw InputError("dense structure constants must have dim^3 entries");
    std::vector<SparseRow> table(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            SparseRow row;
            for (std::size_t k = 0; k < dim; ++k) {
                const Scalar& c = constants[(i * dim + j) * dim + k];
                if (!c.is_zero()) row.push_back({static_cast<std::uint32_t>(k), c});
            }
            table[i * dim + j] = std::move(row);
        }
    return StructureAlgebra(field, dim, std::move(table), std::move(unit));
}

void StructureAlgebra::validate() const {
    // unit laws
    for (std::size_t i = 0; i < dim_; ++i) {
        const Vec bi = basis_element(i);
        if (multiply(unit_, bi) != bi || multiply(bi, unit_) != bi)
            throw InputError("unit law fails on basis element " + std::to_string(i));
    }
    // associativity on basis triples, sparse accumulation per (i,j,k)
    Accum lhs(field_, dim_), rhs(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const SparseRow& rij = product_row(i, j);
            for (std::size_t k = 0; k < dim_; ++k) {
                for (const auto& [m, c] : rij)
                    for (const auto& [l, c2] : product_row(m, k)) lhs.add(l, c * c2);
                for (const auto& [m, c] : product_row(j, k))
                    for (const auto& [l, c2] : product_row(i, m)) rhs.add(l, c * c2);
                const SparseRow a = lhs.take();
                const SparseRow b = rhs.take();
                if (a.size() != b.size() ||
                    !std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
                        return x.index == y.index && x.value == y.value;
                    }))
                    throw InputError("associativity fails on basis triple (" + std::to_string(i) +
                                     "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
}

Scalar StructureAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    for (const auto& e : product_row(i, j))
        if (e.index == k) return e.value;
    return field_.zero();
}

Vec StructureAlgebra::multiply(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("element has wrong dimension");
    Vec out(dim_, field_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            const Scalar c = x[i] * y[j];
            for (const auto& e : product_row(i, j)) out[e.index] += c * e.value;
        }
    }
    return out;
}

Vec StructureAlgebra::power(const Vec& x, std::uint64_t e) const {
    Vec acc = unit_;
    Vec base = x;
    while (e > 0) {
        if (e & 1) acc = multiply(acc, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return acc;
}

Mat StructureAlgebra::left_mult(const Vec& x) const {
    Mat m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (const auto& e : product_row(i, j)) m.at(e.index, j) += x[i] * e.value;
    }
    return m;
}

Mat StructureAlgebra::right_mult(const Vec& x) const {
    Mat m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (x[j].is_zero()) continue;
        for (std::size_t i = 0; i < dim_; ++i)
            for (const auto& e : product_row(i, j)) m.at(e.index, i) += x[j] * e.value;
    }
    return m;
}

Vec StructureAlgebra::basis_element(std::size_t i) const { return unit_vec(field_, dim_, i); }

bool StructureAlgebra::is_invertible_element(const Vec& x) const {
    return azurep::is_invertible(left_mult(x));
}

std::optional<Vec> StructureAlgebra::invert_element(const Vec& x) const {
    return azurep::solve(left_mult(x), unit_);
}

bool StructureAlgebra::is_central_simple() const {
    if (central_simple_) return *central_simple_;
    bool result = center(*this).size() == 1;
    if (result) {
        // sandwich map A (x) A^op -> End(A), a (x) b -> (x -> a x b)
        Mat sandwich(field_, dim_ * dim_, dim_ * dim_);
        for (std::size_t a = 0; a < dim_; ++a) {
            const Mat la = left_mult(basis_element(a));
            for (std::size_t b = 0; b < dim_; ++b) {
                const Mat rb = right_mult(basis_element(b));
                const Mat op = la * rb;
                for (std::size_t r = 0; r < dim_; ++r)
                    for (std::size_t c = 0; c < dim_; ++c)
                        sandwich.at(r * dim_ + c, a * dim_ + b) = op.at(r, c);
            }
        }
        result = rank(std::move(sandwich)) == dim_ * dim_;
    }
    central_simple_ = result;
    return result;
}

std::size_t StructureAlgebra::degree() const {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim_))));
    if (n * n != dim_)
        throw PreconditionError("algebra dimension " + std::to_string(dim_) +
                                " is not a perfect square");
    return n;
}

AlgebraMorphism::AlgebraMorphism(StructureAlgebra src, StructureAlgebra tgt, Mat m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (!(source.field() == target.field()))
        throw InputError("morphism endpoints live over different fields");
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
        throw InputError("morphism matrix has wrong shape");
    if (apply(source.unit()) != target.unit()) throw InputError("morphism does not preserve the unit");
    for (std::size_t i = 0; i < source.dim(); ++i) {
        const Vec fi = apply(source.basis_element(i));
        for (std::size_t j = 0; j < source.dim(); ++j) {
            const Vec fj = apply(source.basis_element(j));
            Vec prod = zero_vec(source.field(), source.dim());
            for (const auto& e : source.product_row(i, j)) prod[e.index] = e.value;
            if (target.multiply(fi, fj) != apply(prod))
                throw InputError("morphism is not multiplicative on basis pair (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

bool AlgebraMorphism::is_injective() const { return rank(matrix) == source.dim(); }

bool AlgebraMorphism::preserves_center() const {
    const auto zs = center(source);
    const auto zt = center(target);
    for (const auto& z : zs)
        if (!in_span(target.field(), zt, apply(z))) return false;
    return true;
}

AlgebraMorphism identity_morphism(const StructureAlgebra& a) {
    return AlgebraMorphism(a, a, Mat::identity(a.field(), a.dim()));
}

StructureAlgebra matrix_algebra(std::size_t n, ExactField field) {
    if (n == 0) throw InputError("matrix algebra degree must be positive");
    const std::size_t d = n * n;
    std::vector<SparseRow> table(d * d);
    // E_{ab} E_{cd} = delta_{bc} E_{ad}, basis index a*n+b
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t e = 0; e < n; ++e) {
                    if (b != c) continue;
                    table[(a * n + b) * d + (c * n + e)] = {
                        {static_cast<std::uint32_t>(a * n + e), field.one()}};
                }
    Vec unit(d, field.zero());
    for (std::size_t a = 0; a < n; ++a) unit[a * n + a] = field.one();
    return StructureAlgebra(field, d, std::move(table), std::move(unit));
}

StructureAlgebra quaternion_algebra(const Scalar& a, const Scalar& b, ExactField field) {
    if (field.characteristic() == 2)
        throw InputError("quaternion algebras over characteristic 2 are not supported");
    if (a.is_zero() || b.is_zero()) throw InputError("quaternion parameters must be nonzero");
    // basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji
    const Scalar one = field.one();
    auto sr = [](std::uint32_t idx, Scalar v) { return SparseRow{{idx, std::move(v)}}; };
    std::vector<SparseRow> t(16);
    auto set = [&](std::size_t x, std::size_t y, SparseRow row) { t[x * 4 + y] = std::move(row); };
    set(0, 0, sr(0, one)); set(0, 1, sr(1, one)); set(0, 2, sr(2, one)); set(0, 3, sr(3, one));
    set(1, 0, sr(1, one));
    set(1, 1, sr(0, a));              // i i = a
    set(1, 2, sr(3, one));            // i j = k
    set(1, 3, sr(2, a));              // i k = i(ij) = a j
    set(2, 0, sr(2, one));
    set(2, 1, sr(3, -one));           // j i = -k
    set(2, 2, sr(0, b));              // j j = b
    set(2, 3, sr(1, -b));             // j k = j i j = -b i
    set(3, 0, sr(3, one));
    set(3, 1, sr(2, -a));             // k i = ij i = -a j
    set(3, 2, sr(1, b));              // k j = i jj = b i
    set(3, 3, sr(0, -(a * b)));       // k k = -ab
    Vec unit(4, field.zero());
    unit[0] = one;
    return StructureAlgebra(field, 4, std::move(t), std::move(unit));
}

StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
    if (!(a.field() == b.field())) throw InputError("direct sum over different fields");
    const std::size_t d = a.dim() + b.dim();
    std::vector<SparseRow> table(d * d);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) table[i * d + j] = a.product_row(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            SparseRow row = b.product_row(i, j);
            for (auto& e : row) e.index += static_cast<std::uint32_t>(a.dim());
            table[(a.dim() + i) * d + (a.dim() + j)] = std::move(row);
        }
    Vec unit(d, a.field().zero());
    for (std::size_t i = 0; i < a.dim(); ++i) unit[i] = a.unit()[i];
    for (std::size_t i = 0; i < b.dim(); ++i) unit[a.dim() + i] = b.unit()[i];
    return StructureAlgebra(a.field(), d, std::move(table), std::move(unit));
}

StructureAlgebra opposite(const StructureAlgebra& a) {
    std::vector<SparseRow> table(a.dim() * a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) table[i * a.dim() + j] = a.product_row(j, i);
    return StructureAlgebra(a.field(), a.dim(), std::move(table), a.unit());
}

StructureAlgebra full_tensor(const StructureAlgebra& a, const StructureAlgebra& b) {
    if (!(a.field() == b.field())) throw InputError("tensor product over different fields");
    const std::size_t da = a.dim(), db = b.dim(), d = da * db;
    std::vector<SparseRow> table(d * d);
    for (std::size_t i1 = 0; i1 < da; ++i1)
        for (std::size_t j1 = 0; j1 < db; ++j1)
            for (std::size_t i2 = 0; i2 < da; ++i2)
                for (std::size_t j2 = 0; j2 < db; ++j2) {
                    SparseRow row;
                    for (const auto& ea : a.product_row(i1, i2))
                        for (const auto& eb : b.product_row(j1, j2))
                            row.push_back({static_cast<std::uint32_t>(ea.index * db + eb.index),
                                           ea.value * eb.value});
                    std::sort(row.begin(), row.end(),
                              [](const auto& x, const auto& y) { return x.index < y.index; });
                    table[(i1 * db + j1) * d + (i2 * db + j2)] = std::move(row);
                }
    Vec unit(d, a.field().zero());
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            const Scalar u = a.unit()[i] * b.unit()[j];
            if (!u.is_zero()) unit[i * db + j] = u;
        }
    return StructureAlgebra(a.field(), d, std::move(table), std::move(unit));
}

StructureAlgebra subalgebra_from_basis(const StructureAlgebra& ambient,
                                       const std::vector<Vec>& basis, const Vec& unit) {
    const std::size_t t = basis.size();
    if (t == 0) throw InputError("subalgebra basis is empty");
    Mat cols(ambient.field(), ambient.dim(), t);
    for (std::size_t j = 0; j < t; ++j) {
        if (basis[j].size() != ambient.dim()) throw InputError("subalgebra basis element has wrong dimension");
        for (std::size_t r = 0; r < ambient.dim(); ++r) cols.at(r, j) = basis[j][r];
    }
    if (rank(cols) != t) throw InputError("subalgebra basis is linearly dependent");
    auto coords = [&](const Vec& v) {
        auto c = solve(cols, v);
        if (!c) throw InputError("subalgebra is not closed (element escapes the span)");
        return *c;
    };
    std::vector<SparseRow> table(t * t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
            table[i * t + j] = sparsify(coords(ambient.multiply(basis[i], basis[j])));
    return StructureAlgebra(ambient.field(), t, std::move(table), coords(unit));
}

Mat regular_representation(const StructureAlgebra& a, const Vec& x) {
    if (x.size() != a.dim()) throw InputError("element has wrong dimension");
    return a.left_mult(x);
}

Scalar reduced_trace(const StructureAlgebra& a, const Vec& x) {
    const std::size_t n = a.degree();
    if (!a.is_central_simple())
        throw PreconditionError("reduced trace requires a central simple algebra");
    return regular_representation(a, x).trace() * a.field().from_int(static_cast<std::int64_t>(n)).inverse();
}

std::vector<Vec> center(const StructureAlgebra& a) {
    const std::size_t d = a.dim();
    Mat sys(a.field(), d * d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const Vec bi = a.basis_element(i);
        const Mat comm = a.left_mult(bi) - a.right_mult(bi);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) sys.at(i * d + r, c) = comm.at(r, c);
    }
    return span_basis(a.field(), null_space(sys), d);
}

std::vector<Vec> centralizer(const StructureAlgebra& a, const std::vector<Vec>& elements) {
    const std::size_t d = a.dim();
    Mat sys(a.field(), elements.size() * d, d);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].size() != d) throw InputError("centralizer: element has wrong dimension");
        const Mat comm = a.left_mult(elements[i]) - a.right_mult(elements[i]);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) sys.at(i * d + r, c) = comm.at(r, c);
    }
    auto basis = span_basis(a.field(), null_space(sys), d);
    for (const auto& x : basis)
        for (const auto& y : basis)
            if (!in_span(a.field(), basis, a.multiply(x, y)))
                throw InputError("centralizer is not closed under multiplication");
    return basis;
}

std::optional<Vec> express_in_basis(ExactField field, const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) return is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
    Mat cols(field, v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t r = 0; r < v.size(); ++r) cols.at(r, j) = basis[j][r];
    return solve(cols, v);
}

std::optional<Vec> separability_idempotent(const StructureAlgebra& a) {
    const std::size_t d = a.dim();
    const ExactField F = a.field();
    // unknowns: e = sum e_{ij} b_i (x) b_j, coordinates indexed i*d+j
    // rows: mu(e) = 1 (d rows), then (L_x (x) I - I (x) R_x) e = 0 per basis x
    Mat sys(F, d + d * d * d, d * d);
    Vec rhs = zero_vec(F, d + d * d * d);
    for (std::size_t k = 0; k < d; ++k) rhs[k] = a.unit()[k];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& e : a.product_row(i, j)) sys.at(e.index, i * d + j) += e.value;
    for (std::size_t x = 0; x < d; ++x) {
        const Vec bx = a.basis_element(x);
        const Mat lx = a.left_mult(bx);
        const Mat rx = a.right_mult(bx);
        // row block (x): for each output coordinate (r,s)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                // x(b_i (x) b_j) = (x b_i) (x) b_j ; (b_i (x) b_j)x = b_i (x) (b_j x)
                for (std::size_t r = 0; r < d; ++r)
                    if (!lx.at(r, i).is_zero())
                        sys.at(d + x * d * d + r * d + j, i * d + j) += lx.at(r, i);
                for (std::size_t s = 0; s < d; ++s)
                    if (!rx.at(s, j).is_zero())
                        sys.at(d + x * d * d + i * d + s, i * d + j) -= rx.at(s, j);
            }
    }
    return solve(sys, rhs);
}

bool verify_separability_idempotent(const StructureAlgebra& a, const Vec& e) {
    const std::size_t d = a.dim();
    if (e.size() != d * d) return false;
    // mu(e) = 1
    Vec mu = zero_vec(a.field(), d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (e[i * d + j].is_zero()) continue;
            for (const auto& t : a.product_row(i, j)) mu[t.index] += e[i * d + j] * t.value;
        }
    if (mu != a.unit()) return false;
    // x e = e x for all basis x
    for (std::size_t x = 0; x < d; ++x) {
        const Mat lx = a.left_mult(a.basis_element(x));
        const Mat rx = a.right_mult(a.basis_element(x));
        Vec lhs = zero_vec(a.field(), d * d), rhs = zero_vec(a.field(), d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                if (e[i * d + j].is_zero()) continue;
                for (std::size_t r = 0; r < d; ++r) {
                    if (!lx.at(r, i).is_zero()) lhs[r * d + j] += lx.at(r, i) * e[i * d + j];
                    if (!rx.at(r, j).is_zero()) rhs[i * d + r] += rx.at(r, j) * e[i * d + j];
                }
            }
        if (lhs != rhs) return false;
    }
    return true;
}

void validate_idempotent_family(const StructureAlgebra& a, const IdempotentFamily& fam) {
    const std::size_t k = fam.elements.size();
    if (k == 0) throw InputError("idempotent family is empty");
    if (fam.claimed_traces.size() != k) throw InputError("trace list length mismatch");
    Vec sum = zero_vec(a.field(), a.dim());
    for (std::size_t i = 0; i < k; ++i) {
        const Vec& e = fam.elements[i];
        if (a.multiply(e, e) != e)
            throw InputError("element " + std::to_string(i) + " is not idempotent");
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (!is_zero(a.multiply(e, fam.elements[j])))
                throw InputError("idempotents " + std::to_string(i) + "," + std::to_string(j) +
                                 " are not orthogonal");
        }
        sum = sum + e;
    }
    if (sum != a.unit()) throw InputError("idempotents do not sum to the unit");
    for (std::size_t i = 0; i < k; ++i) {
        const Scalar tr = reduced_trace(a, fam.elements[i]);
        if (tr != a.field().from_int(fam.claimed_traces[i]))
            throw InputError("reduced trace of idempotent " + std::to_string(i) +
                             " is " + tr.str() + ", claimed " + std::to_string(fam.claimed_traces[i]));
    }
}

} // namespace azurep::alg
