#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "azurep/matrix.hpp"

namespace azurep::alg {

struct SparseEntry {
    std::uint32_t index;
    Scalar value;
    bool operator==(const SparseEntry&) const = default;
};
/// Sparse vector sorted by index, zero entries dropped.
using SparseRow = std::vector<SparseEntry>;

/// A finite-dimensional associative unital algebra over an exact field, given
/// by structure constants b_i b_j = sum_k c_{ijk} b_k. Associativity and the
/// unit laws are checked at construction; instances are immutable afterwards.
class StructureAlgebra {
public:
    /// table[i*dim+j] is the sparse expansion of b_i * b_j.
    StructureAlgebra(ExactField field, std::size_t dim, std::vector<SparseRow> table, Vec unit);

    static StructureAlgebra from_dense(ExactField field, std::size_t dim,
                                       const std::vector<Scalar>& constants, Vec unit);

    const ExactField& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Vec& unit() const { return unit_; }

    const SparseRow& product_row(std::size_t i, std::size_t j) const {
        return table_[i * dim_ + j];
    }
    Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

    Vec multiply(const Vec& x, const Vec& y) const;
    Vec power(const Vec& x, std::uint64_t e) const;
    /// Matrix of left (right) multiplication by x on the basis.
    Mat left_mult(const Vec& x) const;
    Mat right_mult(const Vec& x) const;
    Vec basis_element(std::size_t i) const;
    bool is_invertible_element(const Vec& x) const;
    std::optional<Vec> invert_element(const Vec& x) const;

    /// Central simple over the base field: one-dimensional center and the
    /// sandwich map A (x) A^op -> End(A) bijective. Cached.
    bool is_central_simple() const;
    /// Square root of dim for a central simple algebra.
    std::size_t degree() const;

    /// Structural equality: same field, dimension, table and unit.
    bool operator==(const StructureAlgebra& o) const {
        return field_ == o.field_ && dim_ == o.dim_ && table_ == o.table_ && unit_ == o.unit_;
    }

private:
    void validate() const;
    ExactField field_;
    std::size_t dim_ = 0;
    std::vector<SparseRow> table_;
    Vec unit_;
    mutable std::optional<bool> central_simple_;
};

/// Unital multiplicative linear map between structure algebras over one
/// field; both laws are verified at construction.
struct AlgebraMorphism {
    StructureAlgebra source;
    StructureAlgebra target;
    Mat matrix; // target.dim x source.dim

    AlgebraMorphism(StructureAlgebra src, StructureAlgebra tgt, Mat m);

    Vec apply(const Vec& x) const { return matrix * x; }
    bool is_injective() const;
    bool preserves_center() const;
};

AlgebraMorphism identity_morphism(const StructureAlgebra& a);

// --- constructors ---

StructureAlgebra matrix_algebra(std::size_t n, ExactField field);
/// Quaternion algebra (a, b / F): i^2 = a, j^2 = b, ij = -ji = k. Rejects
/// characteristic 2 and zero parameters.
StructureAlgebra quaternion_algebra(const Scalar& a, const Scalar& b, ExactField field);
StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b);
StructureAlgebra opposite(const StructureAlgebra& a);
StructureAlgebra full_tensor(const StructureAlgebra& a, const StructureAlgebra& b);

/// The subalgebra spanned by `basis` with the given unit, with structure
/// constants re-expressed in that basis. Throws if the span is not closed
/// under multiplication, the unit is outside the span, or the vectors are
/// dependent. Returns the algebra; the basis itself is the embedding data.
StructureAlgebra subalgebra_from_basis(const StructureAlgebra& ambient,
                                       const std::vector<Vec>& basis, const Vec& unit);

// --- linear invariants ---

Mat regular_representation(const StructureAlgebra& a, const Vec& x);
/// trace(left multiplication)/degree; matrix trace after any splitting.
Scalar reduced_trace(const StructureAlgebra& a, const Vec& x);
/// Canonical basis of the center {z : zb = bz for all b}.
std::vector<Vec> center(const StructureAlgebra& a);
/// Canonical basis of the common commutant of the given elements; verified
/// closed under multiplication.
std::vector<Vec> centralizer(const StructureAlgebra& a, const std::vector<Vec>& elements);

/// Coordinates of v in the span of `basis`, or nullopt if outside.
std::optional<Vec> express_in_basis(ExactField field, const std::vector<Vec>& basis, const Vec& v);

/// Separability idempotent e in A (x) A^op (coordinates indexed i*dim+j)
/// with mu(e) = 1 and xe = ex; nullopt when the linear system is
/// inconsistent, i.e. A is not separable over the base field.
std::optional<Vec> separability_idempotent(const StructureAlgebra& a);
bool verify_separability_idempotent(const StructureAlgebra& a, const Vec& e);

/// Complete orthogonal idempotent family with prescribed reduced traces.
struct IdempotentFamily {
    std::vector<Vec> elements;
    std::vector<std::int64_t> claimed_traces;
};
/// Throws InputError when any family axiom or trace claim fails.
void validate_idempotent_family(const StructureAlgebra& a, const IdempotentFamily& fam);

// --- Skolem-Noether ---

struct SkolemNoetherOptions {
    std::uint64_t seed = 0;
    int attempts = 64;
};
/// An invertible u in the common target with g(x) = u f(x) u^{-1}, found by
/// solving the intertwiner space and searching it for an invertible element
/// (deterministic exhaustion for small prime-field spaces, seeded random
/// combinations otherwise). The conjugation identity is verified on every
/// basis element before returning.
Vec skolem_noether(const AlgebraMorphism& f, const AlgebraMorphism& g,
                   const SkolemNoetherOptions& options = {});

// --- relative tensor products and descent checks ---

/// A1 (x)_A A2 presented on the model basis u_r (x) z_s, where u_r runs over
/// the basis of A1 and z_s over a basis of the centralizer of f2(A) in A2.
/// The linear quotient of A1 (x)_F A2 by f1(a)x (x) y - x (x) f2(a)y is
/// computed exactly and the model is verified to be a section of it.
struct RelativeTensor {
    StructureAlgebra algebra;
    AlgebraMorphism left_inclusion;        // x -> class(x (x) 1)
    AlgebraMorphism right_inclusion;       // y -> class(1 (x) y)
    std::vector<Vec> centralizer_basis;    // the z_s, as elements of A2
};
RelativeTensor relative_tensor(const AlgebraMorphism& f1, const AlgebraMorphism& f2);

struct AmitsurReport {
    bool exact = false;
    std::size_t equalizer_dim = 0;
    std::size_t image_dim = 0;
    std::size_t tensor_dim = 0;
};
/// Exactness of 0 -> A -> B => B (x)_A B at B: the equalizer of the two
/// inclusions equals the image of A.
AmitsurReport amitsur_exactness(const AlgebraMorphism& f);

struct DoubleCentralizerReport {
    bool ok = false;
    std::size_t centralizer_dim = 0;
    std::size_t double_centralizer_dim = 0;
    bool tensor_decomposition_checked = false; // B (x) A^B -> A bijectivity ran
};
/// For separable unital B inside central simple A: A^{A^B} = B, and when B is
/// central simple the multiplication B (x) A^B -> A is bijective.
DoubleCentralizerReport double_centralizer_check(const StructureAlgebra& a,
                                                 const std::vector<Vec>& subalgebra_basis);

} // namespace azurep::alg
