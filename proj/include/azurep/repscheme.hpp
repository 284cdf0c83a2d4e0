#pragma once

#include <cstdint>
#include <optional>

#include "azurep/algebra.hpp"
#include "azurep/quiver.hpp"

namespace azurep::quiver {

/// Substitutes a generic matrix of fresh variables for each arrow and emits
/// every entry of every relation. Variables are ordered by arrow, then
/// row-major; names are <arrow>_<row>_<col>.
PolynomialSystem rep_equations(const QuiverPresentation& q, const DimensionVector& alpha);

/// Evaluates one relation on concrete matrices.
Mat evaluate_relation(const QuiverPresentation& q, const DimensionVector& alpha,
                      const Relation& rel, const std::vector<Mat>& arrow_matrices);

bool is_representation(const QuiverPresentation& q, const DimensionVector& alpha,
                       const RepPoint& p);

/// Exhaustive scan of all matrix assignments over F_q, filtered by
/// is_representation, in lexicographic order. Refuses (BudgetError) when
/// q^variables exceeds max_points.
std::vector<RepPoint> enumerate_reps(const QuiverPresentation& q, const DimensionVector& alpha,
                                     ExactField fq, std::uint64_t max_points);

/// g acts by arrow a: i -> j |-> g_j M g_i^{-1}; the result is verified to
/// satisfy the relations again.
RepPoint gl_action(const QuiverPresentation& q, const DimensionVector& alpha,
                   const std::vector<Mat>& g, const RepPoint& p);

/// All tuples of invertible matrices of sizes alpha over F_q; refuses when
/// |GL(alpha)(F_q)| exceeds max_group.
std::vector<std::vector<Mat>> enumerate_gl_tuples(const DimensionVector& alpha, ExactField fq,
                                                  std::uint64_t max_group);

std::uint64_t gl_order(std::int64_t q, std::int64_t d);
std::uint64_t gl_alpha_order(const DimensionVector& alpha, std::int64_t q);

struct Orbit {
    std::size_t representative; // index into the point list
    std::uint64_t size = 0;
    std::uint64_t stabilizer_order = 0;     // inside GL(alpha)(F_q)
    std::uint64_t pgl_stabilizer_order = 0; // scalar tuples divided out
};

struct OrbitAnalysis {
    std::vector<RepPoint> points;
    std::uint64_t group_order = 0;     // |GL(alpha)(F_q)|
    std::uint64_t pgl_group_order = 0; // group_order / (q - 1)
    std::vector<Orbit> orbits;
};

/// Full orbit/stabilizer decomposition of the finite conjugation action;
/// |orbit| * |stabilizer| = |GL(alpha)| is verified for every orbit.
OrbitAnalysis orbit_analysis(const QuiverPresentation& q, const DimensionVector& alpha,
                             ExactField fq, std::uint64_t max_points, std::uint64_t max_group);

struct Decomposition {
    DimensionVector alpha;
    Mat base_change; // U with U^{-1} e_i U the standard block idempotents
    RepPoint block_point;
};

/// Splits an n-dimensional representation given by vertex idempotent images
/// and arrow images into its dimension vector and conjugated block point.
Decomposition decompose_by_idempotents(const QuiverPresentation& q,
                                       const std::vector<Mat>& idempotent_images,
                                       const std::vector<Mat>& arrow_images);

struct RootAlgebraPresentation {
    std::size_t degree = 1;
    std::vector<std::string> generator_names; // one symbol per (generator, row, col)
    std::vector<NCPoly> relations;

    PolynomialSystem abelianized() const;
};

/// Generic n x n matrices with noncommuting entries substituted for the
/// generators; entries of the evaluated relations are the relations of the
/// presentation. Its abelianization equals rep_equations of the loop-quiver
/// encoding at alpha = (n) under the shared variable naming.
RootAlgebraPresentation root_algebra_presentation(const FreePresentation& r, std::size_t degree);

struct PointCountReport {
    std::uint64_t equation_solutions = 0; // polynomial-system route
    std::uint64_t morphism_count = 0;     // matrix-arithmetic route
    bool equal = false;
};

/// Counts solutions of rep_equations over F_q and algebra morphisms
/// R -> M_n(F_q) by independent brute-force routes.
PointCountReport point_count_check(const FreePresentation& r, std::size_t degree, std::int64_t q,
                                   std::uint64_t max_points);

struct MorphismCount {
    std::uint64_t count = 0;
    bool by_formula = false; // free presentations are counted, not scanned
};

/// |Alg(R, A)| by scanning generator images in a structure algebra over F_q.
MorphismCount count_algebra_morphisms(const FreePresentation& r, const alg::StructureAlgebra& a,
                                      std::uint64_t max_points);

struct GluingReport {
    std::vector<std::uint64_t> cover_morphism_counts;
    std::uint64_t matched_pairs = 0;
    std::uint64_t base_solutions = 0; // |Alg(R, F_q)|
    bool equal = false;
};

/// Set-level sheaf condition for the cover {F_q -> M_d(F_q)}: families
/// matched in every pairwise full tensor correspond exactly to morphisms from
/// the base.
GluingReport sheaf_gluing_check(const FreePresentation& r,
                                const std::vector<std::size_t>& cover_degrees, std::int64_t q,
                                std::uint64_t max_points);

} // namespace azurep::quiver
