#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "azurep/matrix.hpp"
#include "azurep/poly.hpp"

namespace azurep::quiver {

struct Arrow {
    std::string name;
    int from = 1; // 1-based vertices
    int to = 1;
};

/// One term of a relation: coeff times a path. Paths list arrows in traversal
/// order (["a","b"] traverses a then b), so a path evaluates on matrices as
/// M_b * M_a. The empty path is the vertex idempotent.
struct PathTerm {
    Scalar coeff;
    std::vector<std::int32_t> arrows;
};

/// A uniform relation: every term starts at `source` and ends at `target`.
struct Relation {
    std::vector<PathTerm> terms;
    int source = 1;
    int target = 1;
};

/// Quiver plus uniform path relations, presenting R = FQ/I over an exact
/// field (relation coefficients live in the field).
class QuiverPresentation {
public:
    QuiverPresentation(ExactField field, int vertex_count, std::vector<Arrow> arrows,
                       std::vector<Relation> relations);

    const ExactField& field() const { return field_; }
    int vertex_count() const { return vertex_count_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::int32_t arrow_index(const std::string& name) const;

private:
    ExactField field_;
    int vertex_count_;
    std::vector<Arrow> arrows_;
    std::vector<Relation> relations_;
};

struct DimensionVector {
    std::vector<std::int64_t> d;

    explicit DimensionVector(std::vector<std::int64_t> dims);
    std::size_t size() const { return d.size(); }
    std::int64_t total() const;
    std::int64_t operator[](std::size_t i) const { return d[i]; } // 0-based
};

/// A candidate point of rep_alpha: one matrix per arrow, arrow a: i -> j
/// carrying a d_j x d_i matrix.
struct RepPoint {
    std::vector<Mat> matrices;
    bool operator==(const RepPoint& o) const { return matrices == o.matrices; }
};

/// One-vertex presentation of an F-algebra by generators and noncommutative
/// relations; the canonical finite presentation used for root algebras and
/// morphism counting. Words use the same traversal-order convention as paths.
struct FreePresentation {
    ExactField field;
    std::vector<std::string> generators;
    std::vector<NCPoly> relations;

    /// Encoding as a loop quiver on one vertex (generator s becomes loop s).
    QuiverPresentation loop_quiver() const;
};

} // namespace azurep::quiver
