#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "azurep/algebra.hpp"
#include "azurep/repscheme.hpp"

namespace azurep::twisted {

/// A right module over a structure algebra, presented by one action matrix
/// per algebra basis element (coords(m * x) = action_of(x) * coords(m), so
/// action(xy) = action(y) action(x)).
struct RightModule {
    alg::StructureAlgebra over;
    std::size_t dim_f = 0;
    std::vector<Mat> action;
};

/// Validates the module axioms (unit acts as identity, contravariant
/// multiplicativity on all basis pairs).
RightModule make_right_module(alg::StructureAlgebra over, std::vector<Mat> action);
RightModule regular_module(const alg::StructureAlgebra& a);
/// M_{copies x n} over the matrix algebra M_n, right multiplication action.
RightModule standard_matrix_module(const alg::StructureAlgebra& mat_alg, std::size_t copies);
Mat action_of(const RightModule& p, const Vec& x);

/// Same space, new action m . a := m sigma(a).
RightModule twist(const RightModule& p, const alg::AlgebraMorphism& sigma);
/// Conjugates the action by an invertible coordinate change.
RightModule change_basis(const RightModule& p, const Mat& t);

/// An Azumaya algebra of dimension vector alpha: central simple of degree
/// |alpha| with a complete orthogonal idempotent family of reduced traces
/// d_1, ..., d_k.
struct DimVecAzumaya {
    alg::StructureAlgebra b;
    alg::IdempotentFamily idempotents;
    quiver::DimensionVector alpha;
};
DimVecAzumaya make_dim_vec_azumaya(alg::StructureAlgebra b, alg::IdempotentFamily idempotents,
                                   quiver::DimensionVector alpha);

/// endo_algebra output: the abstract algebra plus its realization by
/// operators on V = P_1 (+) ... (+) P_k.
struct EndoAlgebra {
    DimVecAzumaya data;
    std::vector<RightModule> modules;      // P_1 = regular module, then P_2..P_k
    std::vector<Mat> operator_basis;       // N x N operators, one per basis element
    std::vector<std::size_t> block_offset; // k+1 prefix offsets into V
};

/// End_{A^op}(P_1 (+) ... (+) P_k) as a structure algebra with the block
/// projection idempotents; degree |alpha|, center the base field and
/// reduced traces d_i are all verified.
EndoAlgebra endo_algebra(const alg::StructureAlgebra& a,
                         const std::vector<RightModule>& higher_modules,
                         const quiver::DimensionVector& alpha);

/// Coordinates of an operator in the endo basis; throws if it is not right
/// A-linear (outside the span).
Vec operator_coords(const EndoAlgebra& e, const Mat& op);

struct PeirceData {
    alg::StructureAlgebra corner;               // A = e_1 B e_1, unit e_1
    std::vector<Vec> corner_basis;              // basis of the corner inside B
    std::vector<RightModule> modules;           // P_i = e_i B e_1 over the corner
    std::vector<std::vector<Vec>> module_bases; // bases of e_i B e_1 inside B
};
PeirceData peirce_decompose(const DimVecAzumaya& b);

/// Twisted representation (A, {P_i}, {rho_a}): right A-linear arrow maps
/// between the modules satisfying the quiver relations.
struct TwistedRep {
    alg::StructureAlgebra a;
    std::vector<RightModule> modules; // P_1..P_k
    std::vector<Mat> rho;             // per arrow: dim_f(target) x dim_f(source)
};
TwistedRep make_twisted_rep(alg::StructureAlgebra a, std::vector<RightModule> modules,
                            const quiver::QuiverPresentation& q, std::vector<Mat> rho,
                            const quiver::DimensionVector& alpha);

/// Isomorphism tuple (sigma, {sigma_i}): sigma an algebra isomorphism and
/// sigma_i right sigma-linear bijections with sigma_1 = sigma.
struct TwistedIso {
    alg::AlgebraMorphism sigma;
    std::vector<Mat> sigma_maps; // i = 1..k
};
TwistedIso make_twisted_iso(const std::vector<RightModule>& source,
                            const std::vector<RightModule>& target, alg::AlgebraMorphism sigma,
                            std::vector<Mat> sigma_maps);

/// rho'_a = sigma_j rho_a sigma_i^{-1}; the result is re-validated.
TwistedRep conjugate_twisted(const quiver::QuiverPresentation& q, const TwistedRep& t,
                             const TwistedIso& iso);

/// The algebra map R -> B = End_{A^op}((+) P_i) with phi(e_i) = e_i and
/// phi(a) = rho_a; block compatibility and the relations are verified.
struct PresentedMap {
    EndoAlgebra endo;
    std::vector<Vec> vertex_images;
    std::vector<Vec> arrow_images;
};
PresentedMap twisted_to_algebra_map(const quiver::QuiverPresentation& q, const TwistedRep& t);

/// psi(b) = phi b phi^{-1} with phi = blockdiag(sigma_i); verified to be an
/// idempotent-preserving algebra isomorphism.
alg::AlgebraMorphism iso_to_automorphism(const EndoAlgebra& source, const EndoAlgebra& target,
                                         const TwistedIso& iso);

/// Canonical comparison maps witnessing that peirce_decompose inverts
/// endo_algebra: lambda sends a to left multiplication in the corner, mu_i
/// sends x in P_i to (a -> x a) in e_i B e_1. All maps are verified bijective
/// and lambda-semilinear.
struct PeirceRoundTrip {
    alg::AlgebraMorphism algebra_iso; // A -> corner
    std::vector<Mat> module_isos;     // P_i -> e_i B e_1 in the Peirce bases
    bool verified = false;
};
PeirceRoundTrip peirce_round_trip(const EndoAlgebra& endo, const PeirceData& peirce);

/// Restriction of an idempotent-preserving isomorphism to the Peirce corners
/// and columns; includes the verified reinterpretation of sigma_i as an
/// A-linear map P_{i, sigma^{-1}} -> P_i'.
struct RecoveredTuple {
    TwistedIso iso;
    PeirceData source;
    PeirceData target;
    bool twist_comparison_ok = false;
};
RecoveredTuple automorphism_to_tuple(const DimVecAzumaya& source, const DimVecAzumaya& target,
                                     const alg::AlgebraMorphism& psi);

struct IndexCertificate {
    std::size_t index = 1;
    std::string note;
};
/// Schur index at desk scale: 1 over finite fields, zero-divisor search or
/// exact norm-form definiteness for degree-2 algebras over Q.
IndexCertificate csa_index(const alg::StructureAlgebra& a);

struct SlotFeasibility {
    std::int64_t required_dim = 0;
    bool feasible = true;
};
struct ObstructionReport {
    std::size_t index = 1;
    std::string certificate;
    std::vector<SlotFeasibility> slots;
    bool feasible = true;
};
/// Existence of right A-modules of dimension d_1 d_i for every slot: a
/// module of that size exists iff index | d_i.
ObstructionReport module_obstruction(const alg::StructureAlgebra& a,
                                     const quiver::DimensionVector& alpha);

struct GroupoidClass {
    std::uint64_t orbit_size = 0;
    std::uint64_t automorphism_order = 0;
};
struct GroupoidCount {
    Rational lhs; // |rep_alpha(R)(F_q)| / |PGL(alpha)(F_q)|
    Rational rhs; // sum over twisted-representation classes of 1/|Aut|
    bool equal = false;
    std::uint64_t rep_count = 0;
    std::uint64_t pgl_order = 0;
    std::vector<GroupoidClass> classes;
};
/// Both sides of the groupoid-cardinality identity, computed by independent
/// routes: raw point/group counting against twisted-representation classes
/// with automorphisms from conjugate_twisted stabilizers.
GroupoidCount groupoid_count(const quiver::QuiverPresentation& q,
                             const quiver::DimensionVector& alpha, std::int64_t qsize,
                             std::uint64_t max_points, std::uint64_t max_group);

} // namespace azurep::twisted
