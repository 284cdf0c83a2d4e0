#pragma once

#include <json.hpp>

#include "azurep/divsite.hpp"
#include "azurep/twisted.hpp"

namespace azurep::io {

using Json = nlohmann::ordered_json;

// scalars serialize as integers when possible, otherwise as "a/b" strings
Json scalar_to_json(const Scalar& s);
Scalar parse_scalar(const ExactField& field, const Json& j);
Json rational_to_json(const Rational& r); // {"num": a, "den": b}

ExactField parse_field(const Json& j); // "Q" or {"p": 5}
Json field_to_json(const ExactField& f);

divsite::SieveOnObject parse_sieve(const Json& j);
Json sieve_to_json(const divsite::SieveOnObject& s);
divsite::TopologySpec parse_topology(const Json& j);
Json topology_to_json(const divsite::TopologySpec& t);
Json axiom_report_to_json(const divsite::AxiomReport& r);

/// Full structure constants or a named constructor ("matrix", "quaternion",
/// "tensor", "direct_sum", "opposite").
alg::StructureAlgebra parse_algebra(const Json& j);
Json algebra_to_json(const alg::StructureAlgebra& a);
Mat parse_matrix(const ExactField& field, const Json& j);
Json matrix_to_json(const Mat& m);
Vec parse_vector(const ExactField& field, const Json& j);
Json vector_to_json(const Vec& v);

quiver::QuiverPresentation parse_quiver(const Json& j);
quiver::DimensionVector parse_dimension_vector(const Json& j);
quiver::FreePresentation parse_presentation(const Json& j, const ExactField& field);
Json polynomial_system_to_json(const quiver::PolynomialSystem& sys);

twisted::RightModule parse_module(const alg::StructureAlgebra& a, const Json& j);
Json module_to_json(const twisted::RightModule& m);

} // namespace azurep::io
