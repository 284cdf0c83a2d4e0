#include "azurep/json_io.hpp"

namespace azurep::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

void expect_object(const Json& j, const char* what) {
    if (!j.is_object()) fail(std::string(what) + ": expected an object");
}

} // namespace

Json scalar_to_json(const Scalar& s) {
    if (!s.field().is_rationals()) return Json(s.residue());
    const Rational& r = s.rational();
    if (boost::multiprecision::denominator(r) == 1) {
        const BigInt num = boost::multiprecision::numerator(r);
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            return Json(static_cast<std::int64_t>(num));
    }
    return Json(r.str());
}

Scalar parse_scalar(const ExactField& field, const Json& j) {
    if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
    if (j.is_string()) return field.parse(j.get<std::string>());
    fail("scalar: expected an integer or an \"a/b\" string");
}

Json rational_to_json(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    Json out = Json::object();
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max() &&
        den <= std::numeric_limits<std::int64_t>::max()) {
        out["num"] = static_cast<std::int64_t>(num);
        out["den"] = static_cast<std::int64_t>(den);
    } else {
        out["num"] = num.str();
        out["den"] = den.str();
    }
    return out;
}

ExactField parse_field(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return ExactField::rationals();
    if (j.is_object() && j.contains("p")) return ExactField::prime_field(j["p"].get<std::int64_t>());
    fail("field: expected \"Q\" or {\"p\": prime}");
}

Json field_to_json(const ExactField& f) {
    if (f.is_rationals()) return Json("Q");
    return Json{{"p", f.characteristic()}};
}

divsite::SieveOnObject parse_sieve(const Json& j) {
    expect_object(j, "sieve");
    if (!j.contains("base") || !j.contains("generators")) fail("sieve: need base and generators");
    return divsite::normalize(j["base"].get<std::int64_t>(),
                              j["generators"].get<std::vector<std::int64_t>>());
}

Json sieve_to_json(const divsite::SieveOnObject& s) {
    return Json{{"base", s.base}, {"generators", s.generators}};
}

divsite::TopologySpec parse_topology(const Json& j) {
    expect_object(j, "topology");
    const std::string kind = j.value("kind", "");
    if (kind == "sigma") {
        if (!j.contains("primes")) fail("sigma topology needs primes");
        return divsite::TopologySpec::sigma(j["primes"].get<std::vector<std::int64_t>>());
    }
    if (kind == "plus") return divsite::TopologySpec::plus();
    if (kind == "minus") return divsite::TopologySpec::minus();
    fail("topology: kind must be sigma, plus or minus");
}

Json topology_to_json(const divsite::TopologySpec& t) {
    switch (t.kind) {
    case divsite::TopologySpec::Kind::MaximalPlus: return Json{{"kind", "plus"}};
    case divsite::TopologySpec::Kind::MinimalMinus: return Json{{"kind", "minus"}};
    default: return Json{{"kind", "sigma"}, {"primes", t.primes}};
    }
}

namespace {

Json axiom_outcome_to_json(const divsite::AxiomOutcome& o) {
    Json out = Json::object();
    out["pass"] = o.pass;
    if (!o.pass) {
        Json ce = Json::object();
        ce["base"] = o.base;
        ce["sieve"] = sieve_to_json(o.sieve);
        if (o.morphism != 0) ce["morphism"] = o.morphism;
        if (!o.via.generators.empty() || o.via.base != 1) ce["via"] = sieve_to_json(o.via);
        ce["detail"] = o.detail;
        out["counterexample"] = ce;
    }
    return out;
}

} // namespace

Json axiom_report_to_json(const divsite::AxiomReport& r) {
    Json out = Json::object();
    out["topology"] = r.topology;
    out["bounds"] = Json{{"maxBase", r.bounds.max_base},
                         {"maxGeneratorValue", r.bounds.max_generator_value},
                         {"maxGeneratorCount", r.bounds.max_generator_count},
                         {"maxMultiplier", r.bounds.max_multiplier}};
    out["maximal"] = axiom_outcome_to_json(r.maximal);
    out["stability"] = axiom_outcome_to_json(r.stability);
    out["transitivity"] = axiom_outcome_to_json(r.transitivity);
    out["allPass"] = r.all_pass();
    return out;
}

Mat parse_matrix(const ExactField& field, const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) fail("matrix: expected an array of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    Mat m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) fail("matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = parse_scalar(field, j[r][c]);
    }
    return m;
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Vec parse_vector(const ExactField& field, const Json& j) {
    if (!j.is_array()) fail("vector: expected an array");
    Vec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(parse_scalar(field, x));
    return v;
}

Json vector_to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(x));
    return out;
}

alg::StructureAlgebra parse_algebra(const Json& j) {
    expect_object(j, "algebra");
    if (j.contains("constructor")) {
        const std::string name = j["constructor"].get<std::string>();
        if (name == "matrix") {
            const ExactField f = parse_field(j.at("field"));
            return alg::matrix_algebra(j.at("n").get<std::size_t>(), f);
        }
        if (name == "quaternion") {
            const ExactField f = parse_field(j.at("field"));
            return alg::quaternion_algebra(parse_scalar(f, j.at("a")), parse_scalar(f, j.at("b")), f);
        }
        if (name == "tensor")
            return alg::full_tensor(parse_algebra(j.at("left")), parse_algebra(j.at("right")));
        if (name == "direct_sum")
            return alg::direct_sum(parse_algebra(j.at("left")), parse_algebra(j.at("right")));
        if (name == "opposite") return alg::opposite(parse_algebra(j.at("of")));
        fail("algebra: unknown constructor " + name);
    }
    const ExactField f = parse_field(j.at("field"));
    const auto dim = j.at("dim").get<std::size_t>();
    const Json& c = j.at("constants");
    if (!c.is_array() || c.size() != dim) fail("algebra: constants must be a dim^3 array");
    std::vector<Scalar> dense;
    dense.reserve(dim * dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!c[i].is_array() || c[i].size() != dim) fail("algebra: constants must be a dim^3 array");
        for (std::size_t k = 0; k < dim; ++k) {
            if (!c[i][k].is_array() || c[i][k].size() != dim)
                fail("algebra: constants must be a dim^3 array");
            for (std::size_t l = 0; l < dim; ++l) dense.push_back(parse_scalar(f, c[i][k][l]));
        }
    }
    return alg::StructureAlgebra::from_dense(f, dim, dense, parse_vector(f, j.at("unit")));
}

Json algebra_to_json(const alg::StructureAlgebra& a) {
    Json constants = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Json plane = Json::array();
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Json row = Json::array();
            Vec expansion = zero_vec(a.field(), a.dim());
            for (const auto& e : a.product_row(i, j)) expansion[e.index] = e.value;
            for (std::size_t k = 0; k < a.dim(); ++k) row.push_back(scalar_to_json(expansion[k]));
            plane.push_back(std::move(row));
        }
        constants.push_back(std::move(plane));
    }
    return Json{{"field", field_to_json(a.field())},
                {"dim", a.dim()},
                {"constants", std::move(constants)},
                {"unit", vector_to_json(a.unit())}};
}

quiver::QuiverPresentation parse_quiver(const Json& j) {
    expect_object(j, "quiver");
    const ExactField f = j.contains("field") ? parse_field(j["field"]) : ExactField::rationals();
    const int vertices = j.at("vertices").get<int>();
    std::vector<quiver::Arrow> arrows;
    std::vector<std::string> names;
    for (const auto& a : j.at("arrows")) {
        arrows.push_back({a.at("name").get<std::string>(), a.at("from").get<int>(),
                          a.at("to").get<int>()});
        names.push_back(arrows.back().name);
    }
    auto index_of = [&](const std::string& n) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return static_cast<std::int32_t>(i);
        fail("quiver: relation uses unknown arrow " + n);
    };
    std::vector<quiver::Relation> relations;
    if (j.contains("relations")) {
        for (const auto& rel : j["relations"]) {
            if (!rel.is_array()) fail("quiver: each relation must be an array of terms");
            quiver::Relation r;
            for (const auto& term : rel) {
                quiver::PathTerm t;
                t.coeff = term.contains("coeff") ? parse_scalar(f, term["coeff"]) : f.one();
                for (const auto& step : term.at("path")) t.arrows.push_back(index_of(step.get<std::string>()));
                r.terms.push_back(std::move(t));
            }
            relations.push_back(std::move(r));
        }
    }
    return quiver::QuiverPresentation(f, vertices, std::move(arrows), std::move(relations));
}

quiver::DimensionVector parse_dimension_vector(const Json& j) {
    if (!j.is_array()) fail("dimension vector: expected an array");
    return quiver::DimensionVector(j.get<std::vector<std::int64_t>>());
}

quiver::FreePresentation parse_presentation(const Json& j, const ExactField& field) {
    expect_object(j, "presentation");
    quiver::FreePresentation r;
    r.field = field;
    r.generators = j.at("generators").get<std::vector<std::string>>();
    auto index_of = [&](const std::string& n) {
        for (std::size_t i = 0; i < r.generators.size(); ++i)
            if (r.generators[i] == n) return static_cast<std::int32_t>(i);
        fail("presentation: relation uses unknown generator " + n);
    };
    if (j.contains("relations")) {
        for (const auto& rel : j["relations"]) {
            quiver::NCPoly nc(field);
            for (const auto& term : rel) {
                const Scalar c = term.contains("coeff") ? parse_scalar(field, term["coeff"])
                                                        : field.one();
                quiver::NCPoly::Word w;
                for (const auto& step : term.at("word")) w.push_back(index_of(step.get<std::string>()));
                nc.add_term(w, c);
            }
            r.relations.push_back(std::move(nc));
        }
    }
    return r;
}

Json polynomial_system_to_json(const quiver::PolynomialSystem& sys) {
    Json polys = Json::array();
    for (const auto& p : sys.polynomials) polys.push_back(p.str(sys.variables));
    return Json{{"vars", sys.variables}, {"polys", std::move(polys)}};
}

twisted::RightModule parse_module(const alg::StructureAlgebra& a, const Json& j) {
    expect_object(j, "module");
    const auto dimf = j.at("dimF").get<std::size_t>();
    const Json& act = j.at("action");
    if (!act.is_array() || act.size() != a.dim())
        fail("module: action needs one matrix per algebra basis element");
    std::vector<Mat> action;
    for (const auto& m : act) {
        action.push_back(parse_matrix(a.field(), m));
        if (action.back().rows() != dimf || action.back().cols() != dimf)
            fail("module: action matrices must be dimF x dimF");
    }
    return twisted::make_right_module(a, std::move(action));
}

Json module_to_json(const twisted::RightModule& m) {
    Json action = Json::array();
    for (const auto& a : m.action) action.push_back(matrix_to_json(a));
    return Json{{"dimF", m.dim_f}, {"action", std::move(action)}};
}

} // namespace azurep::io
