#include "azurep/workbench.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "azurep/repscheme.hpp"

namespace azurep::wb {

namespace {

using io::Json;

struct TaskContext {
    std::uint64_t seed = 0;
    Budgets budgets;
};

struct TaskResult {
    Json result;
    std::string status = "ok"; // ok | property_violated | refused | input_error
};

int exit_code_for(const std::string& status) {
    if (status == "ok") return 0;
    if (status == "property_violated") return 1;
    return 2;
}

alg::AlgebraMorphism parse_morphism(const Json& payload, const char* key,
                                    const alg::StructureAlgebra& src,
                                    const alg::StructureAlgebra& tgt) {
    const Json& j = payload.at(key);
    return alg::AlgebraMorphism(src, tgt, io::parse_matrix(src.field(), j.at("matrix")));
}

divsite::FragmentBounds parse_bounds(const Json& payload) {
    divsite::FragmentBounds b;
    if (payload.contains("bounds")) {
        const Json& j = payload["bounds"];
        b.max_base = j.value("maxBase", b.max_base);
        b.max_generator_value = j.value("maxGeneratorValue", b.max_generator_value);
        b.max_generator_count = j.value("maxGeneratorCount", b.max_generator_count);
        b.max_multiplier = j.value("maxMultiplier", b.max_multiplier);
    }
    return b;
}

TaskResult task_covers(const Json& p, const TaskContext&) {
    const bool result = divsite::covers(io::parse_topology(p.at("topology")),
                                        io::parse_sieve(p.at("sieve")));
    return {Json{{"covers", result}}, "ok"};
}

TaskResult task_pullback(const Json& p, const TaskContext&) {
    const auto s = divsite::pullback(io::parse_sieve(p.at("sieve")), p.at("nprime").get<std::int64_t>());
    return {Json{{"sieve", io::sieve_to_json(s)}}, "ok"};
}

TaskResult task_verify_axioms(const Json& p, const TaskContext&) {
    const auto report = divsite::verify_axioms(io::parse_topology(p.at("topology")),
                                               parse_bounds(p));
    return {io::axiom_report_to_json(report), report.all_pass() ? "ok" : "property_violated"};
}

TaskResult task_separate(const Json& p, const TaskContext&) {
    const auto sigma = p.at("sigma").get<std::vector<std::int64_t>>();
    const auto sigma_prime = p.at("sigmaPrime").get<std::vector<std::int64_t>>();
    const auto witness = divsite::separating_witness(sigma, sigma_prime);
    Json result = Json::object();
    if (witness) {
        result["witness"] = io::sieve_to_json(*witness);
        result["coversSigma"] = divsite::covers(divsite::TopologySpec::sigma(sigma), *witness);
        result["coversSigmaPrime"] =
            divsite::covers(divsite::TopologySpec::sigma(sigma_prime), *witness);
    } else {
        result["witness"] = nullptr;
    }
    return {result, "ok"};
}

TaskResult task_jk_matrix(const Json& p, const TaskContext&) {
    const bool result =
        divsite::jk_matrix_cover(io::parse_topology(p.at("topology")), p.at("n").get<std::int64_t>(),
                                 p.at("degrees").get<std::vector<std::int64_t>>());
    return {Json{{"covers", result}}, "ok"};
}

TaskResult task_amitsur(const Json& p, const TaskContext&) {
    const auto src = io::parse_algebra(p.at("source"));
    const auto tgt = io::parse_algebra(p.at("target"));
    const auto report = alg::amitsur_exactness(parse_morphism(p, "morphism", src, tgt));
    Json result{{"exact", report.exact},
                {"equalizerDim", report.equalizer_dim},
                {"imageDim", report.image_dim},
                {"tensorDim", report.tensor_dim}};
    return {result, report.exact ? "ok" : "property_violated"};
}

TaskResult task_skolem_noether(const Json& p, const TaskContext& ctx) {
    const auto src = io::parse_algebra(p.at("source"));
    const auto tgt = io::parse_algebra(p.at("target"));
    alg::SkolemNoetherOptions options;
    options.seed = ctx.seed;
    options.attempts = ctx.budgets.attempts;
    const Vec u = alg::skolem_noether(parse_morphism(p, "f", src, tgt),
                                      parse_morphism(p, "g", src, tgt), options);
    return {Json{{"conjugator", io::vector_to_json(u)}}, "ok"};
}

TaskResult task_rep_equations(const Json& p, const TaskContext&) {
    const auto q = io::parse_quiver(p.at("quiver"));
    const auto sys = quiver::rep_equations(q, io::parse_dimension_vector(p.at("alpha")));
    return {io::polynomial_system_to_json(sys), "ok"};
}

TaskResult task_enumerate(const Json& p, const TaskContext& ctx) {
    const auto q = io::parse_quiver(p.at("quiver"));
    const auto alpha = io::parse_dimension_vector(p.at("alpha"));
    const auto fq = ExactField::prime_field(p.at("q").get<std::int64_t>());
    const auto points = quiver::enumerate_reps(q, alpha, fq, ctx.budgets.max_points);
    Json result{{"count", points.size()}};
    if (p.value("emitPoints", points.size() <= 64)) {
        Json list = Json::array();
        for (const auto& pt : points) {
            Json mats = Json::array();
            for (const auto& m : pt.matrices) mats.push_back(io::matrix_to_json(m));
            list.push_back(std::move(mats));
        }
        result["points"] = std::move(list);
    }
    return {result, "ok"};
}

TaskResult task_orbits(const Json& p, const TaskContext& ctx) {
    const auto q = io::parse_quiver(p.at("quiver"));
    const auto alpha = io::parse_dimension_vector(p.at("alpha"));
    const auto fq = ExactField::prime_field(p.at("q").get<std::int64_t>());
    const auto analysis =
        quiver::orbit_analysis(q, alpha, fq, ctx.budgets.max_points, ctx.budgets.max_group);
    Json orbits = Json::array();
    for (const auto& o : analysis.orbits)
        orbits.push_back(Json{{"size", o.size},
                              {"stabilizer", o.stabilizer_order},
                              {"pglStabilizer", o.pgl_stabilizer_order}});
    Json result{{"pointCount", analysis.points.size()},
                {"groupOrder", analysis.group_order},
                {"pglGroupOrder", analysis.pgl_group_order},
                {"orbits", std::move(orbits)}};
    return {result, "ok"};
}

TaskResult task_root_algebra(const Json& p, const TaskContext&) {
    const ExactField field =
        p.contains("field") ? io::parse_field(p["field"]) : ExactField::rationals();
    const auto r = io::parse_presentation(p.at("presentation"), field);
    const auto n = p.at("n").get<std::size_t>();
    const auto root = quiver::root_algebra_presentation(r, n);
    const auto abelian = root.abelianized();
    const auto reference = quiver::rep_equations(r.loop_quiver(),
                                                 quiver::DimensionVector({static_cast<std::int64_t>(n)}));
    const bool matches = abelian.same_polynomial_set(reference) &&
                         abelian.variables == reference.variables;
    Json relations = Json::array();
    for (const auto& rel : root.relations) relations.push_back(rel.str(root.generator_names));
    Json result{{"degree", root.degree},
                {"generators", root.generator_names},
                {"relations", std::move(relations)},
                {"abelianization", io::polynomial_system_to_json(abelian)},
                {"matchesRepEquations", matches}};
    return {result, matches ? "ok" : "property_violated"};
}

TaskResult task_point_count(const Json& p, const TaskContext& ctx) {
    const ExactField field =
        p.contains("field") ? io::parse_field(p["field"]) : ExactField::rationals();
    const auto r = io::parse_presentation(p.at("presentation"), field);
    const auto report = quiver::point_count_check(r, p.at("n").get<std::size_t>(),
                                                  p.at("q").get<std::int64_t>(),
                                                  ctx.budgets.max_points);
    Json result{{"equationSolutions", report.equation_solutions},
                {"morphismCount", report.morphism_count},
                {"equal", report.equal}};
    return {result, report.equal ? "ok" : "property_violated"};
}

TaskResult task_endo_algebra(const Json& p, const TaskContext&) {
    const auto a = io::parse_algebra(p.at("algebra"));
    const auto alpha = io::parse_dimension_vector(p.at("alpha"));
    std::vector<twisted::RightModule> modules;
    for (const auto& m : p.at("modules")) modules.push_back(io::parse_module(a, m));
    const auto endo = twisted::endo_algebra(a, modules, alpha);
    Json traces = Json::array();
    for (const auto& e : endo.data.idempotents.elements)
        traces.push_back(io::scalar_to_json(alg::reduced_trace(endo.data.b, e)));
    Json result{{"dim", endo.data.b.dim()},
                {"degree", endo.data.b.degree()},
                {"traces", std::move(traces)},
                {"algebra", io::algebra_to_json(endo.data.b)}};
    return {result, "ok"};
}

TaskResult task_peirce(const Json& p, const TaskContext&) {
    const auto b = io::parse_algebra(p.at("algebra"));
    const auto alpha = io::parse_dimension_vector(p.at("alpha"));
    alg::IdempotentFamily fam;
    for (const auto& e : p.at("idempotents")) fam.elements.push_back(io::parse_vector(b.field(), e));
    fam.claimed_traces = alpha.d;
    const auto data = twisted::peirce_decompose(twisted::make_dim_vec_azumaya(b, fam, alpha));
    Json modules = Json::array();
    for (const auto& m : data.modules) modules.push_back(io::module_to_json(m));
    Json result{{"corner", io::algebra_to_json(data.corner)}, {"modules", std::move(modules)}};
    return {result, "ok"};
}

TaskResult task_obstruction(const Json& p, const TaskContext&) {
    const auto a = io::parse_algebra(p.at("algebra"));
    const auto report = twisted::module_obstruction(a, io::parse_dimension_vector(p.at("alpha")));
    Json slots = Json::array();
    for (const auto& s : report.slots)
        slots.push_back(Json{{"requiredDim", s.required_dim}, {"feasible", s.feasible}});
    Json result{{"index", report.index},
                {"certificate", report.certificate},
                {"slots", std::move(slots)},
                {"feasible", report.feasible}};
    return {result, report.feasible ? "ok" : "property_violated"};
}

TaskResult task_groupoid_count(const Json& p, const TaskContext& ctx) {
    const auto q = io::parse_quiver(p.at("quiver"));
    const auto alpha = io::parse_dimension_vector(p.at("alpha"));
    const auto count = twisted::groupoid_count(q, alpha, p.at("q").get<std::int64_t>(),
                                               ctx.budgets.max_points, ctx.budgets.max_group);
    Json classes = Json::array();
    for (const auto& c : count.classes)
        classes.push_back(Json{{"orbitSize", c.orbit_size}, {"autOrder", c.automorphism_order}});
    Json result{{"lhs", io::rational_to_json(count.lhs)},
                {"rhs", io::rational_to_json(count.rhs)},
                {"equal", count.equal},
                {"repCount", count.rep_count},
                {"pglOrder", count.pgl_order},
                {"classes", std::move(classes)}};
    return {result, count.equal ? "ok" : "property_violated"};
}

TaskResult dispatch(const std::string& task, const Json& p, const TaskContext& ctx) {
    if (task == "covers") return task_covers(p, ctx);
    if (task == "pullback") return task_pullback(p, ctx);
    if (task == "verify_axioms") return task_verify_axioms(p, ctx);
    if (task == "separate") return task_separate(p, ctx);
    if (task == "jk_matrix") return task_jk_matrix(p, ctx);
    if (task == "amitsur") return task_amitsur(p, ctx);
    if (task == "skolem_noether") return task_skolem_noether(p, ctx);
    if (task == "rep_equations") return task_rep_equations(p, ctx);
    if (task == "enumerate") return task_enumerate(p, ctx);
    if (task == "orbits") return task_orbits(p, ctx);
    if (task == "root_algebra") return task_root_algebra(p, ctx);
    if (task == "point_count") return task_point_count(p, ctx);
    if (task == "endo_algebra") return task_endo_algebra(p, ctx);
    if (task == "peirce") return task_peirce(p, ctx);
    if (task == "obstruction") return task_obstruction(p, ctx);
    if (task == "groupoid_count") return task_groupoid_count(p, ctx);
    throw InputError("unknown task '" + task + "'");
}

} // namespace

Outcome run_task(const Json& problem, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    std::string task = "?";
    TaskResult tr;
    TaskContext ctx;
    try {
        if (!problem.is_object()) throw InputError("problem must be a JSON object");
        task = problem.at("task").get<std::string>();
        ctx.seed = options.seed.value_or(problem.value("seed", std::uint64_t{0}));
        if (problem.contains("budgets")) {
            const Json& b = problem["budgets"];
            ctx.budgets.max_points = b.value("maxPoints", ctx.budgets.max_points);
            ctx.budgets.max_group = b.value("maxGroup", ctx.budgets.max_group);
            ctx.budgets.attempts = b.value("attempts", ctx.budgets.attempts);
            if (ctx.budgets.max_points == 0 || ctx.budgets.max_group == 0 ||
                ctx.budgets.attempts <= 0)
                throw InputError("budgets must be positive");
        }
        if (options.max_points) ctx.budgets.max_points = *options.max_points;
        if (options.max_group) ctx.budgets.max_group = *options.max_group;
        tr = dispatch(task, problem, ctx);
    } catch (const BudgetError& e) {
        tr.status = "refused";
        tr.result = Json{{"error", e.what()},
                         {"requiredBudget", e.required_budget},
                         {"givenBudget", e.given_budget}};
    } catch (const RetryError& e) {
        tr.status = "refused";
        tr.result = Json{{"error", e.what()}};
    } catch (const InputError& e) {
        tr.status = "input_error";
        tr.result = Json{{"error", e.what()}};
    } catch (const Json::exception& e) {
        tr.status = "input_error";
        tr.result = Json{{"error", e.what()}};
    }

    const auto stop = std::chrono::steady_clock::now();
    Json report = Json::object();
    report["task"] = task;
    report["status"] = tr.status;
    report["result"] = tr.result;
    if (options.include_timing)
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count() / 1000.0;
    report["provenance"] = Json{{"library", "azurep"}, {"version", kVersion}, {"seed", ctx.seed}};
    return {report, exit_code_for(tr.status)};
}

Outcome run_file(const std::string& path, const RunOptions& options) {
    std::ifstream in(path);
    if (!in) {
        Json report{{"task", "?"},
                    {"status", "input_error"},
                    {"result", Json{{"error", "cannot open " + path}}}};
        return {report, 2};
    }
    Json problem;
    try {
        problem = Json::parse(in);
    } catch (const Json::parse_error& e) {
        Json report{{"task", "?"},
                    {"status", "input_error"},
                    {"result", Json{{"error", e.what()}}}};
        return {report, 2};
    }
    return run_task(problem, options);
}

Outcome run_suite(const std::string& manifest_path, const RunOptions& options) {
    std::ifstream in(manifest_path);
    Json report = Json::object();
    report["manifest"] = manifest_path;
    if (!in) {
        report["status"] = "input_error";
        report["error"] = "cannot open manifest " + manifest_path;
        return {report, 2};
    }
    Json manifest;
    try {
        manifest = Json::parse(in);
    } catch (const Json::parse_error& e) {
        report["status"] = "input_error";
        report["error"] = e.what();
        return {report, 2};
    }
    if (!manifest.is_object() || !manifest.contains("problems") ||
        !manifest["problems"].is_array()) {
        report["status"] = "input_error";
        report["error"] = "manifest needs a \"problems\" array";
        return {report, 2};
    }

    const auto base = std::filesystem::path(manifest_path).parent_path();
    Json tasks = Json::array();
    int worst = 0;
    std::map<std::string, int> counts;
    for (const auto& entry : manifest["problems"]) {
        const std::string rel = entry.get<std::string>();
        const auto full = (base / rel).string();
        Outcome outcome = run_file(full, options);
        worst = std::max(worst, outcome.exit_code);
        ++counts[outcome.report.value("status", "input_error")];
        tasks.push_back(Json{{"file", rel}, {"report", std::move(outcome.report)}});
    }
    report["tasks"] = std::move(tasks);
    Json counts_json = Json::object();
    for (const auto& [k, v] : counts) counts_json[k] = v;
    report["counts"] = counts_json;
    report["status"] = worst == 0 ? "ok" : (worst == 1 ? "property_violated" : "input_error");
    return {report, worst};
}

namespace {

void render_value(std::ostream& os, const std::string& key, const Json& value, int indent) {
    const std::string pad(indent, ' ');
    if (value.is_object()) {
        os << pad << key << ":\n";
        for (const auto& [k, v] : value.items()) render_value(os, k, v, indent + 2);
    } else if (value.is_array() && value.size() > 8) {
        os << pad << key << ": " << value.dump() << "\n";
    } else {
        os << pad << key << ": " << value.dump() << "\n";
    }
}

} // namespace

std::string render_text(const io::Json& report) {
    std::ostringstream os;
    for (const auto& [k, v] : report.items()) render_value(os, k, v, 0);
    return os.str();
}

} // namespace azurep::wb
