#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "azurep/workbench.hpp"

namespace {

struct CommonFlags {
    std::string input;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t max_points = 0;
    std::uint64_t max_group = 0;
    bool compare = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--input", flags.input, "problem or manifest file")->required();
    cmd->add_option("--output", flags.output, "write the report here instead of stdout");
    cmd->add_option("--format", flags.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", flags.seed, "seed override for randomized searches")
        ->trigger_on_parse()
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--max-points", flags.max_points, "enumeration budget override");
    cmd->add_option("--max-group", flags.max_group, "group enumeration budget override");
    cmd->add_flag("--compare", flags.compare,
                  "determinism mode: omit timing so reports compare byte for byte");
}

azurep::wb::RunOptions to_options(const CommonFlags& flags) {
    azurep::wb::RunOptions options;
    if (flags.seed_set) options.seed = flags.seed;
    if (flags.max_points != 0) options.max_points = flags.max_points;
    if (flags.max_group != 0) options.max_group = flags.max_group;
    options.include_timing = !flags.compare;
    return options;
}

int emit(const azurep::wb::Outcome& outcome, const CommonFlags& flags) {
    const std::string text = flags.format == "text"
                                 ? azurep::wb::render_text(outcome.report)
                                 : outcome.report.dump(2) + "\n";
    if (flags.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(flags.output);
        if (!out) {
            std::cerr << "cannot write " << flags.output << "\n";
            return 2;
        }
        out << text;
    }
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for divisibility-site topologies, central simple "
                 "algebras, quiver representation schemes and twisted representations"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run a single problem file");
    add_common(run, run_flags);

    CommonFlags suite_flags;
    CLI::App* suite = app.add_subcommand("suite", "run every problem in a manifest");
    add_common(suite, suite_flags);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return emit(azurep::wb::run_file(run_flags.input, to_options(run_flags)), run_flags);
    return emit(azurep::wb::run_suite(suite_flags.input, to_options(suite_flags)), suite_flags);
}
