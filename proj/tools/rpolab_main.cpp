// rpolab — scenario-driven experiments on symmetric Hamiltonian systems:
// relative-equilibrium slice tests, reduced-space structure, and relative
// periodic orbit censuses checked against category lower bounds.

#include "rpolab/examples.hpp"
#include "rpolab/report.hpp"
#include "rpolab/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("RPOLAB_OUT")) return env;
    return ".";
}

int run_text(const std::string& text, const std::string& stem,
             std::optional<rpolab::ExperimentKind> expected,
             std::optional<std::uint64_t> seed_override,
             std::optional<double> tol_override, const std::string& out_dir, int jobs) {
    rpolab::ParseResult parsed = rpolab::parse_scenario(text);
    if (!parsed.ok()) {
        std::cerr << "scenario rejected with " << parsed.issues.size() << " issue(s):\n";
        for (const auto& i : parsed.issues) {
            std::cerr << "  ";
            if (i.line > 0) std::cerr << "line " << i.line << ": ";
            std::cerr << i.message << "\n";
        }
        return 2;
    }
    rpolab::Scenario sc = *parsed.scenario;
    if (expected && sc.experiment != *expected) {
        std::cerr << "scenario declares a different experiment kind than the subcommand\n";
        return 2;
    }
    if (seed_override) sc.seed = *seed_override;
    if (tol_override) sc.tol.newton = *tol_override;

    const rpolab::ReportBundle bundle = rpolab::run(sc, text, jobs);
    std::cout << bundle.table_text;
    const std::string path = rpolab::write_bundle(bundle, out_dir, stem);
    std::cout << "report: " << path << "\n";
    return bundle.exit_code;
}

int run_file(const std::string& file, std::optional<rpolab::ExperimentKind> expected,
             std::optional<std::uint64_t> seed, std::optional<double> tol,
             const std::string& out_dir, int jobs) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open scenario file: " << file << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_text(buf.str(), std::filesystem::path(file).stem().string(), expected, seed, tol,
                    out_dir, jobs);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric Hamiltonian lab: slice tests, reduced-space structure, orbit census"};
    app.require_subcommand(1);

    std::string out_dir = default_out_dir();
    int jobs = 1;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    app.add_option("--out", out_dir, "output directory for report files");
    app.add_option("--jobs", jobs, "worker threads for the census")->check(CLI::Range(1, 64));
    app.add_option("--seed", seed, "override the scenario RNG seed");
    app.add_option("--tol", tol, "override the shooting residual tolerance");

    std::string file, name;
    auto* check = app.add_subcommand("check-re", "relative-equilibrium slice test at a point");
    check->add_option("file", file, "scenario file")->required();
    auto* reduce = app.add_subcommand("reduce", "stratified link, category bound, clearance scan");
    reduce->add_option("file", file, "scenario file")->required();
    auto* census = app.add_subcommand("census", "relative periodic orbit census per energy level");
    census->add_option("file", file, "scenario file")->required();
    auto* list = app.add_subcommand("list-examples", "list built-in example systems");
    auto* runex = app.add_subcommand("run-example", "run a built-in example");
    runex->add_option("name", name, "example name")->required();

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& e : rpolab::builtin_examples())
            std::cout << e.name << "  -  " << e.description << "\n";
        return 0;
    }
    if (runex->parsed()) {
        const rpolab::BuiltinExample* e = rpolab::find_example(name);
        if (!e) {
            std::cerr << "unknown example '" << name << "' (see list-examples)\n";
            return 2;
        }
        return run_text(e->scenario_text, e->name, std::nullopt, seed, tol, out_dir, jobs);
    }
    std::optional<rpolab::ExperimentKind> expected;
    if (check->parsed()) expected = rpolab::ExperimentKind::CheckRelEq;
    if (reduce->parsed()) expected = rpolab::ExperimentKind::Reduce;
    if (census->parsed()) expected = rpolab::ExperimentKind::Census;
    return run_file(file, expected, seed, tol, out_dir, jobs);
}
