// scenario.hpp — Text scenarios: a key/value format describing the phase
// space, the symmetry group, a polynomial Hamiltonian, and one experiment.
//
// Format (one statement per line, '#' comments):
//   n = 2
//   seed = 42
//   group.kind = torus                  # trivial | torus | finite | general
//   group.weights = 1 -1                # repeated, one row per generator
//   group.element = <2n*2n numbers>     # repeated, row-major (finite kind)
//   group.generator = <2n*2n numbers>   # repeated (general kind)
//   group.structure = a b k value       # repeated (general kind), 1-based
//   hamiltonian.term = coeff : e_1 ... e_2n
//   experiment.kind = census            # check-re | reduce | census
//   experiment.energies = 0.05 0.1
//   experiment.seeds_per_level = 4
//   experiment.point = 0 0              # check-re
//   experiment.samples = 1000           # reduce clearance scan
//   tolerance.newton = 1e-10
//   tolerance.releq = 1e-8

#pragma once

#include "rpolab/group_action.hpp"
#include "rpolab/hamiltonian.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rpolab {

enum class ExperimentKind { CheckRelEq, Reduce, Census };

struct ScenarioTolerances {
    double newton = 1e-10;   // shooting residual gate
    double releq = 1e-8;     // relative-equilibrium acceptance gate
};

struct Scenario {
    int n = 0;
    std::uint64_t seed = 1;
    std::string group_kind = "trivial";
    std::vector<std::vector<long>> weights;
    std::vector<Mat> finite_elements;
    std::vector<Mat> generators;
    std::vector<std::array<double, 4>> structure_entries;  // (a, b, k, value)
    std::vector<PolynomialTerm> terms;
    ExperimentKind experiment = ExperimentKind::Census;
    std::vector<double> energies;
    int seeds_per_level = 4;
    Vec point;           // check-re
    int scan_samples = 1000;
    ScenarioTolerances tol;

    GroupAction build_action() const;
    PolynomialHamiltonian build_hamiltonian() const;
};

struct ParseIssue {
    int line = 0;        // 0: file-level issue
    std::string message;
};

struct ParseResult {
    std::optional<Scenario> scenario;
    std::vector<ParseIssue> issues;
    bool ok() const { return scenario.has_value() && issues.empty(); }
};

// Parse and validate; collects every issue instead of stopping at the first.
// Validation includes dimension checks and the Hamiltonian invariance
// residual under the declared action.
ParseResult parse_scenario(const std::string& text);

// Convenience: throws std::invalid_argument listing all issues.
Scenario parse_scenario_or_throw(const std::string& text);

} // namespace rpolab
