// report.hpp — Experiment dispatch and deterministic report bundles: a
// human-readable table plus a machine-readable JSON document, both carrying
// a provenance block (scenario hash, seed, version, tolerances).

#pragma once

#include "rpolab/scenario.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>

namespace rpolab {

inline constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

struct ReportBundle {
    std::string experiment;   // check-re | reduce | census
    int exit_code = 0;        // 0 ok, 2 infrastructure failure, 3 bound violation
    std::string json_text;    // serialized machine-readable report
    std::string table_text;   // human-readable table
};

// Run the scenario's experiment end to end. Never throws for experiment
// failures: they are folded into the bundle with exit code 2/3.
ReportBundle run(const Scenario& scenario, const std::string& scenario_text,
                 int jobs = 1);

// Write <stem>.report.json and <stem>.report.txt under out_dir; returns the
// JSON path.
std::string write_bundle(const ReportBundle& bundle, const std::string& out_dir,
                         const std::string& stem);

} // namespace rpolab
