#include "rpolab/report.hpp"

#include "rpolab/dynamics.hpp"
#include "rpolab/errors.hpp"
#include "rpolab/relative_equilibria.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rpolab {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

ordered_json vec_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

ordered_json provenance_json(const Scenario& sc, const std::string& scenario_text) {
    ordered_json tol;
    tol["newton"] = sc.tol.newton;
    tol["releq"] = sc.tol.releq;
    tol["integrator_inner"] = 1e-13;
    tol["zero_level_phi"] = 1e-10;
    tol["zero_level_sphere"] = 1e-12;
    tol["rank_relative"] = 1e-6;
    tol["distinct_energy"] = 1e-8;
    tol["distinct_period_rel"] = 1e-6;
    tol["distinct_pointset"] = 1e-5;
    ordered_json p;
    p["version"] = kVersion;
    p["scenario_hash"] = hex64(fnv1a64(scenario_text));
    p["seed"] = sc.seed;
    p["tolerances"] = tol;
    return p;
}

ordered_json releq_json(const RelEqReport& r) {
    ordered_json j;
    j["verdict"] = to_string(r.verdict);
    j["point"] = vec_json(r.point);
    j["mu"] = vec_json(r.mu.mu);
    j["eta"] = vec_json(r.eta);
    j["residual"] = r.residual;
    j["hessian_eigenvalues"] = r.hessian_eigenvalues;
    j["orbit_tangent_hessian_norm"] = r.orbit_tangent_hessian_norm;
    j["kernel_dim"] = static_cast<int>(r.slice.kernel_basis.cols());
    j["orbit_tangent_dim"] = static_cast<int>(r.slice.orbit_tangent_basis.cols());
    j["slice_dim"] = r.slice.slice_dim;
    j["kernel_gap_ratio"] = r.slice.kernel_rank.gap_ratio;
    j["orbit_gap_ratio"] = r.slice.orbit_rank.gap_ratio;
    return j;
}

std::string releq_table(const RelEqReport& r) {
    std::ostringstream os;
    os << "relative equilibrium test\n";
    os << "  verdict            " << to_string(r.verdict) << "\n";
    os << "  residual           " << fmt(r.residual) << "\n";
    os << "  slice dim          " << r.slice.slice_dim << "\n";
    os << "  kernel dim         " << r.slice.kernel_basis.cols() << "\n";
    os << "  orbit tangent dim  " << r.slice.orbit_tangent_basis.cols() << "\n";
    os << "  orbit-restricted Hessian norm " << fmt(r.orbit_tangent_hessian_norm) << "\n";
    os << "  restricted eigenvalues:";
    for (double e : r.hessian_eigenvalues) os << " " << fmt(e);
    os << "\n";
    return os.str();
}

const char* class_name(LinkSpaceClass c) {
    switch (c) {
        case LinkSpaceClass::Point: return "point";
        case LinkSpaceClass::ComplexProjective: return "complex-projective";
        case LinkSpaceClass::WeightedProjective: return "weighted-projective";
        case LinkSpaceClass::Unknown: return "unknown";
    }
    return "?";
}

ordered_json census_json(const CensusResult& c) {
    ordered_json j;
    j["category_bound"] = c.bound.N;
    ordered_json levels = ordered_json::array();
    for (const auto& lv : c.levels) {
        ordered_json l;
        l["energy"] = lv.energy;
        l["count_found"] = lv.count_found;
        l["category_bound"] = lv.category_bound;
        l["pass"] = lv.pass;
        ordered_json recs = ordered_json::array();
        for (const auto& r : lv.records) {
            ordered_json rec;
            rec["x0"] = vec_json(r.x0);
            rec["period"] = r.T;
            rec["group_params"] = vec_json(r.group_params);
            rec["finite_index"] = r.finite_index;
            rec["energy"] = r.energy;
            rec["shooting_residual"] = r.shooting_residual;
            rec["moment"] = vec_json(r.moment);
            rec["monodromy_trace"] = r.monodromy_trace;
            rec["nondeg_space_dim"] = r.nondeg_space_dim;
            rec["nondeg_expected_dim"] = r.nondeg_expected_dim;
            rec["weakly_nondegenerate"] = r.weakly_nondegenerate;
            recs.push_back(std::move(rec));
        }
        l["records"] = std::move(recs);
        l["failures"] = lv.failures;
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

std::string census_table(const CensusResult& c) {
    std::ostringstream os;
    os << "orbit census (category bound N = " << c.bound.N << ")\n";
    os << "  energy        count  N  pass\n";
    for (const auto& lv : c.levels) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %-12s  %-5d  %-2d %s\n", fmt(lv.energy).c_str(),
                      lv.count_found, lv.category_bound, lv.pass ? "yes" : "NO");
        os << buf;
        for (const auto& r : lv.records)
            os << "    T = " << fmt(r.T) << ", residual " << fmt(r.shooting_residual)
               << (r.weakly_nondegenerate ? ", weakly nondegenerate" : "") << "\n";
        for (const auto& f : lv.failures) os << "    failed: " << f << "\n";
    }
    return os.str();
}

struct ReduceOutput {
    LinkDescriptor link;
    CategoryBound bound;
    ClearanceScan scan;
    ResonanceTorus torus;
    bool have_torus = false;
};

ordered_json reduce_json(const ReduceOutput& r) {
    ordered_json j;
    ordered_json strata = ordered_json::array();
    for (std::size_t i = 0; i < r.link.strata.size(); ++i) {
        const auto& s = r.link.strata[i];
        const auto& c = r.bound.per_stratum[i];
        ordered_json e;
        e["label"] = s.isotropy_label;
        ordered_json supp = ordered_json::array();
        for (int v : s.support) supp.push_back(v + 1);
        e["support"] = std::move(supp);
        e["real_dimension"] = s.real_dimension;
        e["symplectic_link_dimension"] = s.symplectic_link_dimension;
        e["closed"] = s.closed_flag;
        e["isotropy_algebra_dim"] = s.isotropy_algebra_dim;
        e["space_class"] = class_name(c.space_class);
        e["cat"] = c.cat;
        e["cat_fallback"] = c.fallback;
        strata.push_back(std::move(e));
    }
    j["strata"] = std::move(strata);
    j["fixed_point_note"] = r.link.fixed_point_note;
    j["category_bound"] = r.bound.N;
    j["clearance_min_distance"] = r.scan.min_distance;
    j["clearance_hypothesis_violation"] = r.scan.hypothesis_violation;
    j["clearance_attaining_sample"] = vec_json(r.scan.attaining_sample);
    if (r.have_torus) {
        j["resonance_rank"] = r.torus.rank;
        j["resonance_freqs"] = r.torus.freqs;
        ordered_json rel = ordered_json::array();
        for (const auto& k : r.torus.relation_lattice) rel.push_back(k);
        j["resonance_relations"] = std::move(rel);
    }
    return j;
}

std::string reduce_table(const ReduceOutput& r) {
    std::ostringstream os;
    os << "reduced-space structure (category bound N = " << r.bound.N << ")\n";
    if (r.link.fixed_point_note) os << "  note: the fixed subspace V^K is nonzero\n";
    os << "  stratum                          dim  link-dim  closed  Cat  class\n";
    for (std::size_t i = 0; i < r.link.strata.size(); ++i) {
        const auto& s = r.link.strata[i];
        const auto& c = r.bound.per_stratum[i];
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-31s  %-3d  %-8d  %-6s  %-3d  %s%s\n",
                      s.isotropy_label.c_str(), s.real_dimension, s.symplectic_link_dimension,
                      s.closed_flag ? "yes" : "no", c.cat, class_name(c.space_class),
                      c.fallback ? " (fallback)" : "");
        os << buf;
    }
    os << "  clearance scan: min distance " << fmt(r.scan.min_distance)
       << (r.scan.hypothesis_violation ? "  ** hypothesis violation **" : "") << "\n";
    if (r.have_torus) {
        os << "  resonance torus rank " << r.torus.rank << " (freqs";
        for (double f : r.torus.freqs) os << " " << fmt(f);
        os << ")\n";
    }
    return os.str();
}

} // namespace

ReportBundle run(const Scenario& sc, const std::string& scenario_text, int jobs) {
    ReportBundle bundle;
    ordered_json j;
    j["provenance"] = provenance_json(sc, scenario_text);

    bundle.experiment = sc.experiment == ExperimentKind::CheckRelEq ? "check-re"
                        : sc.experiment == ExperimentKind::Reduce   ? "reduce"
                                                                    : "census";
    j["experiment"] = bundle.experiment;

    RelEqOptions releq_opts;
    releq_opts.accept_tol = sc.tol.releq;

    std::ostringstream table;

    try {
        const GroupAction action = sc.build_action();
        const PolynomialHamiltonian poly = sc.build_hamiltonian();
        const HamiltonianOracle oracle = poly.oracle();
        const MomentMap map = homogeneous_moment_map(action);

        switch (sc.experiment) {
            case ExperimentKind::CheckRelEq: {
                const RelEqReport r = slice_hessian_test(oracle, action, map, sc.point, releq_opts);
                j["result"] = releq_json(r);
                table << releq_table(r);
                bundle.exit_code = 0;
                break;
            }
            case ExperimentKind::Reduce: {
                ReduceOutput out;
                std::vector<Vec> samples;
                if (map.algebra_dim() > 0)
                    samples = sample_zero_level(action, map, 16, sc.seed);
                out.link = stratify(action, samples);
                out.bound = category_lower_bound(action, out.link);
                out.scan = releq_clearance_scan(
                    action, map,
                    QuadraticForm::from_hessian(oracle.hessian(Vec::Zero(2 * sc.n))),
                    sc.scan_samples, sc.seed + 1);
                const auto freqs = linearization_frequencies(oracle, action.space);
                if (!freqs.empty()) {
                    out.torus = resonance_torus(freqs, 12);
                    out.have_torus = true;
                }
                j["result"] = reduce_json(out);
                table << reduce_table(out);
                bundle.exit_code = 0;
                break;
            }
            case ExperimentKind::Census: {
                CensusOptions opts;
                opts.seeds_per_level = sc.seeds_per_level;
                opts.seed = sc.seed;
                opts.jobs = jobs;
                opts.shoot.tol = sc.tol.newton;
                const CensusResult c = level_census(oracle, action, map, sc.energies, opts);
                j["result"] = census_json(c);
                table << census_table(c);
                bundle.exit_code = c.all_pass ? 0 : 3;
                break;
            }
        }
        j["status"] = bundle.exit_code == 0 ? "ok"
                      : bundle.exit_code == 3 ? "bound-violation"
                                              : "infrastructure-failure";
    } catch (const std::exception& e) {
        bundle.exit_code = 2;
        j["status"] = "infrastructure-failure";
        j["error"] = e.what();
        table << "error: " << e.what() << "\n";
    }

    bundle.json_text = j.dump(2) + "\n";
    bundle.table_text = table.str();
    return bundle;
}

std::string write_bundle(const ReportBundle& bundle, const std::string& out_dir,
                         const std::string& stem) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir) / stem;
    const std::string json_path = base.string() + ".report.json";
    {
        std::ofstream f(json_path, std::ios::binary);
        f << bundle.json_text;
    }
    {
        std::ofstream f(base.string() + ".report.txt", std::ios::binary);
        f << bundle.table_text;
    }
    return json_path;
}

} // namespace rpolab
