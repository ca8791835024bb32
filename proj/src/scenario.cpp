#include "rpolab/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rpolab {

GroupAction Scenario::build_action() const {
    if (group_kind == "trivial") return GroupAction::trivial(n);
    if (group_kind == "torus") return GroupAction::torus(n, weights);
    if (group_kind == "finite") return GroupAction::finite(n, finite_elements);
    if (group_kind == "general") {
        const int d = static_cast<int>(generators.size());
        std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
        for (const auto& e : structure_entries) {
            const int a = static_cast<int>(e[0]) - 1;
            const int b = static_cast<int>(e[1]) - 1;
            const int k = static_cast<int>(e[2]) - 1;
            c[(static_cast<std::size_t>(a) * d + b) * d + k] = e[3];
            c[(static_cast<std::size_t>(b) * d + a) * d + k] = -e[3];
        }
        return GroupAction::general(SymplecticSpace::standard(n), generators, c, finite_elements);
    }
    throw std::invalid_argument("Scenario: unknown group kind '" + group_kind + "'");
}

PolynomialHamiltonian Scenario::build_hamiltonian() const {
    return PolynomialHamiltonian(2 * n, terms);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_long(const std::string& s, long& out) {
    try {
        std::size_t pos = 0;
        out = std::stol(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

struct Collector {
    std::vector<ParseIssue>* issues;
    void add(int line, const std::string& msg) { issues->push_back({line, msg}); }
};

} // namespace

ParseResult parse_scenario(const std::string& text) {
    ParseResult result;
    Scenario sc;
    Collector c{&result.issues};

    bool have_n = false, have_experiment = false;
    std::vector<std::pair<int, std::string>> deferred_matrix_lines;  // need n first
    std::vector<std::pair<int, std::string>> deferred_term_lines;
    std::vector<std::pair<int, std::string>> deferred_point_lines;

    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            c.add(lineno, "expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "n") {
            long v;
            if (!parse_long(value, v) || v < 1 || v > 16)
                c.add(lineno, "n must be an integer in [1, 16]");
            else {
                sc.n = static_cast<int>(v);
                have_n = true;
            }
        } else if (key == "seed") {
            long v;
            if (!parse_long(value, v) || v < 0)
                c.add(lineno, "seed must be a nonnegative integer");
            else
                sc.seed = static_cast<std::uint64_t>(v);
        } else if (key == "group.kind") {
            if (value != "trivial" && value != "torus" && value != "finite" && value != "general")
                c.add(lineno, "group.kind must be trivial|torus|finite|general");
            else
                sc.group_kind = value;
        } else if (key == "group.weights") {
            std::vector<long> row;
            bool bad = false;
            for (const auto& t : tokens(value)) {
                long w;
                if (!parse_long(t, w)) bad = true;
                else row.push_back(w);
            }
            if (bad || row.empty())
                c.add(lineno, "group.weights: expected a list of integers");
            else
                sc.weights.push_back(std::move(row));
        } else if (key == "group.element" || key == "group.generator") {
            deferred_matrix_lines.push_back({lineno, line});
        } else if (key == "group.structure") {
            const auto ts = tokens(value);
            std::array<double, 4> e{};
            bool bad = ts.size() != 4;
            for (std::size_t i = 0; i < ts.size() && i < 4; ++i)
                if (!parse_double(ts[i], e[i])) bad = true;
            if (bad)
                c.add(lineno, "group.structure: expected 'a b k value'");
            else
                sc.structure_entries.push_back(e);
        } else if (key == "hamiltonian.term") {
            deferred_term_lines.push_back({lineno, value});
        } else if (key == "experiment.kind") {
            if (value == "check-re") sc.experiment = ExperimentKind::CheckRelEq;
            else if (value == "reduce") sc.experiment = ExperimentKind::Reduce;
            else if (value == "census") sc.experiment = ExperimentKind::Census;
            else {
                c.add(lineno, "experiment.kind must be check-re|reduce|census");
                continue;
            }
            have_experiment = true;
        } else if (key == "experiment.energies") {
            bool bad = false;
            for (const auto& t : tokens(value)) {
                double e;
                if (!parse_double(t, e) || !(e > 0)) bad = true;
                else sc.energies.push_back(e);
            }
            if (bad) c.add(lineno, "experiment.energies: expected positive numbers");
        } else if (key == "experiment.seeds_per_level") {
            long v;
            if (!parse_long(value, v) || v < 0 || v > 64)
                c.add(lineno, "experiment.seeds_per_level must be in [0, 64]");
            else
                sc.seeds_per_level = static_cast<int>(v);
        } else if (key == "experiment.point") {
            deferred_point_lines.push_back({lineno, value});
        } else if (key == "experiment.samples") {
            long v;
            if (!parse_long(value, v) || v < 1 || v > 100000)
                c.add(lineno, "experiment.samples must be in [1, 100000]");
            else
                sc.scan_samples = static_cast<int>(v);
        } else if (key == "tolerance.newton") {
            double v;
            if (!parse_double(value, v) || !(v > 0))
                c.add(lineno, "tolerance.newton must be positive");
            else
                sc.tol.newton = v;
        } else if (key == "tolerance.releq") {
            double v;
            if (!parse_double(value, v) || !(v > 0))
                c.add(lineno, "tolerance.releq must be positive");
            else
                sc.tol.releq = v;
        } else {
            c.add(lineno, "unknown key '" + key + "'");
        }
    }

    if (!have_n) c.add(0, "missing required key 'n'");
    if (!have_experiment) c.add(0, "missing required key 'experiment.kind'");

    if (have_n) {
        const int dim = 2 * sc.n;
        for (const auto& [ln, line] : deferred_matrix_lines) {
            const auto eq = line.find('=');
            const std::string key = trim(line.substr(0, eq));
            const auto ts = tokens(trim(line.substr(eq + 1)));
            if (static_cast<int>(ts.size()) != dim * dim) {
                c.add(ln, key + ": expected " + std::to_string(dim * dim) +
                              " numbers (row-major " + std::to_string(dim) + "x" +
                              std::to_string(dim) + ")");
                continue;
            }
            Mat M(dim, dim);
            bool bad = false;
            for (int i = 0; i < dim * dim; ++i) {
                double v;
                if (!parse_double(ts[i], v)) bad = true;
                else M(i / dim, i % dim) = v;
            }
            if (bad) {
                c.add(ln, key + ": malformed number");
                continue;
            }
            if (key == "group.element") sc.finite_elements.push_back(M);
            else sc.generators.push_back(M);
        }
        for (const auto& [ln, value] : deferred_term_lines) {
            const auto colon = value.find(':');
            if (colon == std::string::npos) {
                c.add(ln, "hamiltonian.term: expected 'coeff : e_1 ... e_2n'");
                continue;
            }
            PolynomialTerm term;
            if (!parse_double(trim(value.substr(0, colon)), term.coeff)) {
                c.add(ln, "hamiltonian.term: malformed coefficient");
                continue;
            }
            bool bad = false;
            for (const auto& t : tokens(value.substr(colon + 1))) {
                long e;
                if (!parse_long(t, e) || e < 0 || e > 12) bad = true;
                else term.exponents.push_back(static_cast<int>(e));
            }
            if (bad || static_cast<int>(term.exponents.size()) != dim) {
                c.add(ln, "hamiltonian.term: expected " + std::to_string(dim) +
                              " nonnegative exponents");
                continue;
            }
            sc.terms.push_back(std::move(term));
        }
        for (const auto& [ln, value] : deferred_point_lines) {
            const auto ts = tokens(value);
            if (static_cast<int>(ts.size()) != dim) {
                c.add(ln, "experiment.point: expected " + std::to_string(dim) + " numbers");
                continue;
            }
            sc.point = Vec(dim);
            for (int i = 0; i < dim; ++i) {
                double v;
                if (!parse_double(ts[i], v)) {
                    c.add(ln, "experiment.point: malformed number");
                    break;
                }
                sc.point(i) = v;
            }
        }
    }

    // semantic validation
    if (have_n) {
        if (sc.group_kind == "torus") {
            if (sc.weights.empty())
                c.add(0, "group.kind torus requires at least one group.weights row");
            for (std::size_t r = 0; r < sc.weights.size(); ++r)
                if (static_cast<int>(sc.weights[r].size()) != sc.n)
                    c.add(0, "group.weights row " + std::to_string(r + 1) + " has length " +
                                  std::to_string(sc.weights[r].size()) + ", expected n = " +
                                  std::to_string(sc.n));
        }
        if (sc.group_kind == "finite" && sc.finite_elements.empty())
            c.add(0, "group.kind finite requires group.element rows");
        if (sc.group_kind == "general" && sc.generators.empty())
            c.add(0, "group.kind general requires group.generator rows");
        if (sc.terms.empty()) c.add(0, "hamiltonian.term rows are required");
        if (have_experiment) {
            if (sc.experiment == ExperimentKind::Census && sc.energies.empty())
                c.add(0, "experiment.kind census requires experiment.energies");
            if (sc.experiment == ExperimentKind::CheckRelEq && sc.point.size() != 2 * sc.n)
                c.add(0, "experiment.kind check-re requires experiment.point");
        }
    }

    if (!result.issues.empty()) return result;

    // invariant: the Hamiltonian must be invariant under the declared action
    try {
        const GroupAction action = sc.build_action();
        const HamiltonianOracle oracle = sc.build_hamiltonian().oracle();
        RandomStream rng(0xC0FFEEULL);
        const double inv = invariance_residual(oracle, action, 64, rng);
        if (inv > 1e-8)
            c.add(0, "hamiltonian is not invariant under the declared action "
                     "(invariance residual " + std::to_string(inv) + ")");
        const OracleConsistency oc = oracle_consistency(oracle, 4, rng);
        if (oc.gradient_residual > 1e-6 || oc.hessian_residual > 1e-5)
            c.add(0, "hamiltonian oracle fails finite-difference consistency");
    } catch (const std::exception& e) {
        c.add(0, std::string("action construction failed: ") + e.what());
    }

    if (result.issues.empty()) result.scenario = std::move(sc);
    return result;
}

Scenario parse_scenario_or_throw(const std::string& text) {
    ParseResult r = parse_scenario(text);
    if (r.ok()) return *r.scenario;
    std::ostringstream os;
    os << "scenario has " << r.issues.size() << " issue(s):";
    for (const auto& i : r.issues) {
        os << "\n  ";
        if (i.line > 0) os << "line " << i.line << ": ";
        os << i.message;
    }
    throw std::invalid_argument(os.str());
}

} // namespace rpolab
