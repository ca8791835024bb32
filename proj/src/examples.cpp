#include "rpolab/examples.hpp"

#include <cstdio>
#include <sstream>

namespace rpolab {

namespace {

// terms for c * |z_j|^2 over 2n real coordinates (x_1..x_n, y_1..y_n)
std::string mod2_terms(int n, int j, const std::string& coeff) {
    std::ostringstream os;
    for (int part = 0; part < 2; ++part) {
        os << "hamiltonian.term = " << coeff << " :";
        for (int i = 0; i < 2 * n; ++i)
            os << " " << ((i == j + part * n) ? 2 : 0);
        os << "\n";
    }
    return os.str();
}

// terms for (|z_1|^2 + .. + |z_n|^2)^2 = (sum_i u_i^2)^2 over all 2n coords
std::string radial_quartic_terms(int n, const std::string& coeff2) {
    std::ostringstream os;
    const int dim = 2 * n;
    for (int i = 0; i < dim; ++i) {
        os << "hamiltonian.term = 1 :";
        for (int k = 0; k < dim; ++k) os << " " << (k == i ? 4 : 0);
        os << "\n";
    }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            os << "hamiltonian.term = " << coeff2 << " :";
            for (int k = 0; k < dim; ++k) os << " " << ((k == i || k == j) ? 2 : 0);
            os << "\n";
        }
    return os.str();
}

// terms for |z_a|^2 |z_b|^2 = (x_a^2 + y_a^2)(x_b^2 + y_b^2)
std::string product_mod2_terms(int n, int a, int b) {
    std::ostringstream os;
    const int idx[2][2] = {{a, a + n}, {b, b + n}};
    for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb) {
            os << "hamiltonian.term = 1 :";
            for (int k = 0; k < 2 * n; ++k)
                os << " " << ((k == idx[0][pa] || k == idx[1][pb]) ? 2 : 0);
            os << "\n";
        }
    return os.str();
}

std::vector<BuiltinExample> make_registry() {
    std::vector<BuiltinExample> reg;

    {
        std::ostringstream os;
        os << "# One harmonic mode; slice test at the origin.\n"
           << "n = 1\n"
           << "seed = 11\n"
           << "group.kind = trivial\n"
           << "hamiltonian.term = 0.5 : 2 0\n"
           << "hamiltonian.term = 0.5 : 0 2\n"
           << "experiment.kind = check-re\n"
           << "experiment.point = 0 0\n";
        reg.push_back({"trivial-point", "harmonic mode, slice test at the origin", os.str()});
    }
    {
        std::ostringstream os;
        os << "# Two modes with a radially symmetric quartic coupling.\n"
           << "n = 2\n"
           << "seed = 2024\n"
           << "group.kind = trivial\n"
           << mod2_terms(2, 0, "1") << mod2_terms(2, 1, "2")
           << radial_quartic_terms(2, "2")
           << "experiment.kind = census\n"
           << "experiment.energies = 0.05 0.08 0.12 0.16 0.2\n"
           << "experiment.seeds_per_level = 4\n";
        reg.push_back({"weinstein-2modes", "two coupled modes, counts vs the n-mode bound",
                       os.str()});
    }
    {
        std::ostringstream os;
        os << "# Two linear modes with irrational frequency ratio sqrt(2).\n"
           << "n = 2\n"
           << "seed = 7\n"
           << "group.kind = trivial\n"
           << mod2_terms(2, 0, "1") << mod2_terms(2, 1, "1.4142135623730951")
           << "experiment.kind = census\n"
           << "experiment.energies = 0.1 0.2\n"
           << "experiment.seeds_per_level = 2\n";
        reg.push_back({"irrational-2modes", "linear modes with irrational frequency ratio",
                       os.str()});
    }
    {
        std::ostringstream os;
        os << "# Fully resonant pair: every orbit is periodic.\n"
           << "n = 2\n"
           << "seed = 7\n"
           << "group.kind = trivial\n"
           << mod2_terms(2, 0, "1") << mod2_terms(2, 1, "1")
           << "experiment.kind = census\n"
           << "experiment.energies = 0.1\n"
           << "experiment.seeds_per_level = 2\n";
        reg.push_back({"resonant-2modes", "fully resonant control (degenerate return map)",
                       os.str()});
    }
    {
        std::ostringstream os;
        os << "# Circle action with weights (1, -1); invariant quartic coupling.\n"
           << "n = 2\n"
           << "seed = 99\n"
           << "group.kind = torus\n"
           << "group.weights = 1 -1\n"
           << mod2_terms(2, 0, "1") << mod2_terms(2, 1, "2") << product_mod2_terms(2, 0, 1)
           << "experiment.kind = census\n"
           << "experiment.energies = 0.05 0.1 0.15\n"
           << "experiment.seeds_per_level = 4\n";
        reg.push_back({"s1-weights-1-minus1",
                       "circle action with balanced weights, relative orbit census", os.str()});
    }
    {
        std::ostringstream os;
        os << "# Circle action with weights (1, 1, -1); stratified link.\n"
           << "n = 3\n"
           << "seed = 5\n"
           << "group.kind = torus\n"
           << "group.weights = 1 1 -1\n"
           << mod2_terms(3, 0, "1") << mod2_terms(3, 1, "2") << mod2_terms(3, 2, "3")
           << radial_quartic_terms(3, "2")
           << "experiment.kind = reduce\n"
           << "experiment.samples = 1000\n";
        reg.push_back({"s1-weights-1-1-minus1", "three-coordinate circle action, stratified link",
                       os.str()});
    }
    {
        std::ostringstream os;
        os << "# Circle action with weights (1, 1): the zero level set is {0}.\n"
           << "n = 2\n"
           << "seed = 3\n"
           << "group.kind = torus\n"
           << "group.weights = 1 1\n"
           << mod2_terms(2, 0, "1") << mod2_terms(2, 1, "1")
           << "experiment.kind = reduce\n";
        reg.push_back({"empty-level", "unbalanced weights: empty reduced space", os.str()});
    }
    {
        std::ostringstream os;
        os << "# Indefinite invariant quadratic: the clearance scan must hit zero.\n"
           << "n = 2\n"
           << "seed = 13\n"
           << "group.kind = torus\n"
           << "group.weights = 1 -1\n"
           << mod2_terms(2, 0, "1") << mod2_terms(2, 1, "-1")
           << "experiment.kind = reduce\n"
           << "experiment.samples = 400\n";
        reg.push_back({"clearance-negative-control",
                       "indefinite quadratic: zero-level clearance vanishes", os.str()});
    }
    {
        std::ostringstream os;
        os << "# Hamiltonian not invariant under the declared weights: must fail validation.\n"
           << "n = 2\n"
           << "seed = 1\n"
           << "group.kind = torus\n"
           << "group.weights = 1 -1\n"
           << "hamiltonian.term = 1 : 2 0 0 0\n"
           << "experiment.kind = reduce\n";
        reg.push_back({"negative-control-noninvariant",
                       "non-invariant Hamiltonian, rejected by validation", os.str()});
    }
    return reg;
}

} // namespace

const std::vector<BuiltinExample>& builtin_examples() {
    static const std::vector<BuiltinExample> reg = make_registry();
    return reg;
}

const BuiltinExample* find_example(const std::string& name) {
    for (const auto& e : builtin_examples())
        if (e.name == name) return &e;
    return nullptr;
}

} // namespace rpolab
