// hamiltonian.hpp — Point-wise value / gradient / Hessian suppliers for
// invariant Hamiltonians, plus the polynomial Hamiltonian used by scenario
// files and the finite-difference consistency checks.

#pragma once

#include "rpolab/group_action.hpp"
#include "rpolab/linalg.hpp"

#include <functional>
#include <vector>

namespace rpolab {

struct HamiltonianOracle {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
    int dim = 0;

    // Oracle for the quadratic function q(x) = x^T Q x.
    static HamiltonianOracle quadratic(const Mat& Q);
};

// Polynomial over the 2n real coordinates: sum of coeff * prod x_i^{e_i}.
struct PolynomialTerm {
    double coeff = 0.0;
    std::vector<int> exponents;
};

class PolynomialHamiltonian {
public:
    PolynomialHamiltonian(int dim, std::vector<PolynomialTerm> terms);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;
    int dim() const { return dim_; }
    const std::vector<PolynomialTerm>& terms() const { return terms_; }

    HamiltonianOracle oracle() const;

private:
    int dim_;
    std::vector<PolynomialTerm> terms_;
};

// Max relative mismatch between the oracle's gradient/hessian and central
// finite differences of value/gradient at sampled points.
struct OracleConsistency {
    double gradient_residual = 0.0;
    double hessian_residual = 0.0;
};
OracleConsistency oracle_consistency(const HamiltonianOracle& oracle, int samples,
                                     RandomStream& rng, double fd_step = 1e-5);

// Max over sampled (g, v) of |h(g v) - h(v)| / (1 + |h(v)|).
double invariance_residual(const HamiltonianOracle& oracle, const GroupAction& action,
                           int samples, RandomStream& rng);

} // namespace rpolab
