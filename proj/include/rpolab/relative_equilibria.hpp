// relative_equilibria.hpp — Relative-equilibrium residuals, the orthogonal
// velocity, and the slice-restricted Hessian positivity test.

#pragma once

#include "rpolab/group_action.hpp"
#include "rpolab/hamiltonian.hpp"

#include <string>
#include <vector>

namespace rpolab {

// Kernel of dPhi(m), tangent of the G_mu orbit through m, and the slice
// dimension (their difference).
struct SliceData {
    Mat kernel_basis;        // 2n x k, orthonormal
    Mat orbit_tangent_basis; // 2n x r, orthonormal, contained in the kernel
    int slice_dim = 0;
    RankInfo kernel_rank;
    RankInfo orbit_rank;
};

enum class SliceVerdict { PositiveDefiniteSlice, Indefinite, DegenerateRank, NotRelEq };

std::string to_string(SliceVerdict v);

struct RelEqReport {
    Vec point;
    MomentValue mu;
    Vec eta;                 // orthogonal velocity (generator coordinates)
    double residual = 0.0;   // || grad h(m) - dPhi(m)^T eta ||
    std::vector<double> hessian_eigenvalues; // of the kernel-restricted form
    double orbit_tangent_hessian_norm = 0.0; // restriction to orbit directions
    SliceData slice;
    SliceVerdict verdict = SliceVerdict::NotRelEq;
};

struct RelEqOptions {
    double accept_tol = 1e-8;   // residual gate, scaled by 1 + ||grad h(m)||
    double zero_tol = 1e-8;     // eigenvalue zero threshold, times spectral radius
    double rank_rel = 1e-6;     // SVD rank threshold for subspace decisions
};

// || grad h(m) - dPhi(m)^T eta ||_2, i.e. the norm of d(h - <Phi, eta>)(m).
double re_residual(const HamiltonianOracle& oracle, const MomentMap& map,
                   const Vec& m, const Vec& eta);

struct OrthogonalVelocity {
    Vec eta;
    double residual = 0.0;       // restricted to the admissible subspace
    double residual_full = 0.0;  // minimum over the whole algebra (the gate)
    Mat g_mu_basis;              // isotropy algebra of mu = Phi(m)
    Mat g_m_basis;               // isotropy algebra of m
};

// Unique minimizer of ||grad h(m) - dPhi(m)^T eta|| over the inner-product
// complement of g_m inside g_mu. Throws NotRelEq when even the full-algebra
// minimum exceeds the acceptance gate.
OrthogonalVelocity orthogonal_velocity(const HamiltonianOracle& oracle,
                                       const GroupAction& action, const MomentMap& map,
                                       const Vec& m, const Mat& inner_product = Mat(),
                                       const RelEqOptions& opts = {});

SliceData slice_data(const GroupAction& action, const MomentMap& map, const Vec& m,
                     const MomentValue& mu, const RelEqOptions& opts = {});

// Full test: orthogonal velocity, Hessian of h - <Phi, eta> restricted to
// ker dPhi(m), verdict from signs/rank, and the vanishing of the restriction
// to the orbit tangent directions.
RelEqReport slice_hessian_test(const HamiltonianOracle& oracle, const GroupAction& action,
                               const MomentMap& map, const Vec& m,
                               const RelEqOptions& opts = {});

} // namespace rpolab
