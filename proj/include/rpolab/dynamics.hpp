// dynamics.hpp — Hamiltonian flow with an implicit-midpoint integrator
// (conserves quadratic invariants, in particular every moment-map
// component), monodromy from the simultaneously linearized scheme, Newton
// shooting for relative periodic orbits, weak-nondegeneracy via the
// bordered rank of the return map, the zero-level clearance scan for
// definite quadratic Hamiltonians, and the per-energy-level orbit census
// checked against the category lower bound.

#pragma once

#include "rpolab/group_action.hpp"
#include "rpolab/hamiltonian.hpp"
#include "rpolab/reduction.hpp"
#include "rpolab/symplectic.hpp"

#include <optional>
#include <vector>

namespace rpolab {

struct FlowOptions {
    double dt = 0.0;            // 0: pick from the linearization frequencies
    bool with_monodromy = false;
    double inner_tol = 1e-13;   // inner Newton on the midpoint equations
    int inner_max_iter = 32;
    const MomentMap* moment_audit = nullptr;  // drift accounting when given
    int trajectory_samples = 0; // keep this many points along the run
};

struct FlowResult {
    Vec endpoint;
    std::optional<Mat> monodromy;
    double energy_drift = 0.0;
    double moment_drift = 0.0;
    int steps = 0;
    double dt = 0.0;
    std::vector<Vec> trajectory;  // only when trajectory_samples > 0
};

// Frequencies of the linearized flow at the origin: |Im spec(J hess h(0))|,
// i.e. the Williamson frequencies of the Taylor quadratic of h.
std::vector<double> linearization_frequencies(const HamiltonianOracle& oracle,
                                              const SymplecticSpace& space);

// Step heuristic: min(2 pi / (40 max frequency), T / 400).
double default_step(const std::vector<double>& freqs, double T);

FlowResult flow(const HamiltonianOracle& oracle, const SymplecticSpace& space,
                const Vec& x0, double T, const FlowOptions& opts = {});

// || flow_T(g x) - g flow_T(x) || for sampled group elements, max over samples.
double equivariance_flow_check(const HamiltonianOracle& oracle, const GroupAction& action,
                               const Vec& x, double T, int samples, RandomStream& rng,
                               const FlowOptions& opts = {});

struct RpoSeed {
    Vec x0;
    double T0 = 0.0;
    Vec theta0;          // algebra coordinates, size d
    int finite_index = -1;  // index into finite_elements, -1 = identity
};

struct RpoRecord {
    Vec x0;
    double T = 0.0;
    Vec group_params;       // theta with g = exp(sum theta_i xi_i)
    int finite_index = -1;
    double energy = 0.0;
    double shooting_residual = 0.0;
    Mat monodromy;
    int nondeg_space_dim = 0;
    int nondeg_expected_dim = 0;
    bool weakly_nondegenerate = false;
    Vec moment;             // Phi(x0)
    double monodromy_trace = 0.0;
    std::vector<Vec> orbit_points;  // samples along one closure period
};

struct ShootOptions {
    double tol = 1e-10;          // residual gate, scaled by 1 + ||x||
    int max_iter = 40;
    double equilibrium_tol = 1e-8;  // ||X_h|| below this is an equilibrium
    double energy_target = 0.0;
    bool pin_energy = true;
    FlowOptions flow_opts = {};
};

// Newton shooting on F(x, T, theta) = flow_T(x) - g(theta) x with the energy
// pin and a phase condition orthogonal to the initial flow direction; theta
// is gauge-fixed to the complement of the seed isotropy algebra. Throws
// NewtonDiverged / ConvergedToEquilibrium.
RpoRecord rpo_shoot(const HamiltonianOracle& oracle, const GroupAction& action,
                    const MomentMap& map, const RpoSeed& seed,
                    const ShootOptions& opts = {});

struct WeakNondegeneracy {
    int dim = 0;        // of { x in T(h^-1(E)) : (I - P) x is a multiple of X_h }
    int expected = 0;
    bool verdict = false;
    RankInfo rank_info;
};

// The expected dimension defaults to dim span{X_h(x0), xi_1 x0, .., xi_d x0}
// (the trivially periodic directions swept by the orbit and the group);
// pass expected_dim >= 0 to override.
WeakNondegeneracy weak_nondegeneracy(const RpoRecord& record, const HamiltonianOracle& oracle,
                                     const GroupAction& action, int expected_dim = -1);

struct ClearanceScan {
    double min_distance = 0.0;   // scale-normalized distance of dq(v) from
                                 // the row span of dPhi(v), min over samples
    Vec attaining_sample;
    bool hypothesis_violation = false;  // min ~ 0: a relative equilibrium
                                        // sits on the zero level
};

// Scan Phi^{-1}(0) /\ S^{2n-1} for relative equilibria of the quadratic form
// q: at every sample the differential of q must stay clear of the row span
// of dPhi. Definite q must produce a strictly positive minimum.
ClearanceScan releq_clearance_scan(const GroupAction& action, const MomentMap& map,
                                   const QuadraticForm& q, int samples, std::uint64_t seed);

struct CensusLevel {
    double energy = 0.0;
    int count_found = 0;
    int category_bound = 0;
    bool pass = false;
    std::vector<RpoRecord> records;
    std::vector<std::string> failures;  // seeds that did not converge
};

struct CensusResult {
    std::vector<CensusLevel> levels;
    LinkDescriptor link;
    CategoryBound bound;
    bool all_pass = false;
};

struct CensusOptions {
    int seeds_per_level = 4;
    std::uint64_t seed = 1;
    int jobs = 1;
    ShootOptions shoot = {};
    double distinct_energy_tol = 1e-8;
    double distinct_period_rel = 1e-6;
    double distinct_pointset_tol = 1e-5;
};

// Seeds from Williamson normal modes and linear near-returns on zero-level
// stratum samples, then shooting at each requested energy; distinct records
// are compared with the category lower bound per level.
CensusResult level_census(const HamiltonianOracle& oracle, const GroupAction& action,
                          const MomentMap& map, const std::vector<double>& energies,
                          const CensusOptions& opts = {});

} // namespace rpolab
