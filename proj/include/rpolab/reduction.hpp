// reduction.hpp — Structure of the reduced space at zero momentum: samples
// of the zero level set on the unit sphere, the stratified link and its
// circle quotient, the resonance torus of a definite quadratic form, and
// Liusternik-Schnirelman category lower bounds.

#pragma once

#include "rpolab/group_action.hpp"
#include "rpolab/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rpolab {

// Exact nonnegative rational combination sum t_j w_j = 0 (torus weights),
// stored as integers after clearing denominators.
struct BalanceCertificate {
    std::vector<long long> t;  // length n, >= 0, not all zero
};

// Decide whether the zero level set of a torus moment map meets the unit
// sphere: 0 must lie in the convex hull of the weight vectors. Exact
// (integer/rational) computation; nullopt when the level set is {0}.
std::optional<BalanceCertificate>
zero_level_certificate(const std::vector<std::vector<long>>& weight_rows, int n);

// Strictly positive certificate supported exactly on the given coordinate
// set (defines an admissible support / stratum of the link).
std::optional<BalanceCertificate>
support_certificate(const std::vector<std::vector<long>>& weight_rows, int n,
                    const std::vector<int>& support);

struct ZeroLevelOptions {
    double phi_tol = 1e-10;
    double sphere_tol = 1e-12;
    int max_newton = 80;
};

// Points on Phi^{-1}(0) intersected with the unit sphere, found by projected
// Newton from seeded random sphere points. Throws EmptyLevelSet (torus kind,
// decided exactly) or NewtonStall.
std::vector<Vec> sample_zero_level(const GroupAction& action, const MomentMap& map,
                                   int count, std::uint64_t seed,
                                   const ZeroLevelOptions& opts = {});

struct StratumDescriptor {
    std::string isotropy_label;
    std::vector<int> support;        // torus kind: occupied complex coordinates
    int real_dimension = 0;          // dimension inside the link L
    int symplectic_link_dimension = 0;
    bool closed_flag = false;
    int isotropy_algebra_dim = 0;
    Vec witness;                     // one exact sample on the stratum
};

struct LinkDescriptor {
    std::vector<StratumDescriptor> strata;
    std::vector<Vec> samples;
    std::vector<int> sample_stratum;  // index into strata per sample, -1 unmatched
    bool fixed_point_note = false;    // V^K != {0}
};

// Stratification of L = (Phi^{-1}(0) /\ S^{2n-1}) / K at the circle-quotient
// (orbifold) granularity. Torus kind: admissible coordinate supports, with
// the fixed subspace V^K collapsed to a single stratum. Finite kind:
// isotropy subgroups. Throws UnsupportedGroupKind otherwise.
LinkDescriptor stratify(const GroupAction& action, const std::vector<Vec>& link_samples);

struct ResonanceTorus {
    std::vector<double> freqs;
    int rank = 0;                          // dimension of the closure torus
    std::vector<std::vector<long>> relation_lattice; // independent integer relations
};

// Integer relations k . freqs = 0 found by bounded exhaustive search over
// |k_i| <= denominator_bound.
ResonanceTorus resonance_torus(const std::vector<double>& freqs, int denominator_bound,
                               double rel_tol = 1e-9);

enum class LinkSpaceClass { Point, ComplexProjective, WeightedProjective, Unknown };

struct StratumCategory {
    std::string label;
    LinkSpaceClass space_class = LinkSpaceClass::Unknown;
    int cat = 1;
    bool fallback = false;  // not in the lookup table; conservative Cat = 1
    bool closed = false;
};

struct CategoryBound {
    std::vector<StratumCategory> per_stratum;
    int N = 0;  // sum of Cat over closed strata
};

CategoryBound category_lower_bound(const GroupAction& action, const LinkDescriptor& link);

} // namespace rpolab
