// group_action.hpp — Compact symmetry groups acting linearly and
// symplectically on (R^{2n}, omega), their homogeneous moment maps, and
// isotropy computations.
//
// Moment map convention: <Phi(v), xi> = (1/2) omega(xi v, v) for every
// algebra element xi, realized by the component matrices Q_i = -(1/2) J xi_i.
// For a torus action where the weight vector w_j is attached to the complex
// coordinate z_j (the generator a rotates z_j at rate -w_j^a), this gives
//   <Phi(z), xi_a> = (1/2) sum_j w_j^a |z_j|^2,
// so the central circle (weights all 1) has moment (1/2)||z||^2.
//
// Coadjoint convention: (ad*_xi mu)_b = sum_{a,k} xi^a c_{ab}^k mu_k where
// [xi_a, xi_b] = sum_k c_{ab}^k xi_k.

#pragma once

#include "rpolab/linalg.hpp"
#include "rpolab/symplectic.hpp"

#include <optional>
#include <vector>

namespace rpolab {

enum class GroupKind { Torus, Finite, General };

struct GroupAction {
    SymplecticSpace space;
    GroupKind kind = GroupKind::Torus;
    std::vector<Mat> generators;            // d matrices in sp(V, omega)
    std::vector<double> structure;          // c_{ab}^k flattened as (a*d+b)*d+k
    std::vector<Mat> finite_elements;       // optional discrete part (with id)
    std::vector<std::vector<long>> weights; // torus kind: d rows of n integers

    int algebra_dim() const { return static_cast<int>(generators.size()); }
    double c(int a, int b, int k) const {
        const int d = algebra_dim();
        return structure[(static_cast<std::size_t>(a) * d + b) * d + k];
    }
    bool abelian() const;
    // Sum_a coeffs[a] * xi_a acting on V.
    Mat algebra_element(const Vec& coeffs) const;
    // exp(sum_a theta_a xi_a) as a matrix on V.
    Mat exp_algebra(const Vec& theta) const;
    // Random group element: exp-walk through the connected part composed
    // with a uniformly chosen finite element.
    Mat sample_element(RandomStream& rng) const;
    // Adjoint action on the algebra in the generator basis: Ad_g xi_i
    // expanded over generators. Throws if g does not normalize the span.
    Mat adjoint_matrix(const Mat& g) const;

    static GroupAction trivial(int n);
    // One weight row per generator, each of length n.
    static GroupAction torus(int n, const std::vector<std::vector<long>>& weight_rows);
    static GroupAction finite(int n, const std::vector<Mat>& elements);
    static GroupAction general(const SymplecticSpace& space,
                               const std::vector<Mat>& generators,
                               const std::vector<double>& structure,
                               const std::vector<Mat>& finite_elements = {});

    // Validation used by the constructors; throws NonSymplecticGenerator /
    // std::invalid_argument on malformed data.
    void validate(double tol = 1e-9) const;
};

// Quadratic components of the homogeneous moment map: <Phi(v), xi_i> = v^T Q_i v.
struct MomentMap {
    int dim = 0;                 // 2n
    std::vector<Mat> components; // d symmetric matrices
    int algebra_dim() const { return static_cast<int>(components.size()); }
};

struct MomentValue {
    Vec mu;
};

MomentMap homogeneous_moment_map(const GroupAction& action);
MomentValue moment_value(const MomentMap& map, const Vec& v);
// d x 2n matrix with row i = 2 Q_i v.
Mat moment_differential(const MomentMap& map, const Vec& v);

// Orthonormal basis (in generator coordinates, d x k) of
// g_v = { xi : (sum xi_a gen_a) v = 0 }. Throws IllConditioned when the
// singular-value gap at the rank decision is unclear.
Mat isotropy_algebra(const GroupAction& action, const Vec& v,
                     RankInfo* info = nullptr);

// Orthonormal basis of g_mu = { xi : ad*_xi mu = 0 } from the structure
// constants.
Mat isotropy_algebra_of_momentum(const GroupAction& action, const MomentValue& mu,
                                 RankInfo* info = nullptr);

// Max over sampled (g, v) of || Phi(g v) - Ad^dagger(g) Phi(v) ||.
double equivariance_residual(const GroupAction& action, const MomentMap& map,
                             int samples, RandomStream& rng);

// G_m-invariant inner product on the algebra: identity for torus/finite
// kinds; Haar-style averaging of Ad-conjugated Frobenius products for the
// general kind. Throws NotConverged if the average fails to stabilize.
Mat invariant_inner_product(const GroupAction& action,
                            std::uint64_t seed = 0x5eedULL);

} // namespace rpolab
