#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rpolab/errors.hpp"
#include "rpolab/relative_equilibria.hpp"

#include "test_helpers.hpp"

#include <cmath>

using namespace rpolab;

namespace {
GroupAction weights_1_m1() { return GroupAction::torus(2, {{1, -1}}); }
}

TEST_CASE("re_residual: critical point of a symmetric well") {
    const auto action = GroupAction::trivial(2);
    const auto map = homogeneous_moment_map(action);
    const auto h = HamiltonianOracle::quadratic(0.5 * Mat::Identity(4, 4));
    CHECK(re_residual(h, map, Vec::Zero(4), Vec(0)) == 0.0);
}

TEST_CASE("re_residual: a moment component as Hamiltonian closes exactly") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = HamiltonianOracle::quadratic(map.components[0]);
    RandomStream rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const Vec m = rng.gauss_vector(4);
        Vec eta(1);
        eta << 1.0;
        CHECK(re_residual(h, map, m, eta) <= 1e-14 * (1.0 + m.norm()));
    }
}

TEST_CASE("re_residual: matches finite differences of h - <Phi, eta>") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::coupled_12_oracle();
    RandomStream rng(4);
    const Vec m = rng.gauss_vector(4);
    Vec eta(1);
    eta << rng.gauss();

    const double step = 1e-6;
    Vec fd(4);
    for (int i = 0; i < 4; ++i) {
        Vec mp = m, mm = m;
        mp(i) += step;
        mm(i) -= step;
        auto phi_eta = [&](const Vec& v) {
            return h.value(v) - moment_value(map, v).mu.dot(eta);
        };
        fd(i) = (phi_eta(mp) - phi_eta(mm)) / (2 * step);
    }
    CHECK(std::abs(re_residual(h, map, m, eta) - fd.norm()) <= 1e-6 * (1.0 + fd.norm()));
}

TEST_CASE("orthogonal_velocity: trivial group reduces to the critical-point test") {
    const auto action = GroupAction::trivial(1);
    const auto map = homogeneous_moment_map(action);
    const auto h = HamiltonianOracle::quadratic(0.5 * Mat::Identity(2, 2));
    const auto ov = orthogonal_velocity(h, action, map, Vec::Zero(2));
    CHECK(ov.eta.size() == 0);
    CHECK(ov.residual == 0.0);

    Vec away(2);
    away << 0.5, 0.0;
    CHECK_THROWS_AS(orthogonal_velocity(h, action, map, away), NotRelEq);
}

TEST_CASE("orthogonal_velocity: full isotropy at the origin forces eta = 0") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::diagonal_modes_oracle({1.0, 2.0});
    const auto ov = orthogonal_velocity(h, action, map, Vec::Zero(4));
    REQUIRE(ov.eta.size() == 1);
    CHECK(ov.eta(0) == 0.0);
    CHECK(ov.residual <= 1e-14);
}

TEST_CASE("orthogonal_velocity: mode circle relative equilibrium, scalar oracle") {
    // hand-solved one-parameter least squares: eta = <grad h, 2 Q m> / ||2 Q m||^2
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::coupled_12_oracle();
    Vec m(4);
    m << 1.0, 0.0, 0.0, 0.0;

    const Vec b = 2.0 * map.components[0] * m;
    const double eta_oracle = h.gradient(m).dot(b) / b.squaredNorm();
    CHECK(eta_oracle == doctest::Approx(2.0).epsilon(1e-14));

    const auto ov = orthogonal_velocity(h, action, map, m);
    REQUIRE(ov.eta.size() == 1);
    CHECK(ov.eta(0) == doctest::Approx(eta_oracle).epsilon(1e-12));
    CHECK(ov.residual <= 1e-12);

    // least-squares optimality against random velocities in the complement
    RandomStream rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        Vec eta(1);
        eta << ov.eta(0) + rng.gauss();
        CHECK(re_residual(h, map, m, ov.eta) <= re_residual(h, map, m, eta) + 1e-14);
    }
}

TEST_CASE("orthogonal_velocity: zero-level points of a definite Hamiltonian are rejected") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::coupled_12_oracle();
    Vec m(4);
    m << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0;
    CHECK(std::abs(moment_value(map, m).mu(0)) < 1e-15);
    CHECK_THROWS_AS(orthogonal_velocity(h, action, map, m), NotRelEq);
}

TEST_CASE("orthogonal_velocity: invariant under rescaling the inner product") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::coupled_12_oracle();
    Vec m(4);
    m << 1.0, 0.0, 0.0, 0.0;
    const auto a = orthogonal_velocity(h, action, map, m, Mat::Identity(1, 1));
    const auto b = orthogonal_velocity(h, action, map, m, 5.0 * Mat::Identity(1, 1));
    CHECK(std::abs(a.eta(0) - b.eta(0)) <= 1e-8);
}

TEST_CASE("slice_data: trivial group and the origin") {
    const auto trivial = GroupAction::trivial(2);
    const auto map0 = homogeneous_moment_map(trivial);
    const auto s0 = slice_data(trivial, map0, Vec::Zero(4), moment_value(map0, Vec::Zero(4)));
    CHECK(s0.kernel_basis.cols() == 4);
    CHECK(s0.orbit_tangent_basis.cols() == 0);
    CHECK(s0.slice_dim == 4);

    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto s1 = slice_data(action, map, Vec::Zero(4), moment_value(map, Vec::Zero(4)));
    CHECK(s1.kernel_basis.cols() == 4);
    CHECK(s1.orbit_tangent_basis.cols() == 0);
    CHECK(s1.slice_dim == 4);
}

TEST_CASE("slice_data: balanced point has a two-dimensional slice") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    Vec m(4);
    m << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0;
    const auto s = slice_data(action, map, m, moment_value(map, m));
    CHECK(s.kernel_basis.cols() == 3);
    CHECK(s.orbit_tangent_basis.cols() == 1);
    CHECK(s.slice_dim == 2);
    // orbit tangent contained in the kernel
    for (int j = 0; j < s.orbit_tangent_basis.cols(); ++j)
        CHECK(relative_span_distance(s.orbit_tangent_basis.col(j), s.kernel_basis) <= 1e-8);
}

TEST_CASE("slice_hessian_test: symmetric well at the origin is definite of full rank") {
    const auto action = GroupAction::trivial(2);
    const auto map = homogeneous_moment_map(action);
    const auto h = HamiltonianOracle::quadratic(0.5 * Mat::Identity(4, 4));
    const auto r = slice_hessian_test(h, action, map, Vec::Zero(4));
    CHECK(r.verdict == SliceVerdict::PositiveDefiniteSlice);
    CHECK(r.slice.slice_dim == 4);
    for (double e : r.hessian_eigenvalues) CHECK(e == doctest::Approx(1.0));
}

TEST_CASE("slice_hessian_test: moment-component Hamiltonian is a saddle control") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = HamiltonianOracle::quadratic(map.components[0]);
    const auto r = slice_hessian_test(h, action, map, Vec::Zero(4));
    CHECK(r.verdict == SliceVerdict::Indefinite);
}

TEST_CASE("slice_hessian_test: definite modes at the origin with balanced weights") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::diagonal_modes_oracle({1.0, 2.0});
    const auto r = slice_hessian_test(h, action, map, Vec::Zero(4));
    CHECK(r.verdict == SliceVerdict::PositiveDefiniteSlice);
    CHECK(r.slice.slice_dim == 4);
}

TEST_CASE("slice_hessian_test: mode-circle relative equilibrium") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::coupled_12_oracle();
    Vec m(4);
    m << 1.0, 0.0, 0.0, 0.0;
    const auto r = slice_hessian_test(h, action, map, m);
    CHECK(r.verdict == SliceVerdict::PositiveDefiniteSlice);
    CHECK(r.slice.slice_dim == 2);
    CHECK(r.orbit_tangent_hessian_norm <= 1e-8);
    REQUIRE(r.hessian_eigenvalues.size() == 3);
    CHECK(r.hessian_eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(r.hessian_eigenvalues[1] == doctest::Approx(8.0));
    CHECK(r.hessian_eigenvalues[2] == doctest::Approx(8.0));

    // positive count matches the slice dimension, the rest vanish
    int positives = 0;
    double spectral = 0.0;
    for (double e : r.hessian_eigenvalues) spectral = std::max(spectral, std::abs(e));
    for (double e : r.hessian_eigenvalues)
        if (e > 1e-8 * spectral) ++positives;
    CHECK(positives == r.slice.slice_dim);
}

TEST_CASE("slice_hessian_test: verdict is invariant along the group orbit") {
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    const auto h = testing::coupled_12_oracle();
    Vec m(4);
    m << 1.0, 0.0, 0.0, 0.0;
    const auto base = slice_hessian_test(h, action, map, m);

    RandomStream rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        Vec theta(1);
        theta << rng.uniform(0.0, 6.28);
        const Vec gm = action.exp_algebra(theta) * m;
        const auto moved = slice_hessian_test(h, action, map, gm);
        CHECK(moved.verdict == base.verdict);
        CHECK(moved.eta(0) == doctest::Approx(base.eta(0)).epsilon(1e-8));
        CHECK(moved.slice.slice_dim == base.slice.slice_dim);
    }
}
