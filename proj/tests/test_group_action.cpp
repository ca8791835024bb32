#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rpolab/errors.hpp"
#include "rpolab/group_action.hpp"

#include "test_helpers.hpp"

#include <cmath>

using namespace rpolab;

namespace {
GroupAction weights_1_m1() { return GroupAction::torus(2, {{1, -1}}); }
}

TEST_CASE("moment map: trivial group has no components") {
    const auto action = GroupAction::trivial(2);
    const auto map = homogeneous_moment_map(action);
    CHECK(map.algebra_dim() == 0);
    CHECK(moment_value(map, Vec::Zero(4)).mu.size() == 0);
}

TEST_CASE("moment map: weights (1,-1) give (|z1|^2 - |z2|^2)/2") {
    // hand oracle: apply the defining identity to the weight generator
    const auto action = weights_1_m1();
    const auto map = homogeneous_moment_map(action);
    REQUIRE(map.algebra_dim() == 1);
    Mat expected = Mat::Zero(4, 4);
    expected.diagonal() << 0.5, -0.5, 0.5, -0.5;
    CHECK((map.components[0] - expected).norm() < 1e-14);

    // defining identity <Phi(v), xi> = omega(xi v, v)/2 at random points
    RandomStream rng(5);
    for (int rep = 0; rep < 1000; ++rep) {
        const Vec v = rng.gauss_vector(4);
        const double lhs = moment_value(map, v).mu(0);
        const double rhs = 0.5 * action.space.omega(action.generators[0] * v, v);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("moment map: central circle gives half the squared norm") {
    for (int n : {1, 2, 3}) {
        const auto action = GroupAction::torus(n, {std::vector<long>(n, 1)});
        const auto map = homogeneous_moment_map(action);
        CHECK((map.components[0] - 0.5 * Mat::Identity(2 * n, 2 * n)).norm() < 1e-14);
    }
}

TEST_CASE("moment_value: zero point, balanced point, exact homogeneity") {
    const auto map = homogeneous_moment_map(weights_1_m1());
    CHECK(moment_value(map, Vec::Zero(4)).mu(0) == 0.0);

    Vec v(4);  // z = (1, 1)/sqrt(2) on the real slice
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0;
    CHECK(std::abs(moment_value(map, v).mu(0)) < 1e-15);

    RandomStream rng(6);
    const Vec w = rng.gauss_vector(4);
    CHECK(moment_value(map, 2.0 * w).mu(0) == 4.0 * moment_value(map, w).mu(0));
}

TEST_CASE("moment_differential: zero at the origin, matches finite differences") {
    const auto map = homogeneous_moment_map(weights_1_m1());
    CHECK(moment_differential(map, Vec::Zero(4)).norm() == 0.0);

    RandomStream rng(7);
    const Vec v = rng.gauss_vector(4);
    const Mat d = moment_differential(map, v);
    const double step = 1e-6;
    for (int i = 0; i < 4; ++i) {
        Vec vp = v, vm = v;
        vp(i) += step;
        vm(i) -= step;
        const double fd = (moment_value(map, vp).mu(0) - moment_value(map, vm).mu(0)) / (2 * step);
        CHECK(std::abs(fd - d(0, i)) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("moment_differential: rank one on the balanced set") {
    const auto map = homogeneous_moment_map(weights_1_m1());
    Vec v(4);
    v << 0.7, 0.7, 0.1, 0.1;  // |z1| = |z2|
    Eigen::JacobiSVD<Mat> svd(moment_differential(map, v));
    CHECK(rank_decide(svd.singularValues()).rank == 1);
}

TEST_CASE("isotropy_algebra: zero vector, generic vector, single mode") {
    const auto action = weights_1_m1();
    CHECK(isotropy_algebra(action, Vec::Zero(4)).cols() == 1);  // all of the algebra

    Vec generic(4);
    generic << 0.3, 0.5, -0.2, 0.1;
    CHECK(isotropy_algebra(action, generic).cols() == 0);

    Vec mode(4);  // z = (z1, 0), weight 1 acts nontrivially
    mode << 1.0, 0.0, 0.0, 0.0;
    CHECK(isotropy_algebra(action, mode).cols() == 0);
}

TEST_CASE("isotropy_algebra: orbit dimension complements the isotropy dimension") {
    const auto so3 = testing::make_so3_cotangent();
    RandomStream rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        const Vec v = rng.gauss_vector(6);
        const Mat iso = isotropy_algebra(so3, v);
        Mat orbit(6, 3);
        for (int a = 0; a < 3; ++a) orbit.col(a) = so3.generators[a] * v;
        const int orbit_dim = static_cast<int>(column_space(orbit).cols());
        CHECK(iso.cols() + orbit_dim == 3);
    }
}

TEST_CASE("isotropy_algebra_of_momentum: abelian and zero momenta fix everything") {
    const auto torus = weights_1_m1();
    CHECK(isotropy_algebra_of_momentum(torus, MomentValue{Vec::Ones(1)}).cols() == 1);

    const auto so3 = testing::make_so3_cotangent();
    CHECK(isotropy_algebra_of_momentum(so3, MomentValue{Vec::Zero(3)}).cols() == 3);
}

TEST_CASE("isotropy_algebra_of_momentum: so(3) at mu = e3 is the vertical axis") {
    // oracle: ad*_xi e3 = e3 x xi vanishes exactly on span{e3}
    const auto so3 = testing::make_so3_cotangent();
    Vec mu(3);
    mu << 0, 0, 1;
    const Mat basis = isotropy_algebra_of_momentum(so3, MomentValue{mu});
    REQUIRE(basis.cols() == 1);
    Vec e3(3);
    e3 << 0, 0, 1;
    CHECK(relative_span_distance(e3, basis) < 1e-12);
}

TEST_CASE("equivariance_residual: trivial and torus actions are exact") {
    RandomStream rng(9);
    const auto trivial = GroupAction::trivial(2);
    CHECK(equivariance_residual(trivial, homogeneous_moment_map(trivial), 16, rng) == 0.0);

    const auto torus = weights_1_m1();
    CHECK(equivariance_residual(torus, homogeneous_moment_map(torus), 64, rng) <= 1e-9);

    const auto so3 = testing::make_so3_cotangent();
    CHECK(equivariance_residual(so3, homogeneous_moment_map(so3), 32, rng) <= 1e-9);
}

TEST_CASE("equivariance_residual: corrupted component is detected") {
    const auto torus = weights_1_m1();
    auto map = homogeneous_moment_map(torus);
    map.components[0](0, 0) += 0.01;  // fault injection
    RandomStream rng(10);
    CHECK(equivariance_residual(torus, map, 64, rng) > 1e-3);
}

TEST_CASE("invariant_inner_product: torus gets the identity") {
    const auto torus = weights_1_m1();
    CHECK((invariant_inner_product(torus) - Mat::Identity(1, 1)).norm() == 0.0);
}

TEST_CASE("invariant_inner_product: order-two discrete part averages exactly") {
    // O(2)-like action: circle with weights (1,-1) plus the coordinate swap
    const auto torus = weights_1_m1();
    Mat swap = Mat::Zero(4, 4);
    swap(0, 1) = swap(1, 0) = 1.0;
    swap(2, 3) = swap(3, 2) = 1.0;
    const auto action = GroupAction::general(torus.space, torus.generators, {0.0},
                                             {Mat::Identity(4, 4), swap});
    const Mat G = invariant_inner_product(action);
    REQUIRE(G.rows() == 1);
    // oracle: two-term average of Ad-conjugated Frobenius products;
    // Ad_swap = -1 on the one-dimensional algebra, so both terms equal
    // tr(xi^T xi) = 4
    CHECK(G(0, 0) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("invariant_inner_product: so(3) standard basis gives a multiple of the identity") {
    const auto so3 = testing::make_so3_cotangent();
    const Mat G = invariant_inner_product(so3);
    const double scale = G(0, 0);
    CHECK(scale > 0);
    CHECK((G - scale * Mat::Identity(3, 3)).norm() <= 1e-6 * scale);
}

TEST_CASE("GroupAction validation rejects non-symplectic generators") {
    const auto space = SymplecticSpace::standard(1);
    Mat bad(2, 2);
    bad << 1, 0, 0, 1;  // J*bad is antisymmetric, not symmetric
    CHECK_THROWS_AS(GroupAction::general(space, {bad}, {0.0}), NonSymplecticGenerator);
}

TEST_CASE("torus weight rows must have length n") {
    CHECK_THROWS_AS(GroupAction::torus(3, {{1, -1}}), std::invalid_argument);
}
