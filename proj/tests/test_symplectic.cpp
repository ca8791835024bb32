#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rpolab/errors.hpp"
#include "rpolab/symplectic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace rpolab;

TEST_CASE("hamiltonian_matrix: harmonic oscillator gives the rotation generator") {
    const auto space = SymplecticSpace::standard(1);
    const QuadraticForm q(0.5 * Mat::Identity(2, 2));
    const Mat xi = hamiltonian_matrix(space, q).xi;
    Mat expected(2, 2);
    expected << 0, 1, -1, 0;
    CHECK((xi - expected).norm() < 1e-14);
}

TEST_CASE("hamiltonian_matrix: Q = diag(1/2, 2) has eigenvalues +-2i") {
    // oracle: dense eigensolve of the returned matrix
    const auto space = SymplecticSpace::standard(1);
    Mat Q(2, 2);
    Q << 0.5, 0, 0, 2.0;
    const Mat xi = hamiltonian_matrix(space, QuadraticForm(Q)).xi;
    Eigen::EigenSolver<Mat> es(xi);
    std::vector<double> imags = {es.eigenvalues()(0).imag(), es.eigenvalues()(1).imag()};
    std::sort(imags.begin(), imags.end());
    CHECK(imags[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(imags[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(es.eigenvalues()(0).real()) < 1e-12);
}

TEST_CASE("hamiltonian_matrix: zero form gives the zero field") {
    const auto space = SymplecticSpace::standard(2);
    const Mat xi = hamiltonian_matrix(space, QuadraticForm(Mat::Zero(4, 4))).xi;
    CHECK(xi.norm() == 0.0);
}

TEST_CASE("hamiltonian_matrix: J xi is symmetric for random symmetric forms") {
    RandomStream rng(101);
    for (int n : {1, 2, 3, 5}) {
        const auto space = SymplecticSpace::standard(n);
        for (int rep = 0; rep < 25; ++rep) {
            Mat A = rng.gauss_matrix(2 * n, 2 * n);
            const QuadraticForm q(0.5 * (A + A.transpose()));
            const Mat Jxi = space.J * hamiltonian_matrix(space, q).xi;
            CHECK((Jxi - Jxi.transpose()).norm() <= 1e-10 * Jxi.norm() + 1e-14);
        }
    }
}

TEST_CASE("hamiltonian_matrix: dimension mismatch throws") {
    const auto space = SymplecticSpace::standard(2);
    CHECK_THROWS_AS(hamiltonian_matrix(space, QuadraticForm(Mat::Identity(2, 2))),
                    std::invalid_argument);
}

TEST_CASE("williamson: identity-over-two is already canonical") {
    const auto space = SymplecticSpace::standard(1);
    const auto wd = williamson(space, QuadraticForm(0.5 * Mat::Identity(2, 2)));
    REQUIRE(wd.freqs.size() == 1);
    CHECK(wd.freqs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((wd.S - Mat::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("williamson: frequencies match the spectrum of the flow matrix") {
    // oracle: |Im spec(xi)| from a dense eigensolve
    const auto space = SymplecticSpace::standard(1);
    Mat Q(2, 2);
    Q << 0.5, 0, 0, 2.0;
    const auto wd = williamson(space, QuadraticForm(Q));
    const Mat xi = hamiltonian_matrix(space, QuadraticForm(Q)).xi;
    Eigen::EigenSolver<Mat> es(xi);
    const double mod = std::abs(es.eigenvalues()(0).imag());
    REQUIRE(wd.freqs.size() == 1);
    CHECK(wd.freqs[0] == doctest::Approx(mod).epsilon(1e-12));
    // canonical form: S^T Q S = diag(w/2, w/2)
    const Mat D = wd.S.transpose() * Q * wd.S;
    CHECK(D(0, 0) == doctest::Approx(wd.freqs[0] / 2).epsilon(1e-10));
    CHECK(D(1, 1) == doctest::Approx(wd.freqs[0] / 2).epsilon(1e-10));
}

TEST_CASE("williamson: random SPD forms, symplectic and diagonalizing to tolerance") {
    RandomStream rng(2024);
    int done = 0;
    while (done < 100) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);  // 2n <= 10
        const auto space = SymplecticSpace::standard(n);
        const Mat Q = rng.random_spd(2 * n, 0.15, 3.0);
        const auto wd = williamson(space, QuadraticForm(Q));

        CHECK((wd.S.transpose() * space.J * wd.S - space.J).norm() <= 1e-9);
        Mat D = wd.S.transpose() * Q * wd.S;
        Mat off = D;
        off.diagonal().setZero();
        CHECK(off.norm() <= 1e-9 * Q.norm());
        for (int j = 0; j < n; ++j) {
            CHECK(D(j, j) == doctest::Approx(wd.freqs[j] / 2).epsilon(1e-8));
            CHECK(D(n + j, n + j) == doctest::Approx(wd.freqs[j] / 2).epsilon(1e-8));
        }
        CHECK(std::is_sorted(wd.freqs.begin(), wd.freqs.end()));

        // frequency set equals |Im spec(xi)|
        const Mat xi = hamiltonian_matrix(space, QuadraticForm(Q)).xi;
        Eigen::EigenSolver<Mat> es(xi);
        std::vector<double> mods;
        for (int i = 0; i < 2 * n; ++i)
            if (es.eigenvalues()(i).imag() > 0) mods.push_back(es.eigenvalues()(i).imag());
        std::sort(mods.begin(), mods.end());
        REQUIRE(mods.size() == static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(wd.freqs[j] - mods[j]) <= 1e-9 * (1.0 + mods[j]));
        ++done;
    }
}

TEST_CASE("williamson: rejects indefinite forms") {
    const auto space = SymplecticSpace::standard(1);
    Mat Q(2, 2);
    Q << 1, 0, 0, -1;
    CHECK_THROWS_AS(williamson(space, QuadraticForm(Q)), NotPositiveDefinite);
}

TEST_CASE("symplectic_complement: full basis and empty basis") {
    const auto space = SymplecticSpace::standard(2);
    CHECK(symplectic_complement(space, Mat::Identity(4, 4)).cols() == 0);
    CHECK(symplectic_complement(space, Mat(4, 0)).cols() == 4);
}

TEST_CASE("symplectic_complement: single coordinate direction in n = 2") {
    // oracle: direct null-space computation with a full-pivot LU
    const auto space = SymplecticSpace::standard(2);
    Mat basis = Mat::Zero(4, 1);
    basis(0, 0) = 1.0;  // e_1 = x_1 direction
    const Mat comp = symplectic_complement(space, basis);
    CHECK(comp.cols() == 3);
    // contains e_1 itself (omega(e1, e1) = 0)
    CHECK(relative_span_distance(basis.col(0), comp) < 1e-12);

    Eigen::FullPivLU<Mat> lu((space.J * basis).transpose());
    const Mat oracle = lu.kernel();
    CHECK((span_projector(comp) - span_projector(oracle)).norm() < 1e-10);
}

TEST_CASE("symplectic_complement: applying it twice returns the original span") {
    RandomStream rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 4);
        const auto space = SymplecticSpace::standard(n);
        const int k = 1 + static_cast<int>(rng.next_u64() % (2 * n));
        const Mat B = rng.gauss_matrix(2 * n, k);
        const Mat twice = symplectic_complement(space, symplectic_complement(space, B));
        CHECK((span_projector(twice) - span_projector(B)).norm() <= 1e-9);
    }
}
