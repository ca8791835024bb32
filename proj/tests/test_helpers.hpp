// test_helpers.hpp — Shared builders for the test suites.

#pragma once

#include "rpolab/group_action.hpp"
#include "rpolab/hamiltonian.hpp"
#include "rpolab/symplectic.hpp"

#include <cmath>
#include <vector>

namespace rpolab::testing {

// so(3) acting diagonally on R^6 = T* R^3: xi_a = blockdiag(L_a, L_a) with
// the cross-product generators, structure constants c_{ab}^k = eps_{abk}.
inline GroupAction make_so3_cotangent() {
    const int n = 3;
    auto L = [](int a) {
        Mat M = Mat::Zero(3, 3);
        const int i = (a + 1) % 3, j = (a + 2) % 3;
        M(i, j) = -1.0;
        M(j, i) = 1.0;
        return M;
    };
    std::vector<Mat> gens;
    for (int a = 0; a < 3; ++a) {
        Mat xi = Mat::Zero(2 * n, 2 * n);
        xi.topLeftCorner(3, 3) = L(a);
        xi.bottomRightCorner(3, 3) = L(a);
        gens.push_back(xi);
    }
    std::vector<double> c(27, 0.0);
    auto set = [&](int a, int b, int k, double v) { c[(a * 3 + b) * 3 + k] = v; };
    set(0, 1, 2, 1.0);
    set(1, 0, 2, -1.0);
    set(1, 2, 0, 1.0);
    set(2, 1, 0, -1.0);
    set(2, 0, 1, 1.0);
    set(0, 2, 1, -1.0);
    return GroupAction::general(SymplecticSpace::standard(n), gens, c);
}

// h = sum_j coeff_j |z_j|^2 as a quadratic oracle (matrix diag over both
// coordinate blocks).
inline HamiltonianOracle diagonal_modes_oracle(const std::vector<double>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    Mat Q = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        Q(j, j) = coeffs[j];
        Q(n + j, n + j) = coeffs[j];
    }
    return HamiltonianOracle::quadratic(Q);
}

// h = sum coeff_j |z_j|^2 + quartic * (sum |z_j|^2)^2
inline HamiltonianOracle perturbed_modes_oracle(const std::vector<double>& coeffs,
                                                double quartic) {
    const int n = static_cast<int>(coeffs.size());
    Mat Q = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        Q(j, j) = coeffs[j];
        Q(n + j, n + j) = coeffs[j];
    }
    HamiltonianOracle h;
    h.dim = 2 * n;
    h.value = [Q, quartic](const Vec& x) {
        const double r2 = x.squaredNorm();
        return x.dot(Q * x) + quartic * r2 * r2;
    };
    h.gradient = [Q, quartic](const Vec& x) {
        const double r2 = x.squaredNorm();
        return Vec(2.0 * Q * x + 4.0 * quartic * r2 * x);
    };
    h.hessian = [Q, quartic](const Vec& x) {
        const int dim = static_cast<int>(x.size());
        const double r2 = x.squaredNorm();
        return Mat(2.0 * Q + 4.0 * quartic * r2 * Mat::Identity(dim, dim) +
                   8.0 * quartic * x * x.transpose());
    };
    return h;
}

// h = |z1|^2 + 2|z2|^2 + |z1|^2 |z2|^2 (invariant under weights (1,-1)),
// with u_j = x_j^2 + y_j^2.
inline HamiltonianOracle coupled_12_oracle() {
    HamiltonianOracle h;
    h.dim = 4;
    auto u = [](const Vec& x, int j) { return x(j) * x(j) + x(2 + j) * x(2 + j); };
    h.value = [u](const Vec& x) {
        return u(x, 0) + 2.0 * u(x, 1) + u(x, 0) * u(x, 1);
    };
    h.gradient = [u](const Vec& x) {
        const double u1 = u(x, 0), u2 = u(x, 1);
        Vec g(4);
        g(0) = 2.0 * x(0) * (1.0 + u2);
        g(2) = 2.0 * x(2) * (1.0 + u2);
        g(1) = 2.0 * x(1) * (2.0 + u1);
        g(3) = 2.0 * x(3) * (2.0 + u1);
        return g;
    };
    h.hessian = [u](const Vec& x) {
        const double u1 = u(x, 0), u2 = u(x, 1);
        Mat H = Mat::Zero(4, 4);
        H(0, 0) = 2.0 * (1.0 + u2);
        H(2, 2) = 2.0 * (1.0 + u2);
        H(1, 1) = 2.0 * (2.0 + u1);
        H(3, 3) = 2.0 * (2.0 + u1);
        // cross derivatives d^2/du1 du2 = 4 x_i y_j products
        const int a[2] = {0, 2}, b[2] = {1, 3};
        for (int i : a)
            for (int j : b) {
                H(i, j) = 4.0 * x(i) * x(j);
                H(j, i) = H(i, j);
            }
        return H;
    };
    return h;
}

} // namespace rpolab::testing
