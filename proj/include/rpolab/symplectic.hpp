// symplectic.hpp — Linear symplectic algebra on (R^{2n}, omega).
//
// Conventions used throughout the library:
//   * coordinates are ordered (x_1..x_n, y_1..y_n), z_j = x_j + i y_j;
//   * omega(u, v) = u^T J v with J = [[0, I], [-I, 0]];
//   * a quadratic form is q(x) = x^T Q x (Hessian pairing, no 1/2), so the
//     Hamiltonian vector field of q is X_q(x) = xi x with xi = 2 J Q.

#pragma once

#include "rpolab/linalg.hpp"

#include <vector>

namespace rpolab {

// Phase space R^{2n} with the standard pairing matrix.
struct SymplecticSpace {
    int n = 0;   // half-dimension
    Mat J;       // 2n x 2n, antisymmetric, J^2 = -I

    static SymplecticSpace standard(int n);
    int dim() const { return 2 * n; }
    double omega(const Vec& u, const Vec& v) const { return u.dot(J * v); }
};

// q(x) = x^T Q x with Q symmetric.
struct QuadraticForm {
    Mat Q;

    explicit QuadraticForm(Mat q) : Q(std::move(q)) {}
    // Quadratic form matching the Taylor quadratic of a Hamiltonian with
    // Hessian H at the equilibrium: x^T (H/2) x.
    static QuadraticForm from_hessian(const Mat& H) { return QuadraticForm(0.5 * H); }

    double value(const Vec& v) const { return v.dot(Q * v); }
    bool is_symmetric(double rel_tol = 1e-9) const;
    bool is_positive_definite(double rel_tol = 1e-12) const;
};

// Linear Hamiltonian vector field X_q(x) = xi x, xi in sp(V, omega).
struct HamiltonianMatrix {
    Mat xi;
};

// Symplectic diagonalization of a positive definite form: S^T J S = J and
// S^T Q S = diag(w_1/2 .. w_n/2, w_1/2 .. w_n/2) with the frequencies
// w_j = |Im eigenvalues of xi = 2JQ| sorted ascending. Equivalently q
// becomes sum_j (w_j/2) (x_j^2 + y_j^2) in the new coordinates.
struct WilliamsonData {
    Mat S;
    std::vector<double> freqs;
};

// X_q of q(x) = x^T Q x: returns xi = 2 J Q (so J^T xi = 2Q and J xi = -2Q
// is symmetric). Throws std::invalid_argument on dimension mismatch or a
// non-symmetric form.
HamiltonianMatrix hamiltonian_matrix(const SymplecticSpace& space,
                                     const QuadraticForm& form);

// Williamson normal form of a positive definite Q via Cholesky Q = L L^T
// followed by an orthogonal block-diagonalization of the skew matrix
// L^T J L. Throws NotPositiveDefinite when min eig(Q) <= rel_tol * max.
WilliamsonData williamson(const SymplecticSpace& space, const QuadraticForm& form,
                          double rel_tol = 1e-12);

// Orthonormal basis of the omega-perpendicular of span(basis columns):
// { v : omega(v, b) = 0 for all columns b }.
Mat symplectic_complement(const SymplecticSpace& space, const Mat& basis);

} // namespace rpolab
