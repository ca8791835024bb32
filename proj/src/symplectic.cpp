#include "rpolab/symplectic.hpp"

#include "rpolab/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rpolab {

SymplecticSpace SymplecticSpace::standard(int n) {
    if (n <= 0) throw std::invalid_argument("SymplecticSpace: n must be positive");
    SymplecticSpace s;
    s.n = n;
    s.J = Mat::Zero(2 * n, 2 * n);
    s.J.topRightCorner(n, n) = Mat::Identity(n, n);
    s.J.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return s;
}

bool QuadraticForm::is_symmetric(double rel_tol) const {
    const double scale = Q.norm();
    return (Q - Q.transpose()).norm() <= rel_tol * (1.0 + scale);
}

bool QuadraticForm::is_positive_definite(double rel_tol) const {
    Eigen::SelfAdjointEigenSolver<Mat> es(Q);
    const double lmax = es.eigenvalues().maxCoeff();
    return lmax > 0 && es.eigenvalues().minCoeff() > rel_tol * lmax;
}

HamiltonianMatrix hamiltonian_matrix(const SymplecticSpace& space,
                                     const QuadraticForm& form) {
    if (form.Q.rows() != space.dim() || form.Q.cols() != space.dim())
        throw std::invalid_argument("hamiltonian_matrix: dimension mismatch");
    if (!form.is_symmetric())
        throw std::invalid_argument("hamiltonian_matrix: form is not symmetric");
    return HamiltonianMatrix{2.0 * space.J * form.Q};
}

WilliamsonData williamson(const SymplecticSpace& space, const QuadraticForm& form,
                          double rel_tol) {
    const int two_n = space.dim();
    const int n = space.n;
    if (form.Q.rows() != two_n || form.Q.cols() != two_n)
        throw std::invalid_argument("williamson: dimension mismatch");
    if (!form.is_symmetric())
        throw std::invalid_argument("williamson: form is not symmetric");

    Eigen::SelfAdjointEigenSolver<Mat> es(form.Q);
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmax > 0) || es.eigenvalues().minCoeff() <= rel_tol * lmax)
        throw NotPositiveDefinite("williamson: form is not positive definite");

    Eigen::LLT<Mat> llt(form.Q);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("williamson: Cholesky factorization failed");
    const Mat L = llt.matrixL();

    // Skew matrix K = L^T J L; its eigenvalues are +-i d_j with d_j the
    // symplectic eigenvalues of Q.
    Mat K = L.transpose() * space.J * L;
    K = 0.5 * (K - K.transpose().eval());

    Eigen::RealSchur<Mat> schur(K);
    Mat U = schur.matrixU();
    // Re-evaluate the quasi-triangular form against the skew K directly so
    // the 2x2 blocks can be read off with their exact antisymmetry.
    Mat T = U.transpose() * K * U;
    T = 0.5 * (T - T.transpose().eval());

    const double kscale = K.norm();
    std::vector<int> block_start;
    int i = 0;
    while (i < two_n) {
        if (i + 1 < two_n && std::abs(T(i, i + 1)) > 1e-9 * (1.0 + kscale)) {
            block_start.push_back(i);
            i += 2;
        } else {
            // a 1x1 block means a zero eigenvalue: impossible for definite Q
            throw NotPositiveDefinite("williamson: degenerate skew spectrum");
        }
    }
    if (static_cast<int>(block_start.size()) != n)
        throw NotPositiveDefinite("williamson: unexpected block structure");

    // Make each block [[0, d], [-d, 0]] with d > 0 (swap the pair if needed),
    // then sort modes by d ascending.
    std::vector<double> d(n);
    std::vector<std::pair<int, int>> cols(n);
    for (int b = 0; b < n; ++b) {
        const int r = block_start[b];
        double kappa = T(r, r + 1);
        if (kappa >= 0) {
            cols[b] = {r, r + 1};
            d[b] = kappa;
        } else {
            cols[b] = {r + 1, r};
            d[b] = -kappa;
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    Mat R(two_n, two_n);
    Vec dsorted(n);
    for (int k = 0; k < n; ++k) {
        const int b = order[k];
        dsorted(k) = d[b];
        R.col(k) = U.col(cols[b].first);
        R.col(n + k) = U.col(cols[b].second);
    }

    Mat Linv_t = L.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(two_n, two_n));
    Mat scale(two_n, two_n);
    scale.setZero();
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(dsorted(k));
        scale(k, k) = s;
        scale(n + k, n + k) = s;
    }

    WilliamsonData out;
    out.S = Linv_t * R * scale;
    out.freqs.resize(n);
    for (int k = 0; k < n; ++k) out.freqs[k] = 2.0 * dsorted(k);
    return out;
}

Mat symplectic_complement(const SymplecticSpace& space, const Mat& basis) {
    if (basis.cols() == 0) return Mat::Identity(space.dim(), space.dim());
    if (basis.rows() != space.dim())
        throw std::invalid_argument("symplectic_complement: dimension mismatch");
    // omega(v, b) = 0 for all b  <=>  (J b)^T v = 0
    Mat constraints = (space.J * basis).transpose();
    return null_space(constraints);
}

} // namespace rpolab
