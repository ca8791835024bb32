#include "rpolab/relative_equilibria.hpp"

#include "rpolab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace rpolab {

std::string to_string(SliceVerdict v) {
    switch (v) {
        case SliceVerdict::PositiveDefiniteSlice: return "PositiveDefiniteSlice";
        case SliceVerdict::Indefinite: return "Indefinite";
        case SliceVerdict::DegenerateRank: return "DegenerateRank";
        case SliceVerdict::NotRelEq: return "NotRelEq";
    }
    return "?";
}

double re_residual(const HamiltonianOracle& oracle, const MomentMap& map,
                   const Vec& m, const Vec& eta) {
    Vec r = oracle.gradient(m);
    if (map.algebra_dim() > 0) {
        if (eta.size() != map.algebra_dim())
            throw std::invalid_argument("re_residual: eta dimension mismatch");
        r -= moment_differential(map, m).transpose() * eta;
    }
    return r.norm();
}

OrthogonalVelocity orthogonal_velocity(const HamiltonianOracle& oracle,
                                       const GroupAction& action, const MomentMap& map,
                                       const Vec& m, const Mat& inner_product,
                                       const RelEqOptions& opts) {
    const int d = action.algebra_dim();
    OrthogonalVelocity out;
    const Vec grad = oracle.gradient(m);
    const double gate = opts.accept_tol * (1.0 + grad.norm());

    if (d == 0) {
        out.eta = Vec(0);
        out.residual = out.residual_full = grad.norm();
        if (out.residual_full > gate)
            throw NotRelEq("orthogonal_velocity: point is not a critical point");
        return out;
    }

    const Mat dPhiT = moment_differential(map, m).transpose(); // 2n x d
    out.residual_full = (grad - dPhiT * lstsq_min_norm(dPhiT, grad)).norm();
    if (out.residual_full > gate)
        throw NotRelEq("orthogonal_velocity: minimal residual above tolerance");

    const MomentValue mu = moment_value(map, m);
    out.g_mu_basis = isotropy_algebra_of_momentum(action, mu);
    out.g_m_basis = isotropy_algebra(action, m);

    Mat G = inner_product;
    if (G.size() == 0) G = invariant_inner_product(action);
    if (G.rows() != d || G.cols() != d)
        throw std::invalid_argument("orthogonal_velocity: inner product dimension mismatch");

    // m-frak = G-orthocomplement of g_m inside g_mu: coefficients c with
    // basis_mu * c orthogonal to every g_m basis vector.
    Mat m_basis;
    if (out.g_mu_basis.cols() == 0) {
        m_basis = Mat(d, 0);
    } else if (out.g_m_basis.cols() == 0) {
        m_basis = out.g_mu_basis;
    } else {
        Mat constraints = out.g_m_basis.transpose() * G * out.g_mu_basis;
        Mat coeff_kernel = null_space(constraints);
        m_basis = out.g_mu_basis * coeff_kernel;
    }

    if (m_basis.cols() == 0) {
        out.eta = Vec::Zero(d);
        out.residual = grad.norm();
        // with m-frak = {0} the equilibrium condition must hold outright
        if (out.residual > gate)
            throw NotRelEq("orthogonal_velocity: trivial complement but nonzero gradient");
        return out;
    }

    const Mat A = dPhiT * m_basis;
    const Vec c = lstsq_min_norm(A, grad);
    out.eta = m_basis * c;
    out.residual = (grad - A * c).norm();
    return out;
}

SliceData slice_data(const GroupAction& action, const MomentMap& map, const Vec& m,
                     const MomentValue& mu, const RelEqOptions& opts) {
    SliceData out;
    const int two_n = action.space.dim();
    if (map.algebra_dim() == 0) {
        out.kernel_basis = Mat::Identity(two_n, two_n);
        out.orbit_tangent_basis = Mat(two_n, 0);
        out.slice_dim = two_n;
        return out;
    }
    out.kernel_basis = null_space(moment_differential(map, m), &out.kernel_rank, opts.rank_rel);
    if (!out.kernel_rank.clear)
        throw IllConditioned("slice_data: unclear rank of dPhi(m)");

    Mat g_mu = isotropy_algebra_of_momentum(action, mu);
    Mat orbit_dirs(two_n, g_mu.cols());
    for (int j = 0; j < g_mu.cols(); ++j)
        orbit_dirs.col(j) = action.algebra_element(g_mu.col(j)) * m;
    out.orbit_tangent_basis = column_space(orbit_dirs, &out.orbit_rank, opts.rank_rel);
    if (!out.orbit_rank.clear)
        throw IllConditioned("slice_data: unclear rank of the orbit tangent");

    out.slice_dim = static_cast<int>(out.kernel_basis.cols() - out.orbit_tangent_basis.cols());
    return out;
}

RelEqReport slice_hessian_test(const HamiltonianOracle& oracle, const GroupAction& action,
                               const MomentMap& map, const Vec& m,
                               const RelEqOptions& opts) {
    RelEqReport report;
    report.point = m;
    report.mu = moment_value(map, m);

    OrthogonalVelocity ov = orthogonal_velocity(oracle, action, map, m, Mat(), opts);
    report.eta = ov.eta;
    report.residual = ov.residual;

    report.slice = slice_data(action, map, m, report.mu, opts);

    // Hessian of h - <Phi, eta>: hess(h) - sum eta_i * 2 Q_i
    Mat H = oracle.hessian(m);
    for (int i = 0; i < map.algebra_dim(); ++i) H -= 2.0 * report.eta(i) * map.components[i];

    const Mat& K = report.slice.kernel_basis;
    Mat Hk = K.transpose() * H * K;
    Hk = 0.5 * (Hk + Hk.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Mat> es(Hk);
    report.hessian_eigenvalues.assign(es.eigenvalues().data(),
                                      es.eigenvalues().data() + es.eigenvalues().size());

    double spectral = 0.0;
    for (double ev : report.hessian_eigenvalues) spectral = std::max(spectral, std::abs(ev));
    const double zero_cut = opts.zero_tol * (spectral > 0 ? spectral : 1.0);

    int positives = 0, negatives = 0;
    for (double ev : report.hessian_eigenvalues) {
        if (ev > zero_cut) ++positives;
        else if (ev < -zero_cut) ++negatives;
    }

    const Mat& O = report.slice.orbit_tangent_basis;
    if (O.cols() > 0)
        report.orbit_tangent_hessian_norm = (O.transpose() * H * O).norm();
    const bool orbit_flat = report.orbit_tangent_hessian_norm <= zero_cut * 10.0 ||
                            report.orbit_tangent_hessian_norm <= opts.zero_tol;

    if (negatives > 0) {
        report.verdict = SliceVerdict::Indefinite;
    } else if (positives == report.slice.slice_dim && orbit_flat) {
        report.verdict = SliceVerdict::PositiveDefiniteSlice;
    } else {
        report.verdict = SliceVerdict::DegenerateRank;
    }
    return report;
}

} // namespace rpolab
