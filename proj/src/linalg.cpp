#include "rpolab/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rpolab {

RankInfo rank_decide(const Vec& svals, double rel_tol, double min_gap) {
    RankInfo info;
    info.singular_values.assign(svals.data(), svals.data() + svals.size());
    if (svals.size() == 0) {
        info.gap_ratio = std::numeric_limits<double>::infinity();
        return info;
    }
    const double smax = svals(0);
    info.threshold = rel_tol * smax;
    int r = 0;
    while (r < svals.size() && svals(r) > info.threshold) ++r;
    info.rank = r;
    if (r == svals.size() || svals(r) == 0.0 || r == 0) {
        // nothing rejected, or everything at exact zero: unambiguous
        info.gap_ratio = std::numeric_limits<double>::infinity();
    } else {
        info.gap_ratio = svals(r - 1) / svals(r);
    }
    info.clear = !(std::isfinite(info.gap_ratio) && info.gap_ratio < min_gap);
    return info;
}

Mat null_space(const Mat& A, RankInfo* info, double rel_tol) {
    if (A.rows() == 0 || A.cols() == 0) {
        if (info) *info = RankInfo{};
        return Mat::Identity(A.cols(), A.cols());
    }
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    RankInfo ri = rank_decide(svd.singularValues(), rel_tol);
    if (info) *info = ri;
    const int n = static_cast<int>(A.cols());
    return svd.matrixV().rightCols(n - ri.rank);
}

Mat column_space(const Mat& A, RankInfo* info, double rel_tol) {
    if (A.rows() == 0 || A.cols() == 0) {
        if (info) *info = RankInfo{};
        return Mat(A.rows(), 0);
    }
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU);
    RankInfo ri = rank_decide(svd.singularValues(), rel_tol);
    if (info) *info = ri;
    return svd.matrixU().leftCols(ri.rank);
}

Vec lstsq_min_norm(const Mat& A, const Vec& b, double rel_tol) {
    if (A.cols() == 0) return Vec(0);
    if (A.rows() == 0) return Vec::Zero(A.cols());
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rel_tol);
    return svd.solve(b);
}

Mat span_projector(const Mat& B) {
    if (B.cols() == 0) return Mat::Zero(B.rows(), B.rows());
    Mat Q = column_space(B);
    return Q * Q.transpose();
}

double relative_span_distance(const Vec& v, const Mat& B) {
    const double nv = v.norm();
    if (nv == 0.0) return 0.0;
    if (B.cols() == 0) return 1.0;
    Mat P = span_projector(B);
    return (v - P * v).norm() / nv;
}

// ---------------------------------------------------------------------------

namespace {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace

RandomStream RandomStream::fork(std::uint64_t label) const {
    std::uint64_t x = state_ ^ (0xa0761d6478bd642fULL * (label + 1));
    return RandomStream(splitmix64(x));
}

std::uint64_t RandomStream::next_u64() { return splitmix64(state_); }

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RandomStream::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Vec RandomStream::gauss_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss();
    return v;
}

Vec RandomStream::unit_sphere(int n) {
    Vec v = gauss_vector(n);
    double nv = v.norm();
    while (nv < 1e-12) {
        v = gauss_vector(n);
        nv = v.norm();
    }
    return v / nv;
}

Mat RandomStream::gauss_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = gauss();
    return m;
}

Mat RandomStream::random_spd(int n, double min_eig, double max_eig) {
    if (min_eig <= 0.0 || max_eig < min_eig)
        throw std::invalid_argument("random_spd: need 0 < min_eig <= max_eig");
    Mat G = gauss_matrix(n, n);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Vec eigs(n);
    for (int i = 0; i < n; ++i) eigs(i) = uniform(min_eig, max_eig);
    return Q * eigs.asDiagonal() * Q.transpose();
}

} // namespace rpolab
