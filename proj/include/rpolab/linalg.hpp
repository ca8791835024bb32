// linalg.hpp — Dense linear-algebra helpers: rank decisions with gap
// diagnostics, null spaces, orthonormal spans, least squares, and a
// deterministic random stream.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rpolab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Outcome of a numerical rank decision. `gap_ratio` is the ratio between
// the smallest accepted and the largest rejected singular value (infinity
// when nothing was rejected); a decision without a clear gap near the
// threshold is flagged so callers can raise IllConditioned/RankAmbiguous.
struct RankInfo {
    std::vector<double> singular_values;
    int rank = 0;
    double threshold = 0.0;   // absolute cutoff used
    double gap_ratio = 0.0;   // sigma_rank / sigma_rank+1, inf if clean
    bool clear = true;
};

// Decide the numerical rank of a singular-value list at a relative
// threshold (default 1e-6 of the largest value). The decision is "clear"
// when the values straddling the cutoff differ by at least `min_gap`.
RankInfo rank_decide(const Vec& svals, double rel_tol = 1e-6,
                     double min_gap = 10.0);

// Orthonormal basis of the null space of A (columns). Empty matrix maps to
// the full space.
Mat null_space(const Mat& A, RankInfo* info = nullptr, double rel_tol = 1e-6);

// Orthonormal basis of the column span of A.
Mat column_space(const Mat& A, RankInfo* info = nullptr, double rel_tol = 1e-6);

// Minimum-norm least-squares solution of A x = b via SVD with rank cutoff.
Vec lstsq_min_norm(const Mat& A, const Vec& b, double rel_tol = 1e-12);

// Orthogonal projector onto the span of the columns of B.
Mat span_projector(const Mat& B);

// Distance of v from the column span of B, normalized by ||v||
// (0 for v = 0).
double relative_span_distance(const Vec& v, const Mat& B);

// ---------------------------------------------------------------------------
// Deterministic random stream (splitmix-seeded xoshiro-free: plain mt19937_64
// with hand-rolled uniform/gauss so results do not depend on the standard
// library's distribution implementations).

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    // Derive an independent stream for a labelled subtask.
    RandomStream fork(std::uint64_t label) const;

    std::uint64_t next_u64();
    double uniform();                  // [0, 1)
    double uniform(double lo, double hi);
    double gauss();                    // standard normal (Box-Muller)
    Vec gauss_vector(int n);
    Vec unit_sphere(int n);            // uniform on S^{n-1}
    Mat gauss_matrix(int rows, int cols);
    Mat random_spd(int n, double min_eig = 0.2, double max_eig = 2.0);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace rpolab
