#include "rpolab/group_action.hpp"

#include "rpolab/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace rpolab {

namespace {

bool is_symplectic(const Mat& g, const Mat& J, double tol) {
    return (g.transpose() * J * g - J).norm() <= tol * (1.0 + J.norm());
}

Mat stack_generators(const std::vector<Mat>& gens) {
    const int d = static_cast<int>(gens.size());
    if (d == 0) return Mat(0, 0);
    const long m = gens[0].size();
    Mat G(m, d);
    for (int i = 0; i < d; ++i)
        G.col(i) = Eigen::Map<const Vec>(gens[i].data(), m);
    return G;
}

} // namespace

bool GroupAction::abelian() const {
    for (double v : structure)
        if (v != 0.0) return false;
    return true;
}

Mat GroupAction::algebra_element(const Vec& coeffs) const {
    Mat out = Mat::Zero(space.dim(), space.dim());
    for (int a = 0; a < algebra_dim(); ++a) out += coeffs(a) * generators[a];
    return out;
}

Mat GroupAction::exp_algebra(const Vec& theta) const {
    if (algebra_dim() == 0) return Mat::Identity(space.dim(), space.dim());
    return algebra_element(theta).exp();
}

Mat GroupAction::sample_element(RandomStream& rng) const {
    Mat g = Mat::Identity(space.dim(), space.dim());
    const int d = algebra_dim();
    if (d > 0) {
        // short random walk in the connected part; for a torus one step is
        // already uniform in the chart
        const int steps = abelian() ? 1 : 8;
        for (int s = 0; s < steps; ++s) {
            Vec theta(d);
            for (int a = 0; a < d; ++a) theta(a) = rng.uniform(-3.2, 3.2);
            g = exp_algebra(theta) * g;
        }
    }
    if (!finite_elements.empty()) {
        const std::size_t pick = rng.next_u64() % finite_elements.size();
        g = finite_elements[pick] * g;
    }
    return g;
}

Mat GroupAction::adjoint_matrix(const Mat& g) const {
    const int d = algebra_dim();
    Mat A = Mat::Identity(d, d);
    if (d == 0) return A;
    const Mat G = stack_generators(generators);
    Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Mat ginv = g.inverse();
    double scale = 0.0;
    for (const Mat& gen : generators) scale = std::max(scale, gen.norm());
    for (int i = 0; i < d; ++i) {
        Mat conj = g * generators[i] * ginv;
        Vec rhs = Eigen::Map<const Vec>(conj.data(), conj.size());
        Vec coeffs = svd.solve(rhs);
        Vec resid = rhs - G * coeffs;
        if (resid.norm() > 1e-8 * (1.0 + scale))
            throw std::invalid_argument(
                "adjoint_matrix: group element does not normalize the algebra");
        A.col(i) = coeffs;
    }
    return A;
}

void GroupAction::validate(double tol) const {
    const int d = algebra_dim();
    const Mat& J = space.J;
    for (int i = 0; i < d; ++i) {
        const Mat& xi = generators[i];
        if (xi.rows() != space.dim() || xi.cols() != space.dim())
            throw std::invalid_argument("GroupAction: generator dimension mismatch");
        Mat Jxi = J * xi;
        if ((Jxi - Jxi.transpose()).norm() > tol * (1.0 + Jxi.norm()))
            throw NonSymplecticGenerator("GroupAction: generator " + std::to_string(i) +
                                         " is not in sp(V, omega)");
    }
    if (structure.size() != static_cast<std::size_t>(d) * d * d)
        throw std::invalid_argument("GroupAction: structure constant array size");
    double cscale = 0.0;
    for (double v : structure) cscale = std::max(cscale, std::abs(v));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int k = 0; k < d; ++k)
                if (std::abs(c(a, b, k) + c(b, a, k)) > tol * (1.0 + cscale))
                    throw std::invalid_argument("GroupAction: structure constants not antisymmetric");
    // Jacobi identity and bracket consistency with the representation
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Mat bracket = generators[a] * generators[b] - generators[b] * generators[a];
            for (int k = 0; k < d; ++k) bracket -= c(a, b, k) * generators[k];
            double gscale = generators[a].norm() * generators[b].norm();
            if (bracket.norm() > 1e-8 * (1.0 + gscale))
                throw std::invalid_argument("GroupAction: structure constants do not match brackets");
            for (int cc = 0; cc < d; ++cc)
                for (int k = 0; k < d; ++k) {
                    double s = 0.0;
                    for (int m = 0; m < d; ++m)
                        s += c(a, b, m) * c(m, cc, k) + c(b, cc, m) * c(m, a, k) +
                             c(cc, a, m) * c(m, b, k);
                    if (std::abs(s) > tol * (1.0 + cscale * cscale))
                        throw std::invalid_argument("GroupAction: Jacobi identity fails");
                }
        }
    for (const Mat& g : finite_elements) {
        if (g.rows() != space.dim() || g.cols() != space.dim())
            throw std::invalid_argument("GroupAction: finite element dimension mismatch");
        if (!is_symplectic(g, J, tol))
            throw NonSymplecticGenerator("GroupAction: finite element is not symplectic");
    }
}

GroupAction GroupAction::trivial(int n) {
    GroupAction a;
    a.space = SymplecticSpace::standard(n);
    a.kind = GroupKind::Torus;
    return a;
}

GroupAction GroupAction::torus(int n, const std::vector<std::vector<long>>& weight_rows) {
    GroupAction a;
    a.space = SymplecticSpace::standard(n);
    a.kind = GroupKind::Torus;
    a.weights = weight_rows;
    const int d = static_cast<int>(weight_rows.size());
    for (int r = 0; r < d; ++r) {
        if (static_cast<int>(weight_rows[r].size()) != n)
            throw std::invalid_argument("GroupAction::torus: weight row length != n");
        // weight w on z_j -> rotation of (x_j, y_j) at rate -w:
        // xi = [[0, W], [-W, 0]] with W = diag(w_j)
        Mat xi = Mat::Zero(2 * n, 2 * n);
        for (int j = 0; j < n; ++j) {
            xi(j, n + j) = static_cast<double>(weight_rows[r][j]);
            xi(n + j, j) = -static_cast<double>(weight_rows[r][j]);
        }
        a.generators.push_back(xi);
    }
    a.structure.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    a.validate();
    return a;
}

GroupAction GroupAction::finite(int n, const std::vector<Mat>& elements) {
    GroupAction a;
    a.space = SymplecticSpace::standard(n);
    a.kind = GroupKind::Finite;
    a.finite_elements = elements;
    bool has_id = false;
    for (const Mat& g : elements)
        if ((g - Mat::Identity(2 * n, 2 * n)).norm() < 1e-9) has_id = true;
    if (!has_id)
        a.finite_elements.insert(a.finite_elements.begin(), Mat::Identity(2 * n, 2 * n));
    a.validate();
    return a;
}

GroupAction GroupAction::general(const SymplecticSpace& space,
                                 const std::vector<Mat>& generators,
                                 const std::vector<double>& structure,
                                 const std::vector<Mat>& finite_elements) {
    GroupAction a;
    a.space = space;
    a.kind = GroupKind::General;
    a.generators = generators;
    a.structure = structure;
    a.finite_elements = finite_elements;
    a.validate();
    return a;
}

// ---------------------------------------------------------------------------

MomentMap homogeneous_moment_map(const GroupAction& action) {
    action.validate();
    MomentMap map;
    map.dim = action.space.dim();
    for (const Mat& xi : action.generators) {
        Mat Jxi = action.space.J * xi;
        // symmetrize to kill roundoff; Q_i = -(1/2) J xi_i
        map.components.push_back(-0.25 * (Jxi + Jxi.transpose()));
    }
    return map;
}

MomentValue moment_value(const MomentMap& map, const Vec& v) {
    if (v.size() != map.dim)
        throw std::invalid_argument("moment_value: dimension mismatch");
    Vec mu(map.algebra_dim());
    for (int i = 0; i < map.algebra_dim(); ++i) mu(i) = v.dot(map.components[i] * v);
    return MomentValue{mu};
}

Mat moment_differential(const MomentMap& map, const Vec& v) {
    if (v.size() != map.dim)
        throw std::invalid_argument("moment_differential: dimension mismatch");
    Mat d(map.algebra_dim(), map.dim);
    for (int i = 0; i < map.algebra_dim(); ++i) d.row(i) = (2.0 * map.components[i] * v).transpose();
    return d;
}

Mat isotropy_algebra(const GroupAction& action, const Vec& v, RankInfo* info) {
    const int d = action.algebra_dim();
    if (d == 0) {
        if (info) *info = RankInfo{};
        return Mat(0, 0);
    }
    Mat M(action.space.dim(), d);
    for (int a = 0; a < d; ++a) M.col(a) = action.generators[a] * v;
    RankInfo ri;
    Mat basis = null_space(M, &ri);
    if (info) *info = ri;
    if (!ri.clear)
        throw IllConditioned("isotropy_algebra: no clear singular-value gap");
    return basis;
}

Mat isotropy_algebra_of_momentum(const GroupAction& action, const MomentValue& mu,
                                 RankInfo* info) {
    const int d = action.algebra_dim();
    if (d == 0) {
        if (info) *info = RankInfo{};
        return Mat(0, 0);
    }
    if (mu.mu.size() != d)
        throw std::invalid_argument("isotropy_algebra_of_momentum: dimension mismatch");
    // column a of M is ad*_{e_a} mu: M(b, a) = sum_k c_{ab}^k mu_k
    Mat M = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int k = 0; k < d; ++k) M(b, a) += action.c(a, b, k) * mu.mu(k);
    RankInfo ri;
    Mat basis = null_space(M, &ri);
    if (info) *info = ri;
    if (!ri.clear)
        throw IllConditioned("isotropy_algebra_of_momentum: no clear singular-value gap");
    return basis;
}

double equivariance_residual(const GroupAction& action, const MomentMap& map,
                             int samples, RandomStream& rng) {
    if (action.algebra_dim() == 0 && action.finite_elements.empty()) return 0.0;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Mat g = action.sample_element(rng);
        const Vec v = rng.gauss_vector(action.space.dim());
        const Vec lhs = moment_value(map, g * v).mu;
        Vec rhs = moment_value(map, v).mu;
        if (action.algebra_dim() > 0) {
            // <Ad^dagger(g) mu, xi> = <mu, Ad_{g^-1} xi>
            const Mat Adinv = action.adjoint_matrix(g.inverse());
            rhs = Adinv.transpose() * rhs;
        }
        worst = std::max(worst, (lhs - rhs).norm());
    }
    return worst;
}

Mat invariant_inner_product(const GroupAction& action, std::uint64_t seed) {
    const int d = action.algebra_dim();
    if (d == 0) return Mat(0, 0);
    if (action.kind == GroupKind::Torus || action.kind == GroupKind::Finite)
        return Mat::Identity(d, d);

    // base Frobenius product on the representation
    Mat base = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            base(a, b) = (action.generators[a].transpose() * action.generators[b]).trace();

    auto average_batch = [&](RandomStream& rng, int count) {
        Mat acc = Mat::Zero(d, d);
        if (action.finite_elements.empty()) {
            for (int s = 0; s < count; ++s) {
                Mat A = action.adjoint_matrix(action.sample_element(rng));
                acc += A.transpose() * base * A;
            }
            return Mat((acc / count).eval());
        }
        // average over the discrete part exactly, the connected part by sampling
        for (int s = 0; s < count; ++s) {
            Mat walk = action.sample_element(rng);
            for (const Mat& f : action.finite_elements) {
                Mat A = action.adjoint_matrix(f * walk);
                acc += A.transpose() * base * A;
            }
        }
        return Mat((acc / (count * static_cast<double>(action.finite_elements.size()))).eval());
    };

    RandomStream rng(seed ? seed : 0x5eedULL);
    Mat avg = average_batch(rng, 64);
    const int max_rounds = 12;
    for (int round = 0; round < max_rounds; ++round) {
        Mat refreshed = 0.5 * (avg + average_batch(rng, 64));
        const double delta = (refreshed - avg).norm() / (1.0 + avg.norm());
        avg = refreshed;
        if (delta < 1e-6) {
            Mat sym = 0.5 * (avg + avg.transpose());
            Eigen::SelfAdjointEigenSolver<Mat> es(sym);
            if (es.eigenvalues().minCoeff() <= 0)
                throw NotConverged("invariant_inner_product: average not positive definite");
            return sym;
        }
    }
    throw NotConverged("invariant_inner_product: averaging failed to stabilize");
}

} // namespace rpolab
