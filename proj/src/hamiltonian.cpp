#include "rpolab/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace rpolab {

HamiltonianOracle HamiltonianOracle::quadratic(const Mat& Q) {
    if (Q.rows() != Q.cols()) throw std::invalid_argument("HamiltonianOracle::quadratic: square matrix required");
    Mat Qs = 0.5 * (Q + Q.transpose());
    HamiltonianOracle h;
    h.dim = static_cast<int>(Qs.rows());
    h.value = [Qs](const Vec& x) { return x.dot(Qs * x); };
    h.gradient = [Qs](const Vec& x) { return Vec(2.0 * Qs * x); };
    h.hessian = [Qs](const Vec&) { return Mat(2.0 * Qs); };
    return h;
}

PolynomialHamiltonian::PolynomialHamiltonian(int dim, std::vector<PolynomialTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (static_cast<int>(t.exponents.size()) != dim_)
            throw std::invalid_argument("PolynomialHamiltonian: exponent vector length mismatch");
        for (int e : t.exponents)
            if (e < 0) throw std::invalid_argument("PolynomialHamiltonian: negative exponent");
    }
}

namespace {
inline double int_pow(double x, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}
} // namespace

double PolynomialHamiltonian::value(const Vec& x) const {
    double s = 0.0;
    for (const auto& t : terms_) {
        double m = t.coeff;
        for (int i = 0; i < dim_; ++i) m *= int_pow(x(i), t.exponents[i]);
        s += m;
    }
    return s;
}

Vec PolynomialHamiltonian::gradient(const Vec& x) const {
    Vec g = Vec::Zero(dim_);
    for (const auto& t : terms_) {
        for (int i = 0; i < dim_; ++i) {
            const int e = t.exponents[i];
            if (e == 0) continue;
            double m = t.coeff * e * int_pow(x(i), e - 1);
            for (int j = 0; j < dim_; ++j)
                if (j != i) m *= int_pow(x(j), t.exponents[j]);
            g(i) += m;
        }
    }
    return g;
}

Mat PolynomialHamiltonian::hessian(const Vec& x) const {
    Mat H = Mat::Zero(dim_, dim_);
    for (const auto& t : terms_) {
        for (int i = 0; i < dim_; ++i) {
            const int ei = t.exponents[i];
            if (ei == 0) continue;
            // diagonal
            if (ei >= 2) {
                double m = t.coeff * ei * (ei - 1) * int_pow(x(i), ei - 2);
                for (int j = 0; j < dim_; ++j)
                    if (j != i) m *= int_pow(x(j), t.exponents[j]);
                H(i, i) += m;
            }
            for (int j = i + 1; j < dim_; ++j) {
                const int ej = t.exponents[j];
                if (ej == 0) continue;
                double m = t.coeff * ei * ej * int_pow(x(i), ei - 1) * int_pow(x(j), ej - 1);
                for (int k = 0; k < dim_; ++k)
                    if (k != i && k != j) m *= int_pow(x(k), t.exponents[k]);
                H(i, j) += m;
                H(j, i) += m;
            }
        }
    }
    return H;
}

HamiltonianOracle PolynomialHamiltonian::oracle() const {
    HamiltonianOracle h;
    PolynomialHamiltonian copy = *this;
    h.dim = dim_;
    h.value = [copy](const Vec& x) { return copy.value(x); };
    h.gradient = [copy](const Vec& x) { return copy.gradient(x); };
    h.hessian = [copy](const Vec& x) { return copy.hessian(x); };
    return h;
}

OracleConsistency oracle_consistency(const HamiltonianOracle& oracle, int samples,
                                     RandomStream& rng, double fd_step) {
    OracleConsistency out;
    const int n = oracle.dim;
    for (int s = 0; s < samples; ++s) {
        Vec x = rng.gauss_vector(n);
        const Vec g = oracle.gradient(x);
        const Mat H = oracle.hessian(x);
        const double gscale = 1.0 + g.norm();
        const double hscale = 1.0 + H.norm();
        for (int i = 0; i < n; ++i) {
            Vec xp = x, xm = x;
            xp(i) += fd_step;
            xm(i) -= fd_step;
            const double fd_g = (oracle.value(xp) - oracle.value(xm)) / (2.0 * fd_step);
            out.gradient_residual = std::max(out.gradient_residual, std::abs(fd_g - g(i)) / gscale);
            const Vec fd_h = (oracle.gradient(xp) - oracle.gradient(xm)) / (2.0 * fd_step);
            out.hessian_residual =
                std::max(out.hessian_residual, (fd_h - H.col(i)).norm() / hscale);
        }
    }
    return out;
}

double invariance_residual(const HamiltonianOracle& oracle, const GroupAction& action,
                           int samples, RandomStream& rng) {
    if (action.algebra_dim() == 0 && action.finite_elements.empty()) return 0.0;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Mat g = action.sample_element(rng);
        const Vec v = rng.gauss_vector(action.space.dim());
        const double hv = oracle.value(v);
        worst = std::max(worst, std::abs(oracle.value(g * v) - hv) / (1.0 + std::abs(hv)));
    }
    return worst;
}

} // namespace rpolab
