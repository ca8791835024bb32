#include "rpolab/dynamics.hpp"

#include "rpolab/errors.hpp"
#include "rpolab/relative_equilibria.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rpolab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::vector<double> linearization_frequencies(const HamiltonianOracle& oracle,
                                              const SymplecticSpace& space) {
    const Mat A = space.J * oracle.hessian(Vec::Zero(space.dim()));
    Eigen::EigenSolver<Mat> es(A);
    std::vector<double> freqs;
    const double scale = A.norm();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double im = es.eigenvalues()(i).imag();
        if (im > 1e-12 * (1.0 + scale)) freqs.push_back(im);
    }
    std::sort(freqs.begin(), freqs.end());
    return freqs;
}

double default_step(const std::vector<double>& freqs, double T) {
    double fmax = 0.0;
    for (double f : freqs) fmax = std::max(fmax, f);
    const double cap = std::abs(T) / 400.0;
    if (fmax <= 0.0) return cap > 0 ? cap : 1e-2;
    return std::min(kTwoPi / (40.0 * fmax), cap);
}

FlowResult flow(const HamiltonianOracle& oracle, const SymplecticSpace& space,
                const Vec& x0, double T, const FlowOptions& opts) {
    if (!(T > 0)) throw std::invalid_argument("flow: T must be positive");
    const int dim = space.dim();
    if (x0.size() != dim) throw std::invalid_argument("flow: dimension mismatch");

    double dt = opts.dt;
    if (dt <= 0.0) dt = default_step(linearization_frequencies(oracle, space), T);
    const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
    const double h = T / steps;

    FlowResult out;
    out.steps = steps;
    out.dt = h;

    Vec x = x0;
    Mat M;
    if (opts.with_monodromy) M = Mat::Identity(dim, dim);

    const double e0 = oracle.value(x0);
    Vec phi0;
    if (opts.moment_audit) phi0 = moment_value(*opts.moment_audit, x0).mu;

    int sample_every = 0;
    if (opts.trajectory_samples > 0) {
        sample_every = std::max(1, steps / opts.trajectory_samples);
        out.trajectory.push_back(x0);
    }

    const Mat& J = space.J;
    const double xscale = 1.0 + x0.norm();

    for (int k = 0; k < steps; ++k) {
        // implicit midpoint: y = x + h * J grad_h((x + y)/2)
        Vec y = x + h * (J * oracle.gradient(x));
        double best = std::numeric_limits<double>::max();
        bool ok = false;
        for (int it = 0; it < opts.inner_max_iter; ++it) {
            const Vec mid = 0.5 * (x + y);
            const Vec g = y - x - h * (J * oracle.gradient(mid));
            const double gn = g.norm();
            if (gn <= opts.inner_tol * xscale) { ok = true; break; }
            if (gn >= best && best <= 1e-9 * xscale) { ok = true; break; }  // roundoff stall
            if (gn >= best && it > 4) break;
            best = std::min(best, gn);
            const Mat Jac = Mat::Identity(dim, dim) - (0.5 * h) * (J * oracle.hessian(mid));
            y -= Jac.partialPivLu().solve(g);
        }
        if (!ok) {
            // accept a near-converged stall, reject anything worse
            const Vec mid = 0.5 * (x + y);
            const double gn = (y - x - h * (J * oracle.gradient(mid))).norm();
            if (gn > 1e-9 * xscale)
                throw InnerNewtonDiverged("flow: midpoint equations did not converge at step " +
                                          std::to_string(k));
        }

        if (opts.with_monodromy) {
            const Vec mid = 0.5 * (x + y);
            const Mat A = J * oracle.hessian(mid);
            const Mat lhs = Mat::Identity(dim, dim) - (0.5 * h) * A;
            const Mat rhs = (Mat::Identity(dim, dim) + (0.5 * h) * A) * M;
            M = lhs.partialPivLu().solve(rhs);
        }
        x = y;

        out.energy_drift = std::max(out.energy_drift, std::abs(oracle.value(x) - e0));
        if (opts.moment_audit) {
            const Vec phi = moment_value(*opts.moment_audit, x).mu;
            if (phi.size() > 0)
                out.moment_drift = std::max(out.moment_drift, (phi - phi0).cwiseAbs().maxCoeff());
        }
        if (sample_every > 0 && (k + 1) % sample_every == 0 && static_cast<int>(out.trajectory.size()) < opts.trajectory_samples)
            out.trajectory.push_back(x);
    }

    out.endpoint = x;
    if (opts.with_monodromy) out.monodromy = M;
    return out;
}

double equivariance_flow_check(const HamiltonianOracle& oracle, const GroupAction& action,
                               const Vec& x, double T, int samples, RandomStream& rng,
                               const FlowOptions& opts) {
    FlowOptions fo = opts;
    fo.with_monodromy = false;
    const Vec fx = flow(oracle, action.space, x, T, fo).endpoint;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Mat g = action.sample_element(rng);
        const Vec lhs = flow(oracle, action.space, g * x, T, fo).endpoint;
        worst = std::max(worst, (lhs - g * fx).norm());
    }
    return worst;
}

// ---------------------------------------------------------------------------

namespace {

// directional derivative of theta -> exp(sum theta_a xi_a) in direction dir
Mat dexp_direction(const GroupAction& action, const Vec& theta, const Vec& dir) {
    const int dim = action.space.dim();
    const Mat D = action.algebra_element(dir);
    if (action.abelian()) return D * action.exp_algebra(theta);
    const Mat A = action.algebra_element(theta);
    Mat big = Mat::Zero(2 * dim, 2 * dim);
    big.topLeftCorner(dim, dim) = A;
    big.bottomRightCorner(dim, dim) = A;
    big.topRightCorner(dim, dim) = D;
    return big.exp().topRightCorner(dim, dim);
}

// fast torus rotation: weight w_j rotates z_j by -(theta . w_j)
Vec torus_apply(const GroupAction& action, const Vec& theta, const Vec& v) {
    const int n = action.space.n;
    Vec out(2 * n);
    for (int j = 0; j < n; ++j) {
        double angle = 0.0;
        for (int a = 0; a < action.algebra_dim(); ++a)
            angle -= theta(a) * static_cast<double>(action.weights[a][j]);
        const double c = std::cos(angle), s = std::sin(angle);
        // z -> e^{i angle} z on (x_j, y_j)
        out(j) = c * v(j) - s * v(n + j);
        out(n + j) = s * v(j) + c * v(n + j);
    }
    return out;
}

// min over the torus of || g v - target ||, grid + parabolic refinement
std::pair<Vec, double> torus_phase_fit(const GroupAction& action, const Vec& v,
                                       const Vec& target) {
    const int d = action.algebra_dim();
    if (d == 0) return {Vec(0), (v - target).norm()};
    auto dist = [&](const Vec& th) { return (torus_apply(action, th, v) - target).norm(); };

    Vec best_theta = Vec::Zero(d);
    double best = dist(best_theta);
    if (d == 1) {
        const int G = 256;
        for (int i = 0; i < G; ++i) {
            Vec th(1);
            th(0) = kTwoPi * i / G;
            const double r = dist(th);
            if (r < best) { best = r; best_theta = th; }
        }
    } else if (d == 2) {
        const int G = 64;
        for (int i = 0; i < G; ++i)
            for (int j = 0; j < G; ++j) {
                Vec th(2);
                th(0) = kTwoPi * i / G;
                th(1) = kTwoPi * j / G;
                const double r = dist(th);
                if (r < best) { best = r; best_theta = th; }
            }
    } else {
        // coordinate descent from zero for higher-rank tori
        for (int sweep = 0; sweep < 4; ++sweep)
            for (int a = 0; a < d; ++a) {
                Vec th = best_theta;
                for (int i = 0; i < 128; ++i) {
                    th(a) = kTwoPi * i / 128;
                    const double r = dist(th);
                    if (r < best) { best = r; best_theta = th; }
                }
            }
    }
    // per-axis parabolic refinement
    for (int round = 0; round < 3; ++round)
        for (int a = 0; a < d; ++a) {
            const double step = kTwoPi / (d == 1 ? 256.0 : 64.0) / std::pow(8.0, round);
            Vec tp = best_theta, tm = best_theta;
            tp(a) += step;
            tm(a) -= step;
            const double fp = dist(tp), fm = dist(tm), f0 = best;
            const double denom = fp - 2 * f0 + fm;
            if (std::abs(denom) > 1e-300) {
                Vec tn = best_theta;
                tn(a) += 0.5 * step * (fm - fp) / denom;
                const double fn = dist(tn);
                if (fn < best) { best = fn; best_theta = tn; }
            }
        }
    return {best_theta, best};
}

struct NearReturn {
    double T = 0.0;
    Vec theta;
    int finite_index = -1;
    double residual = 0.0;
};

// scan the linear flow exp(t J hess(0)) x for near-returns modulo the group
std::vector<NearReturn> linear_near_returns(const HamiltonianOracle& oracle,
                                            const GroupAction& action, const Vec& x,
                                            double t_max, int grid) {
    const Mat A = action.space.J * oracle.hessian(Vec::Zero(action.space.dim()));
    const double dt = t_max / grid;
    const Mat P = (dt * A).exp();

    const bool torus_like = action.kind == GroupKind::Torus;
    std::vector<Mat> finite = action.finite_elements;
    if (finite.empty()) finite.push_back(Mat::Identity(action.space.dim(), action.space.dim()));

    std::vector<double> resid(grid + 1, std::numeric_limits<double>::max());
    std::vector<NearReturn> at(grid + 1);

    Vec w = x;
    for (int k = 1; k <= grid; ++k) {
        w = P * w;
        for (std::size_t fi = 0; fi < finite.size(); ++fi) {
            // want g x ~ w  with g = exp(theta) * finite[fi]
            const Vec base = finite[fi] * x;
            Vec theta;
            double r;
            if (torus_like && action.algebra_dim() > 0) {
                auto fit = torus_phase_fit(action, base, w);
                theta = fit.first;
                r = fit.second;
            } else {
                theta = Vec::Zero(action.algebra_dim());
                r = (base - w).norm();
            }
            if (r < resid[k]) {
                resid[k] = r;
                at[k] = NearReturn{k * dt, theta,
                                   action.finite_elements.empty() ? -1 : static_cast<int>(fi), r};
            }
        }
    }

    // local minima below threshold
    std::vector<NearReturn> out;
    const double threshold = 0.35 * x.norm();
    for (int k = 2; k < grid; ++k) {
        if (resid[k] <= resid[k - 1] && resid[k] <= resid[k + 1] && resid[k] < threshold) {
            bool close = false;
            for (const auto& nr : out)
                if (std::abs(nr.T - at[k].T) < 3 * dt) close = true;
            if (!close) out.push_back(at[k]);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const NearReturn& a, const NearReturn& b) { return a.residual < b.residual; });
    if (out.size() > 4) out.resize(4);
    return out;
}

} // namespace

RpoRecord rpo_shoot(const HamiltonianOracle& oracle, const GroupAction& action,
                    const MomentMap& map, const RpoSeed& seed, const ShootOptions& opts) {
    const int dim = action.space.dim();
    const int d = action.algebra_dim();
    const SymplecticSpace& space = action.space;

    // gauge: theta confined to the complement of the isotropy algebra of the seed
    Mat gauge(d, 0);
    if (d > 0) {
        const Mat iso = isotropy_algebra(action, seed.x0);
        gauge = iso.cols() == 0 ? Mat(Mat::Identity(d, d))
                                : Mat(null_space(Mat(iso.transpose())));
    }
    const int k = static_cast<int>(gauge.cols());

    Mat finite_part = Mat::Identity(dim, dim);
    if (seed.finite_index >= 0) {
        if (seed.finite_index >= static_cast<int>(action.finite_elements.size()))
            throw std::invalid_argument("rpo_shoot: finite element index out of range");
        finite_part = action.finite_elements[seed.finite_index];
    }

    const Vec grad_seed = oracle.gradient(seed.x0);
    const Vec phase_dir = space.J * grad_seed;  // X_h at the seed
    const double E = opts.pin_energy ? opts.energy_target : oracle.value(seed.x0);

    const auto freqs = linearization_frequencies(oracle, space);

    Vec x = seed.x0;
    double T = seed.T0;
    Vec c = Vec::Zero(k);
    if (d > 0 && seed.theta0.size() == d) c = gauge.transpose() * seed.theta0;

    if (!(T > 0)) throw std::invalid_argument("rpo_shoot: seed period must be positive");
    const double T_lo = 0.02 * seed.T0, T_hi = 50.0 * seed.T0;

    auto closure_residual = [&](const Vec& xx, double TT, const Vec& cc, Mat* M_out,
                                Vec* endpoint_out) {
        FlowOptions fo = opts.flow_opts;
        fo.with_monodromy = M_out != nullptr;
        if (fo.dt <= 0.0) fo.dt = default_step(freqs, TT);
        const FlowResult fr = flow(oracle, space, xx, TT, fo);
        const Vec theta = d > 0 ? Vec(gauge * cc) : Vec(Vec::Zero(0));
        const Mat g = d > 0 ? Mat(action.exp_algebra(theta) * finite_part) : finite_part;
        Vec res(dim + 2);
        res.head(dim) = fr.endpoint - g * xx;
        res(dim) = opts.pin_energy ? (oracle.value(xx) - E) : 0.0;
        res(dim + 1) = phase_dir.dot(xx - seed.x0);
        if (M_out) *M_out = *fr.monodromy;
        if (endpoint_out) *endpoint_out = fr.endpoint;
        return res;
    };

    double res_norm = std::numeric_limits<double>::max();
    Vec res;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        Mat M;
        Vec endpoint;
        res = closure_residual(x, T, c, &M, &endpoint);
        res_norm = res.norm();
        const double scale = 1.0 + x.norm();
        if (res_norm <= opts.tol * scale) break;

        const Vec theta = d > 0 ? Vec(gauge * c) : Vec(Vec::Zero(0));
        const Mat g = d > 0 ? Mat(action.exp_algebra(theta) * finite_part) : finite_part;

        Mat Jac = Mat::Zero(dim + 2, dim + 1 + k);
        Jac.topLeftCorner(dim, dim) = M - g;
        Jac.block(0, dim, dim, 1) = space.J * oracle.gradient(endpoint);
        for (int j = 0; j < k; ++j)
            Jac.block(0, dim + 1 + j, dim, 1) =
                -(dexp_direction(action, theta, gauge.col(j)) * (finite_part * x));
        Jac.block(dim, 0, 1, dim) = opts.pin_energy
                                        ? oracle.gradient(x).transpose()
                                        : Eigen::RowVectorXd::Zero(dim).eval();
        Jac.block(dim + 1, 0, 1, dim) = phase_dir.transpose();

        const Vec step = lstsq_min_norm(Jac, -res);
        if (!step.allFinite())
            throw NewtonDiverged("rpo_shoot: non-finite Newton step");

        bool accepted = false;
        for (double damp = 1.0; damp >= 1.0 / 64.0; damp *= 0.5) {
            const Vec x_try = x + damp * step.head(dim);
            const double T_try = T + damp * step(dim);
            const Vec c_try = c + damp * step.tail(k);
            if (!(T_try > T_lo) || !(T_try < T_hi)) continue;
            const Vec r_try = closure_residual(x_try, T_try, c_try, nullptr, nullptr);
            if (r_try.norm() < res_norm) {
                x = x_try;
                T = T_try;
                c = c_try;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw NewtonDiverged("rpo_shoot: no descent after damping (residual " +
                                 std::to_string(res_norm) + ")");
    }

    const double scale = 1.0 + x.norm();
    if (res_norm > opts.tol * scale)
        throw NewtonDiverged("rpo_shoot: residual " + std::to_string(res_norm) +
                             " above tolerance after max iterations");

    const Vec xdot = space.J * oracle.gradient(x);
    if (xdot.norm() <= opts.equilibrium_tol * scale)
        throw ConvergedToEquilibrium("rpo_shoot: X_h vanishes at the converged point");

    RpoRecord rec;
    rec.x0 = x;
    rec.T = T;
    rec.group_params = d > 0 ? Vec(gauge * c) : Vec(Vec::Zero(0));
    rec.finite_index = seed.finite_index;
    rec.energy = oracle.value(x);
    rec.shooting_residual = res_norm;
    rec.moment = map.algebra_dim() > 0 ? moment_value(map, x).mu : Vec(Vec::Zero(0));

    FlowOptions fo = opts.flow_opts;
    fo.with_monodromy = true;
    fo.trajectory_samples = 32;
    if (fo.dt <= 0.0) fo.dt = default_step(freqs, T);
    const FlowResult fr = flow(oracle, space, x, T, fo);
    rec.monodromy = *fr.monodromy;
    rec.monodromy_trace = fr.monodromy->trace();
    rec.orbit_points = fr.trajectory;
    return rec;
}

WeakNondegeneracy weak_nondegeneracy(const RpoRecord& record, const HamiltonianOracle& oracle,
                                     const GroupAction& action, int expected_dim) {
    const int dim = action.space.dim();
    const Vec grad = oracle.gradient(record.x0);
    const Vec xdot = action.space.J * grad;
    if (xdot.norm() < 1e-14)
        throw std::invalid_argument("weak_nondegeneracy: X_h vanishes on the record");

    Mat g = Mat::Identity(dim, dim);
    if (action.algebra_dim() > 0) g = action.exp_algebra(record.group_params);
    if (record.finite_index >= 0) g = g * action.finite_elements[record.finite_index];

    // relative return map on the tangent of the energy level
    const Mat P = g.inverse() * record.monodromy;
    const Mat level_basis = null_space(Mat(grad.transpose()));  // 2n x (2n-1)
    Mat A = (Mat::Identity(dim, dim) - P) * level_basis;

    Mat bordered(dim, level_basis.cols() + 1);
    bordered.leftCols(level_basis.cols()) = A;
    bordered.col(level_basis.cols()) = xdot / xdot.norm();

    Eigen::JacobiSVD<Mat> svd(bordered);
    WeakNondegeneracy out;
    // the cutoff absorbs the O(dt^2) smearing the integrator leaves on the
    // exactly-periodic directions of the return map
    out.rank_info = rank_decide(svd.singularValues(), 1e-3);
    if (!out.rank_info.clear)
        throw RankAmbiguous("weak_nondegeneracy: rank decision has no clear gap");
    out.dim = static_cast<int>(bordered.cols()) - out.rank_info.rank;

    if (expected_dim >= 0) {
        out.expected = expected_dim;
    } else {
        // trivially periodic directions: the flow direction plus the sweep of
        // the symmetry group through the orbit
        Mat sweep(dim, 1 + action.algebra_dim());
        sweep.col(0) = xdot;
        for (int a = 0; a < action.algebra_dim(); ++a)
            sweep.col(1 + a) = action.generators[a] * record.x0;
        out.expected = static_cast<int>(column_space(sweep).cols());
    }
    out.verdict = out.dim == out.expected;
    return out;
}

ClearanceScan releq_clearance_scan(const GroupAction& action, const MomentMap& map,
                                   const QuadraticForm& q, int samples, std::uint64_t seed) {
    const auto points = sample_zero_level(action, map, samples, seed);
    ClearanceScan out;
    out.min_distance = std::numeric_limits<double>::max();
    for (const Vec& v : points) {
        const Vec dq = 2.0 * q.Q * v;
        double dist;
        if (map.algebra_dim() == 0) {
            dist = dq.norm() > 0 ? 1.0 : 0.0;
        } else {
            dist = relative_span_distance(dq, moment_differential(map, v).transpose());
        }
        if (dist < out.min_distance) {
            out.min_distance = dist;
            out.attaining_sample = v;
        }
    }
    out.hypothesis_violation = out.min_distance < 1e-6;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// scale a direction to the requested energy level: h(s u) = E
Vec scale_to_energy(const HamiltonianOracle& oracle, const Vec& u, double E) {
    const Vec un = u / u.norm();
    const Mat H = oracle.hessian(Vec::Zero(u.size()));
    const double quad = 0.5 * un.dot(H * un);
    double s = quad > 0 ? std::sqrt(E / quad) : std::sqrt(E);
    for (int it = 0; it < 60; ++it) {
        const Vec x = s * un;
        const double f = oracle.value(x) - E;
        if (std::abs(f) <= 1e-13 * (1.0 + std::abs(E))) break;
        const double df = oracle.gradient(x).dot(un);
        if (std::abs(df) < 1e-300) break;
        s -= f / df;
        if (!(s > 0)) s = 0.5 * std::abs(s) + 1e-12;
    }
    return s * un;
}

struct CensusSeeds {
    std::vector<RpoSeed> seeds;
};

CensusSeeds census_seeds_for_level(const HamiltonianOracle& oracle, const GroupAction& action,
                                   const MomentMap& map, const LinkDescriptor& link,
                                   double E, int random_count, RandomStream rng) {
    CensusSeeds out;
    const int dim = action.space.dim();
    const auto freqs = linearization_frequencies(oracle, action.space);
    const double slowest = freqs.empty() ? kTwoPi : kTwoPi / freqs.front();

    // (a) Williamson normal modes that lie on the zero level
    try {
        const Mat H = oracle.hessian(Vec::Zero(dim));
        const WilliamsonData wd =
            williamson(action.space, QuadraticForm::from_hessian(H));
        for (int j = 0; j < action.space.n; ++j) {
            Vec u = wd.S.col(j);
            u.normalize();
            const double phi_norm =
                map.algebra_dim() > 0 ? moment_value(map, u).mu.norm() : 0.0;
            if (phi_norm > 1e-8) continue;
            RpoSeed s;
            s.x0 = scale_to_energy(oracle, u, E);
            s.T0 = kTwoPi / wd.freqs[j];
            s.theta0 = Vec::Zero(action.algebra_dim());
            out.seeds.push_back(std::move(s));
        }
    } catch (const NotPositiveDefinite&) {
        // indefinite quadratic part: rely on the scan seeds
    }

    // (b) closed-stratum witnesses and (c) random zero-level points
    std::vector<Vec> points;
    for (std::size_t i = 0; i < link.strata.size(); ++i)
        if (link.strata[i].closed_flag) points.push_back(link.strata[i].witness);
    if (random_count > 0 && map.algebra_dim() > 0) {
        auto extra = sample_zero_level(action, map, random_count, rng.next_u64());
        points.insert(points.end(), extra.begin(), extra.end());
    } else {
        for (int s = 0; s < random_count; ++s) points.push_back(rng.unit_sphere(dim));
    }

    for (const Vec& p : points) {
        const Vec x = scale_to_energy(oracle, p, E);
        for (const auto& nr : linear_near_returns(oracle, action, x, 3.5 * slowest, 700)) {
            RpoSeed s;
            s.x0 = x;
            s.T0 = nr.T;
            s.theta0 = nr.theta;
            s.finite_index = nr.finite_index;
            out.seeds.push_back(std::move(s));
        }
    }
    return out;
}

// refined distance between a point and another record's orbit, modulo group
// samples and time shifts: dense trajectory scan followed by a parabolic
// refinement of the best time offset
double orbit_point_distance(const HamiltonianOracle& oracle, const GroupAction& action,
                            const Vec& a, const RpoRecord& b) {
    const int grid = 2048;
    FlowOptions fo;
    fo.dt = b.T / grid;
    fo.trajectory_samples = grid;
    const FlowResult fr = flow(oracle, action.space, b.x0, b.T, fo);
    std::vector<Mat> finite = action.finite_elements;
    if (finite.empty()) finite.push_back(Mat::Identity(action.space.dim(), action.space.dim()));

    auto group_dist = [&](const Vec& bp) {
        double best = std::numeric_limits<double>::max();
        for (const Mat& f : finite) {
            const Vec base = f * bp;
            double r;
            if (action.kind == GroupKind::Torus && action.algebra_dim() > 0) {
                r = torus_phase_fit(action, base, a).second;
            } else {
                r = (base - a).norm();
            }
            best = std::min(best, r);
        }
        return best;
    };

    const int m = static_cast<int>(fr.trajectory.size());
    std::vector<double> dist(m);
    int best_k = 0;
    for (int k = 0; k < m; ++k) {
        dist[k] = group_dist(fr.trajectory[k]);
        if (dist[k] < dist[best_k]) best_k = k;
    }
    double best = dist[best_k];

    // parabolic refinement of the time offset around the best sample
    if (best_k > 0 && best_k + 1 < m) {
        const double h = fr.dt;
        const double f0 = dist[best_k - 1] * dist[best_k - 1];
        const double f1 = dist[best_k] * dist[best_k];
        const double f2 = dist[best_k + 1] * dist[best_k + 1];
        const double denom = f0 - 2 * f1 + f2;
        if (denom > 1e-300) {
            const double t_star = best_k * h + 0.5 * h * (f0 - f2) / denom;
            if (t_star > 0) {
                FlowOptions fp;
                fp.dt = fo.dt;
                const Vec bp = flow(oracle, action.space, b.x0, t_star, fp).endpoint;
                best = std::min(best, group_dist(bp));
            }
        }
    }
    return best;
}

bool same_orbit(const HamiltonianOracle& oracle, const GroupAction& action,
                const RpoRecord& a, const RpoRecord& b, const CensusOptions& opts) {
    if (std::abs(a.energy - b.energy) > opts.distinct_energy_tol) return false;
    if (std::abs(a.T - b.T) > opts.distinct_period_rel * std::max(a.T, b.T)) return false;
    const double scale = 1.0 + a.x0.norm();
    return orbit_point_distance(oracle, action, a.x0, b) <=
           opts.distinct_pointset_tol * scale;
}

CensusLevel census_one_level(const HamiltonianOracle& oracle, const GroupAction& action,
                             const MomentMap& map, const LinkDescriptor& link,
                             const CategoryBound& bound, double E, const CensusOptions& opts,
                             RandomStream rng) {
    CensusLevel level;
    level.energy = E;
    level.category_bound = bound.N;

    const auto seeds = census_seeds_for_level(oracle, action, map, link, E,
                                              opts.seeds_per_level, rng.fork(17));
    for (std::size_t i = 0; i < seeds.seeds.size(); ++i) {
        ShootOptions so = opts.shoot;
        so.pin_energy = true;
        so.energy_target = E;
        try {
            RpoRecord rec = rpo_shoot(oracle, action, map, seeds.seeds[i], so);
            try {
                const auto wn = weak_nondegeneracy(rec, oracle, action);
                rec.nondeg_space_dim = wn.dim;
                rec.nondeg_expected_dim = wn.expected;
                rec.weakly_nondegenerate = wn.verdict;
            } catch (const RankAmbiguous&) {
                rec.nondeg_space_dim = -1;
                rec.weakly_nondegenerate = false;
            }
            bool duplicate = false;
            for (const auto& known : level.records)
                if (same_orbit(oracle, action, rec, known, opts)) { duplicate = true; break; }
            if (!duplicate) level.records.push_back(std::move(rec));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "seed " << i << " (T0 " << seeds.seeds[i].T0 << "): " << e.what();
            level.failures.push_back(os.str());
        }
    }

    std::sort(level.records.begin(), level.records.end(),
              [](const RpoRecord& a, const RpoRecord& b) {
                  if (std::abs(a.T - b.T) > 1e-12) return a.T < b.T;
                  return a.monodromy_trace < b.monodromy_trace;
              });
    level.count_found = static_cast<int>(level.records.size());
    level.pass = level.count_found >= bound.N;
    return level;
}

} // namespace

CensusResult level_census(const HamiltonianOracle& oracle, const GroupAction& action,
                          const MomentMap& map, const std::vector<double>& energies,
                          const CensusOptions& opts) {
    // gate: the slice test at the equilibrium must certify a definite slice
    const Vec origin = Vec::Zero(action.space.dim());
    const RelEqReport gate = slice_hessian_test(oracle, action, map, origin);
    if (gate.verdict != SliceVerdict::PositiveDefiniteSlice)
        throw Error("level_census: slice test at the origin returned " +
                    to_string(gate.verdict));

    CensusResult out;
    RandomStream rng(opts.seed);
    std::vector<Vec> tag_samples;
    if (map.algebra_dim() > 0)
        tag_samples = sample_zero_level(action, map, 8, rng.fork(3).next_u64());
    out.link = stratify(action, tag_samples);
    out.bound = category_lower_bound(action, out.link);

    const int L = static_cast<int>(energies.size());
    out.levels.resize(L);
    auto run_level = [&](int i) {
        return census_one_level(oracle, action, map, out.link, out.bound, energies[i], opts,
                                rng.fork(100 + static_cast<std::uint64_t>(i)));
    };

    if (opts.jobs > 1 && L > 1) {
        std::vector<std::future<CensusLevel>> futs;
        futs.reserve(L);
        for (int i = 0; i < L; ++i)
            futs.push_back(std::async(std::launch::async, run_level, i));
        for (int i = 0; i < L; ++i) out.levels[i] = futs[i].get();
    } else {
        for (int i = 0; i < L; ++i) out.levels[i] = run_level(i);
    }

    out.all_pass = true;
    for (const auto& lv : out.levels)
        if (!lv.pass) out.all_pass = false;
    return out;
}

} // namespace rpolab
