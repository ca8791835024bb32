#include "rpolab/reduction.hpp"

#include "rpolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rpolab {

namespace {

// --------------------------- exact rational solves --------------------------

struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n) : num(n), den(1) {}
    Fraction(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(std::abs(num), den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    bool is_zero() const { return num == 0; }
    bool negative() const { return num < 0; }
};

Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(a.num * b.den + b.num * a.den, a.den * b.den);
}
Fraction operator-(const Fraction& a, const Fraction& b) {
    return Fraction(a.num * b.den - b.num * a.den, a.den * b.den);
}
Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(a.num * b.num, a.den * b.den);
}
Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.num == 0) throw std::domain_error("Fraction: division by zero");
    return Fraction(a.num * b.den, a.den * b.num);
}

// Solve A x = b exactly (A integer-valued, given as fractions). Returns
// false when the system is inconsistent or the columns are dependent.
bool solve_exact(std::vector<std::vector<Fraction>> A, std::vector<Fraction> b,
                 std::vector<Fraction>& x) {
    const int rows = static_cast<int>(A.size());
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (!A[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) return false;  // dependent columns
        std::swap(A[piv], A[row]);
        std::swap(b[piv], b[row]);
        const Fraction lead = A[row][col];
        for (int r = 0; r < rows; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            const Fraction f = A[r][col] / lead;
            for (int c = col; c < cols; ++c) A[r][c] = A[r][c] - f * A[row][c];
            b[r] = b[r] - f * b[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    if (row < cols) return false;
    for (int r = row; r < rows; ++r)
        if (!b[r].is_zero()) return false;  // inconsistent
    x.assign(cols, Fraction(0));
    for (int r = 0; r < row; ++r) x[pivot_col_of_row[r]] = b[r] / A[r][pivot_col_of_row[r]];
    return true;
}

// Enumerate subsets of `pool` of size <= max_size (deterministic order).
void for_each_subset(const std::vector<int>& pool, int max_size,
                     const std::function<bool(const std::vector<int>&)>& visit) {
    const int n = static_cast<int>(pool.size());
    std::vector<int> idx;
    std::function<bool(int)> rec = [&](int start) -> bool {
        if (!idx.empty()) {
            std::vector<int> subset;
            subset.reserve(idx.size());
            for (int i : idx) subset.push_back(pool[i]);
            if (visit(subset)) return true;
        }
        if (static_cast<int>(idx.size()) == max_size) return false;
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            if (rec(i + 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    rec(0);
}

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// Clear denominators of a nonnegative fraction vector into integers.
std::vector<long long> to_integers(const std::vector<Fraction>& f) {
    long long l = 1;
    for (const auto& x : f) l = lcm_ll(l, x.den);
    std::vector<long long> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].num * (l / f[i].den);
    return out;
}

// Is -w_target in the cone spanned by the weight columns listed in `pool`?
// Carathéodory: enumerate independent subsets of size <= d.
bool in_cone(const std::vector<std::vector<long>>& W, int d,
             const std::vector<long>& target_neg, const std::vector<int>& pool,
             std::vector<Fraction>* combo_out, std::vector<int>* combo_support) {
    bool all_zero = true;
    for (long v : target_neg)
        if (v != 0) all_zero = false;
    if (all_zero) {
        if (combo_out) combo_out->clear();
        if (combo_support) combo_support->clear();
        return true;
    }
    bool found = false;
    for_each_subset(pool, d, [&](const std::vector<int>& subset) {
        std::vector<std::vector<Fraction>> A(d, std::vector<Fraction>(subset.size()));
        std::vector<Fraction> b(d);
        for (int r = 0; r < d; ++r) {
            b[r] = Fraction(-target_neg[r]);
            for (std::size_t c = 0; c < subset.size(); ++c)
                A[r][c] = Fraction(W[r][subset[c]]);
        }
        std::vector<Fraction> x;
        if (!solve_exact(A, b, x)) return false;
        for (const auto& xi : x)
            if (xi.negative()) return false;
        found = true;
        if (combo_out) *combo_out = x;
        if (combo_support) *combo_support = subset;
        return true;
    });
    return found;
}

std::vector<int> support_of(const Vec& v, int n, double tol = 1e-10) {
    std::vector<int> s;
    for (int j = 0; j < n; ++j)
        if (v(j) * v(j) + v(n + j) * v(n + j) > tol) s.push_back(j);
    return s;
}

std::string support_label(const std::vector<int>& support) {
    std::ostringstream os;
    os << "supp{";
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (i) os << ",";
        os << support[i] + 1;
    }
    os << "}";
    return os.str();
}

} // namespace

std::optional<BalanceCertificate>
zero_level_certificate(const std::vector<std::vector<long>>& weight_rows, int n) {
    const int d = static_cast<int>(weight_rows.size());
    if (d == 0) {
        BalanceCertificate cert;
        cert.t.assign(n, 1);
        return cert;
    }
    // zero-weight coordinate alone suffices
    for (int j = 0; j < n; ++j) {
        bool zero = true;
        for (int r = 0; r < d; ++r)
            if (weight_rows[r][j] != 0) zero = false;
        if (zero) {
            BalanceCertificate cert;
            cert.t.assign(n, 0);
            cert.t[j] = 1;
            return cert;
        }
    }
    // basic feasible solution of { t >= 0, W t = 0, sum t = 1 } has support
    // of size <= d + 1
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::optional<BalanceCertificate> result;
    for_each_subset(pool, d + 1, [&](const std::vector<int>& subset) {
        const int k = static_cast<int>(subset.size());
        std::vector<std::vector<Fraction>> A(d + 1, std::vector<Fraction>(k));
        std::vector<Fraction> b(d + 1);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < k; ++c) A[r][c] = Fraction(weight_rows[r][subset[c]]);
        for (int c = 0; c < k; ++c) A[d][c] = Fraction(1);
        b[d] = Fraction(1);
        std::vector<Fraction> x;
        if (!solve_exact(A, b, x)) return false;
        for (const auto& xi : x)
            if (xi.negative()) return false;
        auto ints = to_integers(x);
        BalanceCertificate cert;
        cert.t.assign(n, 0);
        for (int c = 0; c < k; ++c) cert.t[subset[c]] = ints[c];
        result = cert;
        return true;
    });
    return result;
}

std::optional<BalanceCertificate>
support_certificate(const std::vector<std::vector<long>>& weight_rows, int n,
                    const std::vector<int>& support) {
    const int d = static_cast<int>(weight_rows.size());
    if (support.empty()) return std::nullopt;
    if (d == 0) {
        BalanceCertificate cert;
        cert.t.assign(n, 0);
        for (int j : support) cert.t[j] = 1;
        return cert;
    }
    // strict positivity on the whole support: for each j find a nonnegative
    // combination with t_j >= 1, then sum the witnesses
    std::vector<Fraction> total(n, Fraction(0));
    for (int j : support) {
        std::vector<long> wj(d);
        for (int r = 0; r < d; ++r) wj[r] = weight_rows[r][j];
        std::vector<Fraction> combo;
        std::vector<int> combo_support;
        if (!in_cone(weight_rows, d, wj, support, &combo, &combo_support))
            return std::nullopt;
        total[j] = total[j] + Fraction(1);
        for (std::size_t c = 0; c < combo_support.size(); ++c)
            total[combo_support[c]] = total[combo_support[c]] + combo[c];
    }
    auto ints = to_integers(total);
    BalanceCertificate cert;
    cert.t = std::move(ints);
    return cert;
}

// ---------------------------------------------------------------------------

std::vector<Vec> sample_zero_level(const GroupAction& action, const MomentMap& map,
                                   int count, std::uint64_t seed,
                                   const ZeroLevelOptions& opts) {
    const int two_n = action.space.dim();
    const int n = action.space.n;
    RandomStream rng(seed);
    std::vector<Vec> out;
    out.reserve(count);

    if (map.algebra_dim() == 0) {
        for (int s = 0; s < count; ++s) out.push_back(rng.unit_sphere(two_n));
        return out;
    }

    if (action.kind == GroupKind::Torus) {
        auto cert = zero_level_certificate(action.weights, n);
        if (!cert)
            throw EmptyLevelSet("sample_zero_level: zero level set of the moment map is {0}");
    }

    for (int s = 0; s < count; ++s) {
        bool placed = false;
        for (int attempt = 0; attempt < 6 && !placed; ++attempt) {
            Vec v = rng.unit_sphere(two_n);
            for (int it = 0; it < opts.max_newton; ++it) {
                const Vec phi = moment_value(map, v).mu;
                if (phi.norm() <= opts.phi_tol) {
                    out.push_back(v);
                    placed = true;
                    break;
                }
                const Mat dphi = moment_differential(map, v);
                const Vec step = lstsq_min_norm(dphi, phi);
                if (!step.allFinite() || step.norm() > 4.0) break;
                Vec next = v - step;
                const double nn = next.norm();
                if (nn < 1e-6) break;
                v = next / nn;
            }
        }
        if (!placed) {
            std::ostringstream os;
            os << "sample_zero_level: projected Newton stalled (sample " << s << " of "
               << count << ", phi_tol " << opts.phi_tol << ")";
            throw NewtonStall(os.str());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

LinkDescriptor stratify_torus(const GroupAction& action, const std::vector<Vec>& link_samples) {
    const int n = action.space.n;
    const int d = action.algebra_dim();
    if (n > 14)
        throw UnsupportedGroupKind("stratify: combinatorial support enumeration capped at n = 14");

    LinkDescriptor link;

    if (d > 0 && static_cast<int>(action.weights.size()) != d)
        throw std::invalid_argument("stratify: torus action lacks weight rows");

    std::vector<int> zero_coords, active_coords;
    for (int j = 0; j < n; ++j) {
        bool zero = true;
        for (int r = 0; r < d; ++r)
            if (action.weights[r][j] != 0) zero = false;
        (zero ? zero_coords : active_coords).push_back(j);
    }

    int vk_index = -1;
    if (!zero_coords.empty()) {
        // fixed subspace V^K: one stratum for all supports inside it
        link.fixed_point_note = true;
        StratumDescriptor s;
        s.support = zero_coords;
        const int z = static_cast<int>(zero_coords.size());
        s.real_dimension = 2 * z - 1;
        s.symplectic_link_dimension = 2 * z - 2;
        s.isotropy_algebra_dim = d;
        s.isotropy_label = "fixed(V^K)";
        s.closed_flag = true;
        Vec w = Vec::Zero(2 * n);
        for (int j : zero_coords) w(j) = 1.0 / std::sqrt(static_cast<double>(z));
        s.witness = w;
        vk_index = 0;
        link.strata.push_back(std::move(s));
    }

    // admissible supports with a nonempty active part
    const int a = static_cast<int>(active_coords.size());
    for (std::uint64_t mask_active = 1; mask_active < (1ULL << a); ++mask_active) {
        std::vector<int> s_active;
        for (int i = 0; i < a; ++i)
            if (mask_active & (1ULL << i)) s_active.push_back(active_coords[i]);
        auto cert_active = support_certificate(action.weights, n, s_active);
        if (!cert_active) continue;
        const std::uint64_t zmax = 1ULL << zero_coords.size();
        for (std::uint64_t mask_zero = 0; mask_zero < zmax; ++mask_zero) {
            std::vector<int> support = s_active;
            std::vector<long long> t(cert_active->t);
            for (std::size_t i = 0; i < zero_coords.size(); ++i)
                if (mask_zero & (1ULL << i)) {
                    support.push_back(zero_coords[i]);
                    long long fill = 1;
                    for (long long v : cert_active->t) fill = std::max(fill, v);
                    t[zero_coords[i]] = fill;
                }
            std::sort(support.begin(), support.end());

            StratumDescriptor s;
            s.support = support;
            // rank of the active weight columns
            Mat W(d, static_cast<int>(support.size()));
            for (int r = 0; r < d; ++r)
                for (std::size_t c = 0; c < support.size(); ++c)
                    W(r, c) = static_cast<double>(action.weights[r][support[c]]);
            Eigen::JacobiSVD<Mat> svd(W);
            const int rank = rank_decide(svd.singularValues(), 1e-9).rank;
            s.real_dimension = 2 * static_cast<int>(support.size()) - 2 * rank - 1;
            s.symplectic_link_dimension = s.real_dimension - 1;
            s.isotropy_algebra_dim = d - rank;
            s.isotropy_label = support_label(support) + ";iso-dim" + std::to_string(d - rank);

            double total = 0.0;
            for (int j : support) total += static_cast<double>(t[j]);
            Vec w = Vec::Zero(2 * n);
            for (int j : support) w(j) = std::sqrt(static_cast<double>(t[j]) / total);
            s.witness = w;
            link.strata.push_back(std::move(s));
        }
    }

    // closure order: a stratum is closed when its closure contains no other
    // stratum (no proper admissible sub-support, and no fixed coordinates)
    for (std::size_t i = 0; i < link.strata.size(); ++i) {
        if (static_cast<int>(i) == vk_index) continue;
        auto& s = link.strata[i];
        bool closed = true;
        for (int j : s.support)
            if (std::find(zero_coords.begin(), zero_coords.end(), j) != zero_coords.end())
                closed = false;  // fixed sphere lies in the closure
        for (std::size_t k = 0; k < link.strata.size() && closed; ++k) {
            if (k == i || static_cast<int>(k) == vk_index) continue;
            const auto& other = link.strata[k].support;
            if (other.size() >= s.support.size()) continue;
            if (std::includes(s.support.begin(), s.support.end(), other.begin(), other.end()))
                closed = false;
        }
        s.closed_flag = closed;
    }

    // samples: witnesses first, then caller-provided points
    for (std::size_t i = 0; i < link.strata.size(); ++i) {
        link.samples.push_back(link.strata[i].witness);
        link.sample_stratum.push_back(static_cast<int>(i));
    }
    for (const Vec& v : link_samples) {
        const std::vector<int> supp = support_of(v, n);
        int tag = -1;
        bool in_fixed = !supp.empty();
        for (int j : supp)
            if (std::find(zero_coords.begin(), zero_coords.end(), j) == zero_coords.end())
                in_fixed = false;
        if (in_fixed && vk_index >= 0) {
            tag = vk_index;
        } else {
            for (std::size_t i = 0; i < link.strata.size(); ++i)
                if (static_cast<int>(i) != vk_index && link.strata[i].support == supp)
                    tag = static_cast<int>(i);
        }
        link.samples.push_back(v);
        link.sample_stratum.push_back(tag);
    }
    return link;
}

LinkDescriptor stratify_finite(const GroupAction& action, const std::vector<Vec>& link_samples) {
    const auto& elems = action.finite_elements;
    const int m = static_cast<int>(elems.size());
    const int two_n = action.space.dim();
    if (m > 24)
        throw UnsupportedGroupKind("stratify: finite stratification capped at 24 elements");

    auto find_elem = [&](const Mat& g) -> int {
        for (int i = 0; i < m; ++i)
            if ((elems[i] - g).norm() < 1e-8 * (1.0 + g.norm())) return i;
        return -1;
    };
    if (find_elem(Mat::Identity(two_n, two_n)) < 0)
        throw std::invalid_argument("stratify: finite element list lacks the identity");
    // closure under multiplication
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (find_elem(elems[i] * elems[j]) < 0)
                throw std::invalid_argument("stratify: finite element list is not a group");

    auto closure_of = [&](std::vector<int> gens) {
        std::vector<bool> in(m, false);
        for (int g : gens) in[g] = true;
        in[find_elem(Mat::Identity(two_n, two_n))] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (in[i] && in[j]) {
                        int k = find_elem(elems[i] * elems[j]);
                        if (!in[k]) { in[k] = true; grew = true; }
                    }
        }
        std::vector<int> out;
        for (int i = 0; i < m; ++i)
            if (in[i]) out.push_back(i);
        return out;
    };

    std::vector<std::vector<int>> subgroups;
    auto add_subgroup = [&](const std::vector<int>& h) {
        if (std::find(subgroups.begin(), subgroups.end(), h) == subgroups.end())
            subgroups.push_back(h);
    };
    add_subgroup(closure_of({}));
    bool grew = true;
    while (grew) {
        grew = false;
        const auto snapshot = subgroups;
        for (const auto& h : snapshot)
            for (int g = 0; g < m; ++g) {
                auto gens = h;
                gens.push_back(g);
                auto bigger = closure_of(gens);
                if (std::find(subgroups.begin(), subgroups.end(), bigger) == subgroups.end()) {
                    subgroups.push_back(bigger);
                    grew = true;
                }
            }
    }

    auto fix_space = [&](const std::vector<int>& h) {
        Mat stack(static_cast<int>(h.size()) * two_n, two_n);
        for (std::size_t i = 0; i < h.size(); ++i)
            stack.middleRows(static_cast<int>(i) * two_n, two_n) =
                elems[h[i]] - Mat::Identity(two_n, two_n);
        return null_space(stack);
    };

    LinkDescriptor link;
    RandomStream rng(0x57a7aULL);
    std::vector<std::vector<int>> stratum_subgroup;
    for (const auto& h : subgroups) {
        Mat V = fix_space(h);
        if (V.cols() == 0) continue;
        // points with isotropy exactly h exist iff every outside element cuts
        // the fixed space down
        bool exact_exists = true;
        for (int g = 0; g < m && exact_exists; ++g) {
            if (std::find(h.begin(), h.end(), g) != h.end()) continue;
            // intersection of V^h with Fix(g): null space of [g - I; proj-complement]
            Mat cut = elems[g] - Mat::Identity(two_n, two_n);
            Mat inter = null_space((Mat(2 * two_n, two_n) << cut,
                                    Mat::Identity(two_n, two_n) - V * V.transpose())
                                       .finished());
            if (inter.cols() >= V.cols()) exact_exists = false;
        }
        if (!exact_exists) continue;

        StratumDescriptor s;
        s.isotropy_label = "subgroup#" + std::to_string(stratum_subgroup.size()) + "(order " +
                           std::to_string(h.size()) + ")";
        s.real_dimension = static_cast<int>(V.cols()) - 1;
        s.symplectic_link_dimension = s.real_dimension - 1;
        s.isotropy_algebra_dim = 0;
        // witness inside V^h avoiding larger fixed spaces
        Vec w = V * rng.unit_sphere(static_cast<int>(V.cols()));
        w.normalize();
        s.witness = w;
        if (static_cast<int>(h.size()) == m && V.cols() > 0) link.fixed_point_note = true;
        stratum_subgroup.push_back(h);
        link.strata.push_back(std::move(s));
    }

    // closure: stratum closed iff no other stratum has a strictly larger group
    for (std::size_t i = 0; i < link.strata.size(); ++i) {
        bool closed = true;
        for (std::size_t k = 0; k < link.strata.size(); ++k) {
            if (k == i) continue;
            const auto& hi = stratum_subgroup[i];
            const auto& hk = stratum_subgroup[k];
            if (hk.size() > hi.size() &&
                std::includes(hk.begin(), hk.end(), hi.begin(), hi.end()))
                closed = false;
        }
        link.strata[i].closed_flag = closed;
    }

    auto isotropy_of = [&](const Vec& v) {
        std::vector<int> h;
        for (int g = 0; g < m; ++g)
            if ((elems[g] * v - v).norm() < 1e-8) h.push_back(g);
        return h;
    };
    for (std::size_t i = 0; i < link.strata.size(); ++i) {
        link.samples.push_back(link.strata[i].witness);
        link.sample_stratum.push_back(static_cast<int>(i));
    }
    for (const Vec& v : link_samples) {
        auto h = isotropy_of(v);
        int tag = -1;
        for (std::size_t i = 0; i < stratum_subgroup.size(); ++i)
            if (stratum_subgroup[i] == h) tag = static_cast<int>(i);
        link.samples.push_back(v);
        link.sample_stratum.push_back(tag);
    }
    return link;
}

} // namespace

LinkDescriptor stratify(const GroupAction& action, const std::vector<Vec>& link_samples) {
    if (action.kind == GroupKind::Torus && action.finite_elements.empty())
        return stratify_torus(action, link_samples);
    if (action.kind == GroupKind::Finite && action.algebra_dim() == 0)
        return stratify_finite(action, link_samples);
    throw UnsupportedGroupKind(
        "stratify: built-in stratification supports torus and finite kinds only");
}

// ---------------------------------------------------------------------------

ResonanceTorus resonance_torus(const std::vector<double>& freqs, int denominator_bound,
                               double rel_tol) {
    const int n = static_cast<int>(freqs.size());
    for (double f : freqs)
        if (!(f > 0)) throw std::invalid_argument("resonance_torus: frequencies must be positive");
    if (denominator_bound < 1)
        throw std::invalid_argument("resonance_torus: bound must be >= 1");

    ResonanceTorus out;
    out.freqs = freqs;

    double wnorm = 0.0;
    for (double f : freqs) wnorm += f * f;
    wnorm = std::sqrt(wnorm);

    // exact rational rank bookkeeping for collected relations
    std::vector<std::vector<Fraction>> reduced;  // row-echelon rows
    auto try_add = [&](const std::vector<long>& k) {
        std::vector<Fraction> row(n);
        for (int i = 0; i < n; ++i) row[i] = Fraction(k[i]);
        for (const auto& r : reduced) {
            int lead = -1;
            for (int i = 0; i < n; ++i)
                if (!r[i].is_zero()) { lead = i; break; }
            if (lead < 0 || row[lead].is_zero()) continue;
            const Fraction f = row[lead] / r[lead];
            for (int i = 0; i < n; ++i) row[i] = row[i] - f * r[i];
        }
        bool zero = true;
        for (const auto& x : row)
            if (!x.is_zero()) zero = false;
        if (zero) return false;
        reduced.push_back(row);
        out.relation_lattice.push_back(std::vector<long>(k.begin(), k.end()));
        return true;
    };

    std::vector<long> k(n, -denominator_bound);
    const long B = denominator_bound;
    while (true) {
        // canonical representative: first nonzero entry positive
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (k[i] != 0) { first = i; break; }
        if (first >= 0 && k[first] > 0) {
            double dot = 0.0, knorm = 0.0;
            for (int i = 0; i < n; ++i) {
                dot += static_cast<double>(k[i]) * freqs[i];
                knorm += static_cast<double>(k[i]) * k[i];
            }
            knorm = std::sqrt(knorm);
            if (std::abs(dot) <= rel_tol * knorm * wnorm) try_add(k);
        }
        // odometer
        int pos = n - 1;
        while (pos >= 0 && k[pos] == B) { k[pos] = -B; --pos; }
        if (pos < 0) break;
        ++k[pos];
    }

    out.rank = n - static_cast<int>(out.relation_lattice.size());
    return out;
}

// ---------------------------------------------------------------------------

CategoryBound category_lower_bound(const GroupAction& action, const LinkDescriptor& link) {
    CategoryBound out;
    for (const auto& s : link.strata) {
        StratumCategory c;
        c.label = s.isotropy_label;
        c.closed = s.closed_flag;
        if (s.symplectic_link_dimension == 0) {
            c.space_class = LinkSpaceClass::Point;
            c.cat = 1;
        } else if (action.kind == GroupKind::Torus && s.isotropy_algebra_dim == action.algebra_dim() &&
                   !s.support.empty()) {
            // fixed sphere modulo the central circle: CP^{m}
            c.space_class = LinkSpaceClass::ComplexProjective;
            c.cat = static_cast<int>(s.support.size());
        } else if (action.kind == GroupKind::Finite && action.finite_elements.size() == 1) {
            c.space_class = LinkSpaceClass::ComplexProjective;
            c.cat = s.symplectic_link_dimension / 2 + 1;
        } else if (action.kind == GroupKind::Finite) {
            // quotient of a projective space by a finite group: use the
            // weighted-projective table row
            c.space_class = LinkSpaceClass::WeightedProjective;
            c.cat = s.symplectic_link_dimension / 2 + 1;
        } else {
            c.space_class = LinkSpaceClass::Unknown;
            c.cat = 1;
            c.fallback = true;
        }
        if (c.closed) out.N += c.cat;
        out.per_stratum.push_back(std::move(c));
    }
    return out;
}

} // namespace rpolab
