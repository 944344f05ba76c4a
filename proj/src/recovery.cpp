#include "fgsense/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fgsense/errors.hpp"

namespace fgsense {

namespace {

constexpr double kEarlyExitRel = 1e-12;
constexpr double kRankTolRel = 1e-10;
constexpr double kOracleTolRel = 1e-9;

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view purpose, std::uint64_t k,
                     std::uint64_t trial) {
    std::uint64_t s = seed;
    std::uint64_t acc = splitmix64(s);
    s = acc ^ fnv1a(purpose);
    acc = splitmix64(s);
    s = acc ^ (k * 0x9e3779b97f4a7c15ULL + 1);
    acc = splitmix64(s);
    s = acc ^ (trial + 0x2545f4914f6cdd1dULL);
    state_ = splitmix64(s);
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
    // Box-Muller, cosine branch only; u1 shifted away from zero
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * M_PI * u2);
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

Eigen::VectorXd SparseSignal::dense() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
    return x;
}

SparseSignal gen_sparse_signal(std::int64_t n, std::int64_t k, RngStream& rng) {
    if (k < 1 || k > n) throw std::invalid_argument("sparsity must be in [1, n]");
    // Floyd's sampling: uniform over k-subsets, O(k) draws
    std::set<std::int64_t> chosen;
    for (std::int64_t j = n - k; j < n; ++j) {
        const std::int64_t t = static_cast<std::int64_t>(rng.next_below(j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    SparseSignal s;
    s.n = n;
    s.support.assign(chosen.begin(), chosen.end());
    s.values.reserve(k);
    for (std::int64_t i = 0; i < k; ++i) s.values.push_back(rng.next_normal());
    return s;
}

Eigen::MatrixXd gaussian_matrix(std::int64_t m, std::int64_t n, RngStream& rng) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
    Eigen::MatrixXd a(m, n);
    for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = 0; j < n; ++j) a(i, j) = rng.next_normal();
    return a;
}

Eigen::MatrixXd to_real(const BinaryMatrix& h) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(h.rows(), h.cols());
    for (std::int64_t i = 0; i < h.rows(); ++i)
        for (std::int64_t j = 0; j < h.cols(); ++j)
            if (h.get(i, j)) a(i, j) = 1.0;
    return a;
}

double snr_rec(const Eigen::VectorXd& x, const Eigen::VectorXd& estimate) {
    if (x.size() != estimate.size()) throw std::invalid_argument("length mismatch");
    const double nx = x.norm();
    if (nx == 0.0) throw std::invalid_argument("reference signal is zero");
    const double nd = (x - estimate).norm();
    if (nd == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(nx / nd);
}

void score_against(RecoveryResult& r, const Eigen::VectorXd& truth) {
    r.snr_db = snr_rec(truth, r.estimate);
    r.success = r.snr_db >= 100.0;
}

OmpSolver::OmpSolver(Eigen::MatrixXd a) : a_(std::move(a)) {
    col_norms_ = a_.colwise().norm();
}

RecoveryResult OmpSolver::solve(const Eigen::VectorXd& y, int k) const {
    const std::int64_t m = a_.rows(), n = a_.cols();
    if (y.size() != m) throw std::invalid_argument("measurement length mismatch");
    if (k < 0 || k > m) throw std::invalid_argument("sparsity budget must be in [0, m]");

    RecoveryResult res;
    res.estimate = Eigen::VectorXd::Zero(n);

    const double y_norm = y.norm();
    const double exit_tol = kEarlyExitRel * y_norm;
    Eigen::VectorXd r = y;

    Eigen::MatrixXd q_basis(m, k);       // orthonormal columns
    Eigen::MatrixXd r_upper = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd qty(k);              // q_i . y
    std::vector<char> used(n, 0);

    int t = 0;
    while (t < k && r.norm() > exit_tol) {
        // correlation scores |<a_i, r>| / |a_i|, ties to the smallest index
        int pick = -1;
        double best = -1.0;
        const Eigen::VectorXd corr = a_.transpose() * r;
        for (std::int64_t i = 0; i < n; ++i) {
            if (used[i] || col_norms_[i] == 0.0) continue;
            const double score = std::abs(corr[i]) / col_norms_[i];
            if (score > best) {
                best = score;
                pick = static_cast<int>(i);
            }
        }
        if (pick < 0) break;
        used[pick] = 1;
        res.support.push_back(pick);

        // grow the QR factorization by the picked column (orthogonalize twice)
        Eigen::VectorXd v = a_.col(pick);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < t; ++i) {
                const double c = q_basis.col(i).dot(v);
                if (pass == 0)
                    r_upper(i, t) = c;
                else
                    r_upper(i, t) += c;
                v -= c * q_basis.col(i);
            }
        const double vn = v.norm();
        if (vn <= kRankTolRel * col_norms_[pick]) {
            res.degenerate = true;
            res.support.pop_back();
            break;
        }
        r_upper(t, t) = vn;
        q_basis.col(t) = v / vn;
        const double c = q_basis.col(t).dot(r);
        qty[t] = c;
        r -= c * q_basis.col(t);
        ++t;
    }

    // back-substitute the least-squares coefficients for the kept support
    if (t > 0) {
        Eigen::VectorXd z(t);
        for (int i = t - 1; i >= 0; --i) {
            double s = qty[i];
            for (int j = i + 1; j < t; ++j) s -= r_upper(i, j) * z[j];
            z[i] = s / r_upper(i, i);
        }
        for (int i = 0; i < t; ++i) res.estimate[res.support[i]] = z[i];
    }
    res.iterations = t;
    res.residual_norm = r.norm();
    return res;
}

RecoveryResult omp(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, int k) {
    return OmpSolver(a).solve(y, k);
}

OracleResult l0_oracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, int kmax) {
    const std::int64_t n = a.cols();
    if (n > 25) throw TooLargeError("exhaustive decoding limited to 25 columns");
    if (kmax < 0 || kmax > 5) throw std::invalid_argument("kmax must be in [0, 5]");

    const double tol = kOracleTolRel * std::max(1.0, y.norm());
    OracleResult out;

    if (y.norm() <= tol) {
        out.found = true;
        out.sparsity = 0;
        out.supports.push_back({});
        out.solutions.push_back(Eigen::VectorXd::Zero(n));
        out.unique = true;
        return out;
    }

    std::vector<std::int64_t> idx;
    for (int s = 1; s <= kmax; ++s) {
        idx.assign(s, 0);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            Eigen::MatrixXd sub(a.rows(), s);
            for (int c = 0; c < s; ++c) sub.col(c) = a.col(idx[c]);
            const Eigen::VectorXd coef = sub.colPivHouseholderQr().solve(y);
            if ((y - sub * coef).norm() <= tol) {
                out.found = true;
                out.sparsity = s;
                out.supports.push_back(idx);
                Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
                for (int c = 0; c < s; ++c) x[idx[c]] = coef[c];
                out.solutions.push_back(std::move(x));
            }
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (out.found) break;
    }
    out.unique = out.supports.size() == 1;
    return out;
}

}  // namespace fgsense
