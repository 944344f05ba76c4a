#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string_view>
#include <vector>

#include "fgsense/matrix.hpp"

namespace fgsense {

/// Keyed deterministic random stream. The same (seed, purpose, k, trial)
/// always produces the same 64-bit draw sequence, independent of platform and
/// of how trials are scheduled across workers.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view purpose, std::uint64_t k = 0,
              std::uint64_t trial = 0);

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double next_unit();
    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double next_normal();
    /// Uniform integer in [0, bound), unbiased by rejection.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct SparseSignal {
    std::int64_t n = 0;
    std::vector<std::int64_t> support;  // sorted, distinct
    std::vector<double> values;         // aligned with support

    Eigen::VectorXd dense() const;
};

/// Support drawn uniformly over k-subsets, values i.i.d. standard normal.
SparseSignal gen_sparse_signal(std::int64_t n, std::int64_t k, RngStream& rng);

/// m x n matrix of i.i.d. standard normals.
Eigen::MatrixXd gaussian_matrix(std::int64_t m, std::int64_t n, RngStream& rng);

Eigen::MatrixXd to_real(const BinaryMatrix& h);

struct RecoveryResult {
    Eigen::VectorXd estimate;
    std::vector<std::int64_t> support;  // selection order
    double residual_norm = 0.0;
    int iterations = 0;
    bool degenerate = false;  // a selected column was numerically dependent
    double snr_db = 0.0;      // filled by score_against
    bool success = false;     // snr_db >= 100 (inclusive)
};

/// Reconstruction SNR in dB: 20*log10(|x| / |x - estimate|); +infinity for an
/// exact match. Throws std::invalid_argument when x is zero.
double snr_rec(const Eigen::VectorXd& x, const Eigen::VectorXd& estimate);

/// Fills snr_db/success from the ground truth.
void score_against(RecoveryResult& r, const Eigen::VectorXd& truth);

/// Greedy orthogonal matching pursuit with per-step least squares via an
/// incrementally grown QR factorization. Holds the matrix and its column
/// norms so repeated solves against one matrix are cheap.
class OmpSolver {
public:
    explicit OmpSolver(Eigen::MatrixXd a);

    const Eigen::MatrixXd& matrix() const { return a_; }

    /// Runs at most k iterations. Correlation scores are |<a_i, r>| / |a_i|
    /// with ties broken by the smallest column index; early exit when the
    /// residual drops to 1e-12 * |y|.
    RecoveryResult solve(const Eigen::VectorXd& y, int k) const;

private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd col_norms_;
};

RecoveryResult omp(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, int k);

struct OracleResult {
    bool found = false;
    int sparsity = 0;
    std::vector<std::vector<std::int64_t>> supports;  // all consistent at that size
    std::vector<Eigen::VectorXd> solutions;           // aligned with supports
    bool unique = false;
};

/// Exhaustive minimum-support decoder: for s = 0..kmax tests every s-subset
/// for consistency (least-squares residual below 1e-9 * max(1, |y|)) and
/// returns every consistent support at the first feasible size. Guarded to
/// n <= 25, kmax <= 5.
OracleResult l0_oracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, int kmax);

}  // namespace fgsense
