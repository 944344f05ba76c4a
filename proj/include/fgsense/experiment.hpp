#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgsense/recovery.hpp"

namespace fgsense {

struct KGrid {
    int k_min = 1;
    int k_max = 1;
    int k_step = 1;

    std::vector<int> values() const;
};

struct ExperimentConfig {
    KGrid grid;
    int trials = 500;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct CurvePoint {
    int k = 0;
    int trials = 0;
    int successes = 0;

    double percent() const { return 100.0 * successes / trials; }
};

struct RecoveryCurve {
    std::vector<CurvePoint> points;
};

/// Monte-Carlo OMP recovery curve over the k grid. Every trial derives its
/// randomness from (seed, k, trial index), so the curve is byte-identical for
/// any worker count.
RecoveryCurve run_experiment(const Eigen::MatrixXd& a, const ExperimentConfig& cfg);

/// Paired proposed-vs-Gaussian curves; both matrices must have equal shape
/// and the grids must match.
struct ComparisonResult {
    RecoveryCurve proposed;
    RecoveryCurve gaussian;
};
ComparisonResult compare(const Eigen::MatrixXd& proposed, const Eigen::MatrixXd& gaussian,
                         const ExperimentConfig& cfg);

/// CSV schemas: curves are "k,trials,successes,percent", comparisons are
/// "k,percent_proposed,percent_gaussian". Percents always carry exactly two
/// decimals; newlines are LF.
std::string curve_csv(const RecoveryCurve& curve);
std::string comparison_csv(const ComparisonResult& cmp);

/// Two-column "k percent" lines for direct plotting.
std::string curve_dat(const RecoveryCurve& curve);

/// The Gaussian baseline matrix an experiment with this seed uses.
Eigen::MatrixXd baseline_gaussian(std::int64_t m, std::int64_t n, std::uint64_t seed);

}  // namespace fgsense
