#include "fgsense/experiment.hpp"

#include <cstdio>
#include <stdexcept>
#include <thread>

namespace fgsense {

std::vector<int> KGrid::values() const {
    if (k_min < 1 || k_step < 1 || k_max < k_min)
        throw std::invalid_argument("bad sparsity grid");
    std::vector<int> v;
    for (int k = k_min; k <= k_max; k += k_step) v.push_back(k);
    return v;
}

namespace {

// One trial: draw a k-sparse signal keyed by (seed, k, trial), measure, run
// OMP with budget k, succeed iff the reconstruction SNR reaches 100 dB.
bool run_trial(const OmpSolver& solver, int k, std::uint64_t seed, int trial) {
    RngStream rng(seed, "signal", static_cast<std::uint64_t>(k),
                  static_cast<std::uint64_t>(trial));
    const SparseSignal s = gen_sparse_signal(solver.matrix().cols(), k, rng);
    const Eigen::VectorXd x = s.dense();
    const Eigen::VectorXd y = solver.matrix() * x;
    RecoveryResult r = solver.solve(y, k);
    score_against(r, x);
    return r.success;
}

}  // namespace

RecoveryCurve run_experiment(const Eigen::MatrixXd& a, const ExperimentConfig& cfg) {
    const auto ks = cfg.grid.values();
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    if (cfg.grid.k_max > a.rows())
        throw std::invalid_argument("k_max exceeds the measurement count");
    if (cfg.grid.k_max > a.cols()) throw std::invalid_argument("k_max exceeds the signal length");
    const int workers = std::max(1, cfg.workers);

    const OmpSolver solver(a);
    RecoveryCurve curve;
    for (const int k : ks) {
        std::vector<char> ok(cfg.trials, 0);
        if (workers == 1) {
            for (int t = 0; t < cfg.trials; ++t) ok[t] = run_trial(solver, k, cfg.seed, t);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (int t = w; t < cfg.trials; t += workers)
                        ok[t] = run_trial(solver, k, cfg.seed, t);
                });
            for (auto& th : pool) th.join();
        }
        int successes = 0;
        for (const char c : ok) successes += c;
        curve.points.push_back(CurvePoint{k, cfg.trials, successes});
    }
    return curve;
}

ComparisonResult compare(const Eigen::MatrixXd& proposed, const Eigen::MatrixXd& gaussian,
                         const ExperimentConfig& cfg) {
    if (proposed.rows() != gaussian.rows() || proposed.cols() != gaussian.cols())
        throw std::invalid_argument("comparison matrices must have equal shape");
    ComparisonResult out;
    out.proposed = run_experiment(proposed, cfg);
    out.gaussian = run_experiment(gaussian, cfg);
    return out;
}

namespace {

std::string fmt_percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string curve_csv(const RecoveryCurve& curve) {
    std::string out = "k,trials,successes,percent\n";
    for (const auto& p : curve.points)
        out += std::to_string(p.k) + "," + std::to_string(p.trials) + "," +
               std::to_string(p.successes) + "," + fmt_percent(p.percent()) + "\n";
    return out;
}

std::string comparison_csv(const ComparisonResult& cmp) {
    std::string out = "k,percent_proposed,percent_gaussian\n";
    for (size_t i = 0; i < cmp.proposed.points.size(); ++i)
        out += std::to_string(cmp.proposed.points[i].k) + "," +
               fmt_percent(cmp.proposed.points[i].percent()) + "," +
               fmt_percent(cmp.gaussian.points[i].percent()) + "\n";
    return out;
}

std::string curve_dat(const RecoveryCurve& curve) {
    std::string out;
    for (const auto& p : curve.points)
        out += std::to_string(p.k) + " " + fmt_percent(p.percent()) + "\n";
    return out;
}

Eigen::MatrixXd baseline_gaussian(std::int64_t m, std::int64_t n, std::uint64_t seed) {
    RngStream rng(seed, "matrix");
    return gaussian_matrix(m, n, rng);
}

}  // namespace fgsense
