#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fgsense/analysis.hpp"
#include "fgsense/recovery.hpp"

using namespace fgsense;

TEST_SUITE_BEGIN("recovery");

namespace {

BinaryMatrix random_matrix_no_zero_cols(std::int64_t rows, std::int64_t cols, RngStream& rng) {
    for (;;) {
        BinaryMatrix h(rows, cols);
        for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j)
                if (rng.next_u64() & 1) h.set(i, j);
        bool ok = true;
        for (std::int64_t j = 0; j < cols; ++j)
            if (h.col_weight(j) == 0) ok = false;
        if (ok) return h;
    }
}

}  // namespace

TEST_CASE("keyed streams replay exactly and differ across keys") {
    RngStream a(42, "signal", 3, 7);
    RngStream b(42, "signal", 3, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, "signal", 3, 8);
    RngStream d(42, "matrix", 3, 7);
    RngStream e(43, "signal", 3, 7);
    RngStream base(42, "signal", 3, 7);
    const std::uint64_t v = base.next_u64();
    CHECK(c.next_u64() != v);
    CHECK(d.next_u64() != v);
    CHECK(e.next_u64() != v);
}

TEST_CASE("sparse signals have the stated support law") {
    RngStream rng(5, "signal", 2, 0);
    const SparseSignal full = gen_sparse_signal(6, 6, rng);
    CHECK(full.support == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5});

    CHECK_THROWS_AS(gen_sparse_signal(4, 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(gen_sparse_signal(4, 0, rng), std::invalid_argument);

    // identical keys give identical signals
    RngStream r1(9, "signal", 2, 13), r2(9, "signal", 2, 13);
    const SparseSignal s1 = gen_sparse_signal(40, 2, r1);
    const SparseSignal s2 = gen_sparse_signal(40, 2, r2);
    CHECK(s1.support == s2.support);
    CHECK(s1.values == s2.values);

    // inclusion frequency k/n = 0.2 within 8 sigma over 1e5 draws
    const int draws = 100'000;
    std::vector<int> hits(10, 0);
    for (int t = 0; t < draws; ++t) {
        RngStream r(123, "signal", 2, static_cast<std::uint64_t>(t));
        for (const std::int64_t i : gen_sparse_signal(10, 2, r).support) ++hits[i];
    }
    for (const int h : hits) CHECK(std::abs(h / double(draws) - 0.2) < 0.01);
}

TEST_CASE("gaussian entries have the right moments") {
    RngStream rng(17, "matrix");
    const Eigen::MatrixXd a = gaussian_matrix(1000, 1000, rng);
    const double mean = a.mean();
    const double var = (a.array() - mean).square().sum() / (a.size() - 1);
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.01);

    RngStream r1(3, "matrix"), r2(3, "matrix");
    CHECK(gaussian_matrix(5, 7, r1) == gaussian_matrix(5, 7, r2));
}

TEST_CASE("reconstruction SNR has an inclusive 100 dB boundary") {
    Eigen::VectorXd x(2), xh(2);
    x << 100000.0, 0.0;

    CHECK(snr_rec(x, x) == std::numeric_limits<double>::infinity());

    xh << 0.0, 0.0;
    CHECK(snr_rec(x, xh) == 0.0);

    // the error is exactly 1e-5 of the signal norm: exactly 100 dB, a success
    xh << 99999.0, 0.0;
    CHECK(snr_rec(x, xh) == 100.0);
    RecoveryResult r;
    r.estimate = xh;
    score_against(r, x);
    CHECK(r.success);

    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(snr_rec(zero, xh), std::invalid_argument);
}

TEST_CASE("one-atom measurements are recovered exactly") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(4, 4);
    const Eigen::VectorXd y = eye.col(2);
    RecoveryResult r = omp(eye, y, 1);
    CHECK(r.support == std::vector<std::int64_t>{2});
    score_against(r, y);
    CHECK(r.snr_db == std::numeric_limits<double>::infinity());
    CHECK(r.success);
}

TEST_CASE("a zero measurement exits before the first iteration") {
    RngStream rng(4, "matrix");
    const Eigen::MatrixXd a = gaussian_matrix(6, 12, rng);
    const RecoveryResult r = omp(a, Eigen::VectorXd::Zero(6), 3);
    CHECK(r.iterations == 0);
    CHECK(r.estimate.isZero(0.0));
}

TEST_CASE("residuals shrink monotonically and end orthogonal to the support") {
    RngStream mrng(8, "matrix");
    const Eigen::MatrixXd a = gaussian_matrix(20, 40, mrng);
    RngStream srng(8, "signal", 10, 0);
    const Eigen::VectorXd x = gen_sparse_signal(40, 10, srng).dense();
    const Eigen::VectorXd y = a * x;

    const OmpSolver solver(a);
    double prev = y.norm();
    for (int k = 1; k <= 10; ++k) {
        const RecoveryResult r = solver.solve(y, k);
        CHECK(r.residual_norm <= prev + 1e-12);
        prev = r.residual_norm;
    }
    const RecoveryResult r = solver.solve(y, 10);
    const Eigen::VectorXd res = y - a * r.estimate;
    for (const std::int64_t j : r.support)
        CHECK(std::abs(a.col(j).dot(res)) <= 1e-8 * y.norm());
}

TEST_CASE("selecting a numerically dependent column is a failure, not a crash") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 0, 0;
    Eigen::VectorXd y(2);
    y << 1, 1;
    RecoveryResult r = omp(a, y, 2);
    CHECK(r.degenerate);
    Eigen::VectorXd truth(2);
    truth << 0.5, 0.5;
    score_against(r, truth);
    CHECK_FALSE(r.success);
}

TEST_CASE("omp rejects inconsistent shapes") {
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(omp(a, Eigen::VectorXd::Zero(2), 1), std::invalid_argument);
    CHECK_THROWS_AS(omp(a, Eigen::VectorXd::Zero(3), 4), std::invalid_argument);
}

TEST_CASE("identical trial keys reproduce identical results") {
    RngStream mrng(31, "matrix");
    const Eigen::MatrixXd a = gaussian_matrix(10, 30, mrng);
    const OmpSolver solver(a);
    for (int trial = 0; trial < 3; ++trial) {
        RngStream r1(7, "signal", 4, static_cast<std::uint64_t>(trial));
        RngStream r2(7, "signal", 4, static_cast<std::uint64_t>(trial));
        const Eigen::VectorXd x1 = gen_sparse_signal(30, 4, r1).dense();
        const Eigen::VectorXd x2 = gen_sparse_signal(30, 4, r2).dense();
        REQUIRE(x1 == x2);
        const RecoveryResult a1 = solver.solve(a * x1, 4);
        const RecoveryResult a2 = solver.solve(a * x2, 4);
        CHECK(a1.estimate == a2.estimate);
        CHECK(a1.support == a2.support);
    }
}

TEST_CASE("the exhaustive decoder finds unique sparse solutions") {
    RngStream rng(77, "oracle-m");
    const BinaryMatrix hb = random_matrix_no_zero_cols(6, 10, rng);
    const Eigen::MatrixXd a = to_real(hb);

    RngStream srng(77, "signal", 1, 0);
    const SparseSignal s = gen_sparse_signal(10, 1, srng);
    const OracleResult res = l0_oracle(a, a * s.dense(), 2);
    REQUIRE(res.found);
    CHECK(res.sparsity == 1);
    CHECK(res.unique);
    CHECK(res.supports[0] == s.support);

    // a generic dense right-hand side is inconsistent at small support
    Eigen::VectorXd y(6);
    y << 0.3, -1.2, 0.7, 2.4, -0.9, 1.1;
    CHECK_FALSE(l0_oracle(a, y, 1).found);

    CHECK_THROWS_AS(l0_oracle(a, y, 6), std::invalid_argument);
}

TEST_CASE("a dependency split at half the spark defeats unique decoding") {
    const BinaryMatrix h = [] {
        BinaryMatrix m(3, 7);
        for (std::int64_t j = 1; j <= 7; ++j)
            for (int i = 0; i < 3; ++i)
                if ((j >> i) & 1) m.set(i, j - 1);
        return m;
    }();
    const auto spark = exact_spark(h, 5);
    REQUIRE(spark.found());
    REQUIRE(spark.value == 3);

    std::vector<std::vector<std::int64_t>> cols(3, std::vector<std::int64_t>(3));
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) cols[i][c] = h.get(i, spark.certificate[c]) ? 1 : 0;
    const auto w = exact_kernel_vector(cols);

    const int k0 = (spark.value + 1) / 2;  // 2
    Eigen::VectorXd x = Eigen::VectorXd::Zero(7);
    std::vector<std::int64_t> x_support;
    for (int c = spark.value / 2; c < spark.value; ++c) {
        x[spark.certificate[c]] = -double(w[c]);
        x_support.push_back(spark.certificate[c]);
    }
    const Eigen::MatrixXd a = to_real(h);
    const OracleResult res = l0_oracle(a, a * x, k0);
    REQUIRE(res.found);
    const bool defeated =
        res.sparsity < k0 || res.supports.size() > 1 || res.supports[0] != x_support;
    CHECK(defeated);
}

TEST_CASE("omp agrees with the exhaustive decoder when it succeeds") {
    RngStream rng(55, "omp-vs-oracle");
    int successes = 0;
    for (int inst = 0; inst < 8; ++inst) {
        const BinaryMatrix hb = random_matrix_no_zero_cols(6, 10, rng);
        const auto spark = exact_spark(hb, 7);
        REQUIRE(spark.found());
        // the largest bound-guaranteed sparsity for this instance
        const int k = std::min((spark.value - 1) / 2, 3);
        if (k < 1) continue;
        const Eigen::MatrixXd a = to_real(hb);
        const OmpSolver solver(a);
        for (int t = 0; t < 10; ++t) {
            RngStream srng(55, "signal", k, static_cast<std::uint64_t>(inst * 100 + t));
            const SparseSignal s = gen_sparse_signal(10, k, srng);
            const Eigen::VectorXd x = s.dense();
            RecoveryResult r = solver.solve(a * x, k);
            score_against(r, x);
            if (!r.success) continue;
            ++successes;
            std::vector<std::int64_t> sup = r.support;
            std::sort(sup.begin(), sup.end());
            const OracleResult oracle = l0_oracle(a, a * x, k);
            REQUIRE(oracle.found);
            CHECK(oracle.unique);
            CHECK(oracle.supports[0] == sup);
        }
    }
    CHECK(successes > 0);
}

TEST_SUITE_END();
