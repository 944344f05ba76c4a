#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fgsense/analysis.hpp"
#include "fgsense/errors.hpp"
#include "fgsense/recovery.hpp"

using namespace fgsense;

TEST_SUITE_BEGIN("analysis");

namespace {

BinaryMatrix k4() {
    return BinaryMatrix::from_rows({
        "111000",
        "100110",
        "010101",
        "001011",
    });
}

BinaryMatrix hamming(int m) {
    const std::int64_t n = (std::int64_t(1) << m) - 1;
    BinaryMatrix h(m, n);
    for (std::int64_t j = 1; j <= n; ++j)
        for (int i = 0; i < m; ++i)
            if ((j >> i) & 1) h.set(i, j - 1);
    return h;
}

// exact check: spark >= 1 + sqrt(weight_product)/pair_dot
bool spark_meets_coherence_bound(std::int64_t spark, const SparkBounds& b) {
    if (!b.coherence_applicable) return true;
    const __int128 lhs = __int128(spark - 1) * b.coherence_lambda;
    return lhs * lhs >= __int128(b.coherence_weight_product);
}

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

TEST_CASE("coherence of the Hamming matrix matches the pairwise oracle") {
    const BinaryMatrix h = hamming(3);
    // oracle: exhaust all 21 pairs in plain floating point
    double expect = 0.0;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            double dot = 0, wi = 0, wj = 0;
            for (int r = 0; r < 3; ++r) {
                dot += h.get(r, i) && h.get(r, j) ? 1 : 0;
                wi += h.get(r, i);
                wj += h.get(r, j);
            }
            expect = std::max(expect, dot / std::sqrt(wi * wj));
        }
    const CoherenceResult c = coherence(h);
    CHECK(c.defined);
    CHECK(c.value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(c.value == doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(c.lambda == 2);
    CHECK(c.weight_product == 6);
}

TEST_CASE("orthogonal columns have no defined coherence") {
    const BinaryMatrix eye = BinaryMatrix::from_rows({"100", "010", "001"});
    const CoherenceResult c = coherence(eye);
    CHECK_FALSE(c.defined);
    CHECK(c.value == 0.0);

    const BinaryMatrix with_zero = BinaryMatrix::from_rows({"10", "00"});
    CHECK_THROWS_AS(coherence(with_zero), std::invalid_argument);
}

TEST_CASE("gamma and lambda for the named instances") {
    const auto [kg, kl] = gamma_lambda(k4());
    CHECK(kg == 2);
    CHECK(kl == 1);

    const Geometry g(GeomKind::EG, 4, 2);
    const BinaryMatrix h = build_incidence(g, 1, 3, 1);
    const auto [gg, gl] = gamma_lambda(h);
    CHECK(gg == 7);
    CHECK(gl == 3);
    CHECK(gl == containing_count(GeomKind::EG, 4, 2, 3, 2));
    // oracle: direct pairwise popcount over all 120 columns
    std::int64_t oracle_lambda = 0;
    for (std::int64_t i = 0; i < h.cols(); ++i)
        for (std::int64_t j = i + 1; j < h.cols(); ++j) {
            std::int64_t dot = 0;
            for (std::int64_t r = 0; r < h.rows(); ++r)
                dot += h.get(r, i) && h.get(r, j) ? 1 : 0;
            oracle_lambda = std::max(oracle_lambda, dot);
        }
    CHECK(gl == oracle_lambda);

    const Geometry pg(GeomKind::PG, 3, 4);
    const auto [pgg, pgl] = gamma_lambda(build_incidence(pg, 0, 1, 2));
    CHECK(pgg == 5);
    CHECK(pgl == 1);
}

TEST_CASE("structural spark bounds for the example matrices") {
    const Geometry eg42(GeomKind::EG, 4, 2);
    const auto b1 = spark_lower_bounds(build_incidence(eg42, 1, 3, 1));
    REQUIRE(b1.type1_bound.has_value());
    CHECK(*b1.type1_bound == 6);
    CHECK(b1.gamma_lambda_bound == Rational(10, 3));
    CHECK(b1.two_gamma_lambda_bound == Rational(14, 3));
    CHECK(b1.guaranteed_sparsity == 2);

    const Geometry pg34(GeomKind::PG, 3, 4);
    const auto b2 = spark_lower_bounds(build_incidence(pg34, 0, 1, 2));
    REQUIRE(b2.type2_bound.has_value());
    CHECK(*b2.type2_bound == 10);
    CHECK(b2.guaranteed_sparsity == 4);

    const auto bk = spark_lower_bounds(k4());
    CHECK(bk.gamma_lambda_bound == Rational(3));
    CHECK(bk.two_gamma_lambda_bound == Rational(4));
    CHECK_FALSE(bk.type1_bound.has_value());
    CHECK(bk.guaranteed_sparsity == 1);
}

TEST_CASE("geometry bounds survive column deletion but not row deletion") {
    const Geometry g(GeomKind::EG, 2, 4);
    const BinaryMatrix h = build_incidence(g, 0, 1, 1);
    CHECK(spark_lower_bounds(h).type1_bound.has_value());

    const BinaryMatrix sel = select_row_bundles(h, 2);
    CHECK_FALSE(spark_lower_bounds(sel).type1_bound.has_value());

    // transposing a row-selected matrix restores a column-complete type-2 view
    const BinaryMatrix t = transpose(sel);
    const auto bt = spark_lower_bounds(t);
    REQUIRE(bt.type2_bound.has_value());
    CHECK(*bt.type2_bound == 2 * contained_count(GeomKind::EG, 4, 1, 0));
}

TEST_CASE("girth of the example matrices") {
    const Geometry eg42(GeomKind::EG, 4, 2);
    const auto g1 = girth(build_incidence(eg42, 1, 3, 1));
    REQUIRE(g1.has_value());
    CHECK(*g1 == 4);

    const Geometry pg34(GeomKind::PG, 3, 4);
    const auto g2 = girth(build_incidence(pg34, 0, 1, 2));
    REQUIRE(g2.has_value());
    CHECK(*g2 == 6);

    const BinaryMatrix eye = BinaryMatrix::from_rows({"100", "010", "001"});
    CHECK_FALSE(girth(eye).has_value());

    // a single 4-cycle and a single 6-cycle
    CHECK(*girth(BinaryMatrix::from_rows({"11", "11"})) == 4);
    CHECK(*girth(BinaryMatrix::from_rows({"110", "011", "101"})) == 6);
}

TEST_CASE("matrices with lambda = 1 have girth at least 6") {
    for (const BinaryMatrix& h :
         {k4(), build_incidence(Geometry(GeomKind::PG, 3, 4), 0, 1, 2)}) {
        const auto [g, l] = gamma_lambda(h);
        REQUIRE(l == 1);
        const auto gi = girth(h);
        REQUIRE(gi.has_value());
        CHECK(*gi >= 6);
    }
}

TEST_CASE("exact spark of the complete-graph incidence matrix is 4") {
    const auto s = exact_spark(k4(), 6);
    REQUIRE(s.found());
    CHECK(s.value == 4);
    CHECK(s.certificate.size() == 4);
    // the certificate really is dependent
    std::vector<std::vector<std::int64_t>> cols(4, std::vector<std::int64_t>(4));
    const BinaryMatrix h = k4();
    for (int i = 0; i < 4; ++i)
        for (size_t c = 0; c < 4; ++c) cols[i][c] = h.get(i, s.certificate[c]) ? 1 : 0;
    CHECK(exact_rank(cols) < 4);
    // and admits an integer dependency with entries on a 4-cycle
    const auto w = exact_kernel_vector(cols);
    for (int i = 0; i < 4; ++i) {
        std::int64_t dot = 0;
        for (size_t c = 0; c < 4; ++c) dot += cols[i][c] * w[c];
        CHECK(dot == 0);
    }
}

TEST_CASE("exact spark of the Hamming matrices is 3") {
    for (const int m : {3, 4}) {
        const auto s = exact_spark(hamming(m), 5);
        REQUIRE(s.found());
        CHECK(s.value == 3);
        const auto st = stopping_distance(hamming(m), 5);
        REQUIRE(st.found());
        CHECK(st.value == 3);
    }
}

TEST_CASE("full-column-rank matrices report an infinite spark") {
    // lines over points of EG(2,2): the Gram matrix 2I + J is nonsingular
    const Geometry g(GeomKind::EG, 2, 2);
    const BinaryMatrix h = build_incidence(g, 0, 1, 1);
    REQUIRE(h.rows() == 6);
    REQUIRE(h.cols() == 4);

    // oracle: integer determinant of the 4x4 Gram matrix via cofactors
    std::int64_t gram[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            gram[i][j] = 0;
            for (std::int64_t r = 0; r < 6; ++r)
                gram[i][j] += (h.get(r, i) && h.get(r, j)) ? 1 : 0;
        }
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return gram[r0][c0] * (gram[r1][c1] * gram[r2][c2] - gram[r1][c2] * gram[r2][c1]) -
               gram[r0][c1] * (gram[r1][c0] * gram[r2][c2] - gram[r1][c2] * gram[r2][c0]) +
               gram[r0][c2] * (gram[r1][c0] * gram[r2][c1] - gram[r1][c1] * gram[r2][c0]);
    };
    std::int64_t det = 0;
    for (int c = 0; c < 4; ++c) {
        const int cc[3] = {c == 0 ? 1 : 0, c <= 1 ? 2 : 1, c <= 2 ? 3 : 2};
        det += (c % 2 ? -1 : 1) * gram[0][c] * det3(1, 2, 3, cc[0], cc[1], cc[2]);
    }
    CHECK(det == 48);

    const auto s = exact_spark(h, 4);
    CHECK(s.status == ExactSearch::Status::Infinite);
}

TEST_CASE("searches past the limit report above-limit") {
    const auto s = exact_spark(k4(), 3);
    CHECK(s.status == ExactSearch::Status::AboveLimit);
    CHECK(s.str() == ">3");
}

TEST_CASE("stopping sets of the named instances") {
    const auto st = stopping_distance(k4(), 6);
    REQUIRE(st.found());
    CHECK(st.value == 3);
    // re-verify the certificate: no row of weight one on the set
    const BinaryMatrix h = k4();
    for (int i = 0; i < 4; ++i) {
        int w = 0;
        for (const std::int64_t c : st.certificate) w += h.get(i, c) ? 1 : 0;
        CHECK(w != 1);
    }

    const BinaryMatrix eye = BinaryMatrix::from_rows({"1000", "0100", "0010", "0001"});
    CHECK(stopping_distance(eye, 4).status == ExactSearch::Status::Infinite);
    CHECK(stopping_distance(eye, 3).status == ExactSearch::Status::AboveLimit);
}

TEST_CASE("spark dominates the stopping distance and every lower bound") {
    RngStream rng(21, "analysis-random-matrices");
    std::vector<BinaryMatrix> instances{k4(), hamming(3), hamming(4)};
    for (int i = 0; i < 10; ++i) instances.push_back(random_matrix_no_zero_cols(6, 10, rng));

    for (const auto& h : instances) {
        const auto sp = exact_spark(h, 8);
        const auto st = stopping_distance(h, 8);
        REQUIRE(sp.found());
        REQUIRE(st.found());
        CHECK(sp.value >= st.value);

        const auto b = spark_lower_bounds(h);
        if (b.ratio_applicable) {
            // spark >= 2*gamma/lambda and spark >= 1 + gamma/lambda, exactly
            CHECK(sp.value * b.two_gamma_lambda_bound.den >= b.two_gamma_lambda_bound.num);
            CHECK(sp.value * b.gamma_lambda_bound.den >= b.gamma_lambda_bound.num);
        }
        CHECK(spark_meets_coherence_bound(sp.value, b));
        CHECK(2 * b.guaranteed_sparsity < sp.value);
    }
}

TEST_CASE("the chain of structural bounds is ordered as stated") {
    const BoundChain c = bound_chain(GeomKind::EG, 4, 2, 1, 3, 1);
    CHECK(c.strongest == Rational(6));
    CHECK(c.middle == Rational(14, 3));
    CHECK(c.weakest == Rational(4));
    CHECK(c.first_ge_second);
    CHECK_FALSE(c.first_eq_second);
    CHECK(c.second_gt_third);
    CHECK_FALSE(c.equality_expected);

    // adjacent dimensions collapse the first inequality to equality
    const BoundChain adj = bound_chain(GeomKind::EG, 3, 2, 1, 2, 1);
    CHECK(adj.equality_expected);
    CHECK(adj.first_eq_second);

    // and so does mu1 = 0 for type-2 Euclidean matrices
    const BoundChain eg0 = bound_chain(GeomKind::EG, 4, 3, 0, 2, 2);
    CHECK(eg0.equality_expected);
    CHECK(eg0.first_eq_second);
    const BoundChain pg0 = bound_chain(GeomKind::PG, 4, 3, 0, 2, 2);
    CHECK_FALSE(pg0.equality_expected);
    CHECK_FALSE(pg0.first_eq_second);

    CHECK_THROWS_AS(bound_chain(GeomKind::EG, 4, 2, 0, 2, 1), std::invalid_argument);
}

TEST_CASE("exact rank and kernel extraction behave on known matrices") {
    CHECK(exact_rank({{1, 0}, {0, 1}}) == 2);
    CHECK(exact_rank({{1, 2, 3}, {2, 4, 6}}) == 1);
    CHECK(exact_rank({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}) == 3);  // odd cycle, full rank over Q

    // K4 incidence has full row-space rank 4 (it contains odd cycles)
    const BinaryMatrix h = k4();
    std::vector<std::vector<std::int64_t>> all(4, std::vector<std::int64_t>(6));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) all[i][j] = h.get(i, j) ? 1 : 0;
    CHECK(exact_rank(all) == 4);

    const auto w = exact_kernel_vector({{1, 0, 1}, {0, 1, 1}});
    REQUIRE(w.size() == 3);
    CHECK(w[0] + w[2] == 0);
    CHECK(w[1] + w[2] == 0);
    CHECK_THROWS_AS(exact_kernel_vector({{1, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("rationals compare exactly") {
    CHECK(Rational(14, 3) > Rational(4));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2).num == -1);
    CHECK(Rational(10, 3).str() == "10/3");
    CHECK(Rational(6).str() == "6");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("analyze composes the full report") {
    const AnalysisReport r = analyze(k4(), 5, 5);
    CHECK(r.rows == 4);
    CHECK(r.cols == 6);
    CHECK(r.gamma == 2);
    CHECK(r.lambda == 1);
    CHECK(r.rho == 3);
    REQUIRE(r.girth.has_value());
    CHECK(*r.girth == 6);
    REQUIRE(r.spark.has_value());
    CHECK(r.spark->value == 4);
    REQUIRE(r.stopping.has_value());
    CHECK(r.stopping->value == 3);
    const std::string text = r.render();
    CHECK(text.find("spark=4\n") != std::string::npos);
    CHECK(text.find("girth=6\n") != std::string::npos);
    CHECK(text.find("bound_two_gamma_lambda=4\n") != std::string::npos);
}

TEST_SUITE_END();
