#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fgsense/errors.hpp"
#include "fgsense/matrix.hpp"

using namespace fgsense;

TEST_SUITE_BEGIN("matrix");

namespace {

bool uniform(const std::vector<std::int64_t>& w, std::int64_t v) {
    return std::all_of(w.begin(), w.end(), [v](std::int64_t x) { return x == v; });
}

}  // namespace

TEST_CASE("the 30x120 incidence matrix is (7,28)-regular") {
    const Geometry g(GeomKind::EG, 4, 2);
    const BinaryMatrix h = build_incidence(g, 1, 3, 1);
    CHECK(h.rows() == 30);
    CHECK(h.cols() == 120);
    CHECK(uniform(h.row_weights(), 28));
    CHECK(uniform(h.col_weights(), 7));
    REQUIRE(h.meta().has_value());
    CHECK(h.meta()->bundle_count == 15);
    CHECK(h.meta()->bundle_rows == 2);
}

TEST_CASE("type 2 is the exact transpose and transposing twice restores the bits") {
    const Geometry g(GeomKind::PG, 3, 4);
    const BinaryMatrix h1 = build_incidence(g, 0, 1, 1);
    const BinaryMatrix h2 = build_incidence(g, 0, 1, 2);
    CHECK(h1.rows() == 357);
    CHECK(h2.rows() == 85);
    CHECK(h2.cols() == 357);
    CHECK(transpose(h1).same_bits(h2));
    CHECK(transpose(transpose(h1)).same_bits(h1));
    CHECK(h2.meta()->type == 2);
    CHECK(transpose(h2).meta()->type == 1);
}

TEST_CASE("rows of one bundle sum to the all-ones vector for point columns") {
    const Geometry g(GeomKind::EG, 2, 16);
    const BinaryMatrix h = build_incidence(g, 0, 1, 1);
    const std::int64_t bsize = h.meta()->bundle_rows;
    for (const std::int64_t b : {std::int64_t(0), std::int64_t(7), std::int64_t(16)}) {
        std::vector<int> colsum(h.cols(), 0);
        for (std::int64_t i = b * bsize; i < (b + 1) * bsize; ++i)
            for (std::int64_t j = 0; j < h.cols(); ++j) colsum[j] += h.get(i, j) ? 1 : 0;
        CHECK(std::all_of(colsum.begin(), colsum.end(), [](int v) { return v == 1; }));
    }
}

TEST_CASE("bundle selection keeps prefixes and the full selection is the identity") {
    const Geometry g(GeomKind::EG, 2, 16);
    const BinaryMatrix h = build_incidence(g, 0, 1, 1);

    const BinaryMatrix s4 = select_row_bundles(h, 4);
    CHECK(s4.rows() == 64);
    CHECK(s4.cols() == 256);
    CHECK(uniform(s4.col_weights(), 4));
    CHECK_FALSE(s4.meta()->rows_complete);
    for (std::int64_t i = 0; i < s4.rows(); ++i)
        for (std::int64_t j = 0; j < s4.cols(); ++j) CHECK(s4.get(i, j) == h.get(i, j));

    const BinaryMatrix s7 = select_row_bundles(h, 7);
    CHECK(s7.rows() == 112);
    CHECK(uniform(s7.col_weights(), 7));

    const BinaryMatrix all = select_row_bundles(h, 17);
    CHECK(all.same_bits(h));
    CHECK(all.meta()->rows_complete);

    CHECK_THROWS_AS(select_row_bundles(h, 0), std::invalid_argument);
    CHECK_THROWS_AS(select_row_bundles(h, 18), std::invalid_argument);
    CHECK_THROWS_AS(select_row_bundles(transpose(h), 4), std::invalid_argument);
}

TEST_CASE("selecting one bundle of 3-flats leaves uncovered lines and is rejected") {
    const Geometry g(GeomKind::EG, 4, 2);
    const BinaryMatrix h = build_incidence(g, 1, 3, 1);
    CHECK_THROWS_AS(select_row_bundles(h, 1), std::invalid_argument);
}

TEST_CASE("column deletion removes exactly lines*q columns and stays regular") {
    const Geometry g(GeomKind::EG, 2, 32);
    const BinaryMatrix h = build_incidence(g, 0, 1, 1);
    const BinaryMatrix hb = select_row_bundles(h, 10);
    CHECK(hb.rows() == 320);
    const auto bundles = g.parallel_bundles(1);

    const BinaryMatrix d0 = delete_covered_columns(g, hb, bundles[10], 0);
    CHECK(d0.same_bits(hb));

    const BinaryMatrix d4 = delete_covered_columns(g, hb, bundles[10], 4);
    CHECK(d4.rows() == 320);
    CHECK(d4.cols() == 896);
    CHECK(uniform(d4.col_weights(), 10));

    const BinaryMatrix d12 = delete_covered_columns(g, hb, bundles[10], 12);
    CHECK(d12.cols() == 640);
    CHECK(uniform(d12.col_weights(), 10));
    CHECK(d12.meta()->deleted_columns.size() == 384);

    CHECK_THROWS_AS(delete_covered_columns(g, hb, bundles[10], 33), std::invalid_argument);
    CHECK_THROWS_AS(delete_covered_columns(g, hb, bundles[3], 1), std::invalid_argument);
    CHECK_THROWS_AS(delete_covered_columns(g, h, bundles[10], 1), std::invalid_argument);
}

TEST_CASE("constructions are bit-reproducible across geometry instances") {
    const std::string a = to_bmm_string(build_incidence(Geometry(GeomKind::EG, 3, 4), 0, 1, 1));
    const std::string b = to_bmm_string(build_incidence(Geometry(GeomKind::EG, 3, 4), 0, 1, 1));
    CHECK(a == b);
}

TEST_CASE("bmm text format is bit-exact") {
    const BinaryMatrix eye = BinaryMatrix::from_rows({"10", "01"});
    CHECK(to_bmm_string(eye) == "BMM 2 2\n10\n01\n");

    const Geometry g(GeomKind::EG, 4, 2);
    const BinaryMatrix h = build_incidence(g, 1, 3, 1);
    const std::string path = "/tmp/fgsense_test_roundtrip.bmm";
    write_bmm(h, path);
    const BinaryMatrix back = read_bmm(path);
    CHECK(back.same_bits(h));
    CHECK_FALSE(back.meta().has_value());  // the format carries no build record
    std::remove(path.c_str());
}

TEST_CASE("malformed bmm input is rejected with line numbers") {
    CHECK_THROWS_AS(from_bmm_string("BOM 2 2\n10\n01\n"), ParseError);
    CHECK_THROWS_AS(from_bmm_string("BMM 2\n10\n01\n"), ParseError);
    CHECK_THROWS_AS(from_bmm_string("BMM 2 2 9\n10\n01\n"), ParseError);
    CHECK_THROWS_AS(from_bmm_string("BMM 2 2\n10\n"), ParseError);
    CHECK_THROWS_AS(from_bmm_string("BMM 2 2\n102\n011\n"), ParseError);
    CHECK_THROWS_AS(from_bmm_string("BMM 2 2\n1x\n01\n"), ParseError);

    try {
        from_bmm_string("BMM 2 2\n10\n0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("matrix constructors reject bad shapes") {
    CHECK_THROWS_AS(BinaryMatrix(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatrix::from_rows({"10", "0"}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatrix::from_rows({"12"}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatrix(100000, 10000), TooLargeError);

    const Geometry g(GeomKind::EG, 3, 2);
    CHECK_THROWS_AS(build_incidence(g, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_incidence(g, 0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_incidence(g, 0, 1, 3), std::invalid_argument);
}

TEST_SUITE_END();
