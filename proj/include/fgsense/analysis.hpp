#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgsense/matrix.hpp"

namespace fgsense {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (gcd 1, denominator positive). Comparisons cross-multiply in 128 bits.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }
    std::string str() const;
};

/// Rank over the rationals of an integer matrix, by fraction-free (Bareiss)
/// elimination in 128-bit integers. Never touches floating point.
int exact_rank(std::vector<std::vector<std::int64_t>> m);

/// For a set of rationally dependent columns with a one-dimensional kernel
/// (e.g. a minimal dependent set), an integer vector w != 0 with cols * w = 0,
/// scaled to coprime integers. Throws std::invalid_argument if the kernel
/// dimension is not 1.
std::vector<std::int64_t> exact_kernel_vector(const std::vector<std::vector<std::int64_t>>& cols);

/// Exact search outcome: a value with a witness column set, "above the search
/// limit", or "infinite" (no witness exists at any size).
struct ExactSearch {
    enum class Status { Found, AboveLimit, Infinite } status;
    int value = 0;  // meaningful for Found; for AboveLimit holds the limit
    std::vector<std::int64_t> certificate;

    bool found() const { return status == Status::Found; }
    std::string str() const;
};

struct SparkBounds {
    // 1 + 1/mu(H): mu = lambda_best / sqrt(weight_product); kept in exact
    // form (coherence_lambda, coherence_weight_product) plus a double.
    bool coherence_applicable = false;
    double coherence_bound = 0.0;
    std::int64_t coherence_lambda = 0;
    std::int64_t coherence_weight_product = 0;

    bool ratio_applicable = false;  // lambda > 0
    Rational gamma_lambda_bound;      // 1 + gamma/lambda
    Rational two_gamma_lambda_bound;  // 2*gamma/lambda

    std::optional<std::int64_t> type1_bound;  // 2*A(mu2, mu2-1)
    std::optional<std::int64_t> type2_bound;  // 2*N(mu1+1, mu1)

    // Largest k with 2k < best applicable bound; 0 if none applies.
    std::int64_t guaranteed_sparsity = 0;
};

struct AnalysisReport {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::int64_t gamma = 0;   // minimum column weight
    std::int64_t lambda = 0;  // maximum pairwise column inner product
    std::int64_t rho = 0;     // maximum row weight

    // max over column pairs of <a_i,a_j> / (|a_i||a_j|), exact argmax; zero
    // with coherence_defined=false when all pairs are orthogonal.
    bool coherence_defined = false;
    double coherence = 0.0;
    std::int64_t coherence_lambda = 0;
    std::int64_t coherence_weight_product = 0;

    std::optional<int> girth;  // nullopt = acyclic Tanner graph

    SparkBounds bounds;

    std::optional<ExactSearch> spark;
    std::optional<ExactSearch> stopping;

    /// Stable key=value rendering for the CLI.
    std::string render() const;
};

/// gamma (min column weight) and lambda (max pairwise inner product) by
/// column popcounts. Requires at least 2 columns.
std::pair<std::int64_t, std::int64_t> gamma_lambda(const BinaryMatrix& h);

struct CoherenceResult {
    bool defined;  // false iff all column pairs are orthogonal
    double value;
    std::int64_t lambda;          // inner product of the extremal pair
    std::int64_t weight_product;  // product of the two column weights
};

/// Coherence of a binary matrix; throws std::invalid_argument on an all-zero
/// column. The argmax is decided exactly (cross-multiplied squares).
CoherenceResult coherence(const BinaryMatrix& h);

/// All spark lower bounds that apply to h, plus the guaranteed sparsity.
SparkBounds spark_lower_bounds(const BinaryMatrix& h);

/// Shortest cycle length of the bipartite Tanner graph (breadth-first search
/// from every node of the smaller side); nullopt if the graph is a forest.
std::optional<int> girth(const BinaryMatrix& h);

/// Smallest number of rationally dependent columns, searched exhaustively by
/// size up to `limit` (lexicographic subsets, first hit wins). Returns
/// Infinite when all columns are independent, AboveLimit otherwise. Subset
/// budget is guarded at 10^8.
ExactSearch exact_spark(const BinaryMatrix& h, int limit);

/// Smallest nonempty column set whose restriction has no row of weight one.
ExactSearch stopping_distance(const BinaryMatrix& h, int limit);

/// Full structural report. Exact searches run only when limits > 0.
AnalysisReport analyze(const BinaryMatrix& h, int spark_limit = 0, int stopping_limit = 0);

struct BoundChain {
    Rational strongest;  // 2*A(mu2,mu2-1) or 2*N(mu1+1,mu1)
    Rational middle;     // 2*gamma/lambda in closed form
    Rational weakest;    // 1 + A(mu2,mu2-1) or 1 + N(mu1+1,mu1)
    bool first_ge_second = false;
    bool first_eq_second = false;
    bool second_gt_third = false;
    bool equality_expected = false;  // the stated condition for first == second
};

/// The ordered chain of the three structural lower bounds for the type-1
/// (needs mu1 >= 1) or type-2 (mu1 >= 0) matrix of FG(r,q).
BoundChain bound_chain(GeomKind kind, int r, std::int64_t q, int mu1, int mu2, int type);

}  // namespace fgsense
