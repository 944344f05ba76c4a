#include "fgsense/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "fgsense/errors.hpp"

namespace fgsense {

namespace {

using i128 = __int128;

constexpr std::int64_t kSubsetBudget = 100'000'000;
constexpr std::int64_t kMaxSearchCols = 64;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 checked_mul_i128(i128 a, i128 b) {
    if (a == 0 || b == 0) return 0;
    constexpr i128 kMax = i128(1) << 126;
    if (abs128(a) > kMax / abs128(b)) throw TooLargeError("exact elimination overflow");
    return a * b;
}

// Small exact fraction for kernel extraction; int64 payload, 128-bit products.
struct Frac {
    std::int64_t n = 0, d = 1;
    Frac() = default;
    Frac(std::int64_t num, std::int64_t den = 1) : n(num), d(den) { normalize(); }
    void normalize() {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n == 0) d = 1;
    }
    bool zero() const { return n == 0; }
};

Frac fmul(const Frac& a, const Frac& b) {
    const i128 n = i128(a.n) * b.n, d = i128(a.d) * b.d;
    const i128 lim = std::numeric_limits<std::int64_t>::max();
    if (abs128(n) > lim || d > lim) throw TooLargeError("fraction overflow");
    return Frac(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

Frac fsub(const Frac& a, const Frac& b) {
    const i128 n = i128(a.n) * b.d - i128(b.n) * a.d;
    const i128 d = i128(a.d) * b.d;
    const i128 lim = std::numeric_limits<std::int64_t>::max();
    if (abs128(n) > lim || d > lim) throw TooLargeError("fraction overflow");
    return Frac(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

Frac fdiv(const Frac& a, const Frac& b) { return fmul(a, Frac(b.d, b.n)); }

std::int64_t binom_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

// Columns of h restricted to `subset`, as an integer matrix (rows x |subset|).
std::vector<std::vector<std::int64_t>> submatrix_cols(const BinaryMatrix& h,
                                                      const std::vector<std::int64_t>& subset) {
    std::vector<std::vector<std::int64_t>> m(h.rows(), std::vector<std::int64_t>(subset.size()));
    for (std::int64_t i = 0; i < h.rows(); ++i)
        for (size_t c = 0; c < subset.size(); ++c) m[i][c] = h.get(i, subset[c]) ? 1 : 0;
    return m;
}

struct PairStats {
    std::int64_t gamma = 0;
    std::int64_t lambda = 0;
    bool coherence_defined = false;
    std::int64_t coh_dot = 0;
    std::int64_t coh_wprod = 0;
};

// One pass over all column pairs: lambda plus the exact coherence argmax.
PairStats pair_scan(const BinaryMatrix& h) {
    const BinaryMatrix t = h.transposed();  // row i of t = column i of h
    const std::int64_t n = h.cols();
    const std::int64_t wpr = t.wpr();
    std::vector<std::int64_t> w(n);
    for (std::int64_t i = 0; i < n; ++i) w[i] = t.row_weight(i);

    PairStats s;
    s.gamma = *std::min_element(w.begin(), w.end());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t* wi = t.row_words(i);
        for (std::int64_t j = i + 1; j < n; ++j) {
            const std::uint64_t* wj = t.row_words(j);
            std::int64_t dot = 0;
            for (std::int64_t k = 0; k < wpr; ++k) dot += std::popcount(wi[k] & wj[k]);
            if (dot == 0) continue;
            s.lambda = std::max(s.lambda, dot);
            const std::int64_t prod = w[i] * w[j];
            // dot/sqrt(prod) > best  <=>  dot^2 * best_prod > best_dot^2 * prod
            if (!s.coherence_defined ||
                i128(dot) * dot * s.coh_wprod > i128(s.coh_dot) * s.coh_dot * prod) {
                s.coherence_defined = true;
                s.coh_dot = dot;
                s.coh_wprod = prod;
            }
        }
    }
    return s;
}

std::int64_t rational_guaranteed_k(const Rational& bound) {
    // largest k with 2k < num/den, i.e. 2*k*den <= num-1
    if (bound.num <= 0) return 0;
    return (bound.num - 1) / (2 * bound.den);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

bool Rational::operator<(const Rational& o) const {
    return i128(num) * o.den < i128(o.num) * den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string ExactSearch::str() const {
    switch (status) {
        case Status::Found:
            return std::to_string(value);
        case Status::AboveLimit:
            return ">" + std::to_string(value);
        default:
            return "inf";
    }
}

int exact_rank(std::vector<std::vector<std::int64_t>> m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    std::vector<std::vector<i128>> a(rows, std::vector<i128>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];

    int rank = 0;
    i128 prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int sel = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[rank]);
        const i128 piv = a[rank][col];
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                a[i][j] =
                    (checked_mul_i128(a[i][j], piv) - checked_mul_i128(a[i][col], a[rank][j])) /
                    prev;
            a[i][col] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

std::vector<std::int64_t> exact_kernel_vector(
    const std::vector<std::vector<std::int64_t>>& cols_mat) {
    if (cols_mat.empty() || cols_mat[0].empty()) throw std::invalid_argument("empty matrix");
    const int rows = static_cast<int>(cols_mat.size());
    const int cols = static_cast<int>(cols_mat[0].size());
    std::vector<std::vector<Frac>> a(rows, std::vector<Frac>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = Frac(cols_mat[i][j]);

    // reduced row echelon over the rationals
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int sel = -1;
        for (int i = rank; i < rows; ++i)
            if (!a[i][col].zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[rank]);
        const Frac piv = a[rank][col];
        for (int j = col; j < cols; ++j) a[rank][j] = fdiv(a[rank][j], piv);
        for (int i = 0; i < rows; ++i) {
            if (i == rank || a[i][col].zero()) continue;
            const Frac c = a[i][col];
            for (int j = col; j < cols; ++j) a[i][j] = fsub(a[i][j], fmul(c, a[rank][j]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (cols - rank != 1) throw std::invalid_argument("kernel dimension is not one");

    int free_col = -1;
    for (int j = 0; j < cols; ++j)
        if (std::find(pivot_col.begin(), pivot_col.end(), j) == pivot_col.end()) free_col = j;

    std::vector<Frac> w(cols, Frac(0));
    w[free_col] = Frac(1);
    for (int i = 0; i < rank; ++i) w[pivot_col[i]] = fsub(Frac(0), a[i][free_col]);

    std::int64_t lcm = 1;
    for (const auto& f : w) lcm = std::lcm(lcm, f.d);
    std::vector<std::int64_t> out(cols);
    for (int j = 0; j < cols; ++j) out[j] = w[j].n * (lcm / w[j].d);
    std::int64_t g = 0;
    for (std::int64_t v : out) g = std::gcd(g, v < 0 ? -v : v);
    if (g > 1)
        for (auto& v : out) v /= g;
    return out;
}

std::pair<std::int64_t, std::int64_t> gamma_lambda(const BinaryMatrix& h) {
    if (h.cols() < 2) throw std::invalid_argument("need at least two columns");
    const PairStats s = pair_scan(h);
    return {s.gamma, s.lambda};
}

CoherenceResult coherence(const BinaryMatrix& h) {
    const auto w = h.col_weights();
    for (std::int64_t j = 0; j < h.cols(); ++j)
        if (w[j] == 0)
            throw std::invalid_argument("coherence is undefined with an all-zero column");
    if (h.cols() < 2) throw std::invalid_argument("need at least two columns");
    const PairStats s = pair_scan(h);
    CoherenceResult res{s.coherence_defined, 0.0, s.coh_dot, s.coh_wprod};
    if (s.coherence_defined)
        res.value = static_cast<double>(s.coh_dot) / std::sqrt(static_cast<double>(s.coh_wprod));
    return res;
}

namespace {

SparkBounds bounds_from_stats(const BinaryMatrix& h, const PairStats& s) {
    SparkBounds b;
    if (s.coherence_defined) {
        b.coherence_applicable = true;
        b.coherence_lambda = s.coh_dot;
        b.coherence_weight_product = s.coh_wprod;
        b.coherence_bound =
            1.0 + std::sqrt(static_cast<double>(s.coh_wprod)) / static_cast<double>(s.coh_dot);
    }
    if (s.gamma > 0 && s.lambda > 0) {
        b.ratio_applicable = true;
        b.gamma_lambda_bound = Rational(s.lambda + s.gamma, s.lambda);
        b.two_gamma_lambda_bound = Rational(2 * s.gamma, s.lambda);
    }
    if (h.meta() && h.meta()->rows_complete) {
        const auto& m = *h.meta();
        if (m.type == 1)
            b.type1_bound = 2 * containing_count(m.kind, m.r, m.q, m.mu2, m.mu2 - 1);
        else
            b.type2_bound = 2 * contained_count(m.kind, m.q, m.mu1 + 1, m.mu1);
    }

    std::int64_t best = 0;
    if (b.coherence_applicable) {
        // largest k with ((2k-1)*lambda)^2 < weight_product
        std::int64_t k = static_cast<std::int64_t>(
            (std::sqrt(static_cast<double>(b.coherence_weight_product)) / b.coherence_lambda +
             1.0) /
            2.0);
        auto ok = [&](std::int64_t kk) {
            if (kk < 1) return false;
            const i128 lhs = i128(2 * kk - 1) * b.coherence_lambda;
            return lhs * lhs < i128(b.coherence_weight_product);
        };
        while (ok(k + 1)) ++k;
        while (k >= 1 && !ok(k)) --k;
        best = std::max(best, k);
    }
    if (b.ratio_applicable) {
        best = std::max(best, rational_guaranteed_k(b.gamma_lambda_bound));
        best = std::max(best, rational_guaranteed_k(b.two_gamma_lambda_bound));
    }
    if (b.type1_bound) best = std::max(best, (*b.type1_bound - 1) / 2);
    if (b.type2_bound) best = std::max(best, (*b.type2_bound - 1) / 2);
    b.guaranteed_sparsity = best;
    return b;
}

}  // namespace

SparkBounds spark_lower_bounds(const BinaryMatrix& h) {
    if (h.cols() < 2) throw std::invalid_argument("need at least two columns");
    return bounds_from_stats(h, pair_scan(h));
}

std::optional<int> girth(const BinaryMatrix& h) {
    const std::int64_t m = h.rows(), n = h.cols();
    std::vector<std::vector<int>> row_adj(m), col_adj(n);
    for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            if (h.get(i, j)) {
                row_adj[i].push_back(static_cast<int>(j));
                col_adj[j].push_back(static_cast<int>(i));
            }

    // nodes: rows are 0..m-1, columns are m..m+n-1
    const std::int64_t total = m + n;
    std::vector<int> depth(total), parent(total), stamp(total, -1);
    std::vector<int> queue;
    queue.reserve(total);

    int best = std::numeric_limits<int>::max();
    const std::int64_t roots = std::min(m, n);
    const bool root_rows = m <= n;

    for (std::int64_t root_i = 0; root_i < roots && best > 4; ++root_i) {
        const int root = static_cast<int>(root_rows ? root_i : m + root_i);
        const int cur = static_cast<int>(root_i);
        queue.clear();
        queue.push_back(root);
        stamp[root] = cur;
        depth[root] = 0;
        parent[root] = -1;
        for (size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            const int d = depth[u];
            if (2 * d >= best) break;
            const bool u_is_row = u < m;
            const auto& adj = u_is_row ? row_adj[u] : col_adj[u - m];
            for (const int raw : adj) {
                const int w = u_is_row ? static_cast<int>(m) + raw : raw;
                if (stamp[w] != cur) {
                    stamp[w] = cur;
                    depth[w] = d + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (parent[u] != w && parent[w] != u) {
                    best = std::min(best, d + depth[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

ExactSearch exact_spark(const BinaryMatrix& h, int limit) {
    const std::int64_t n = h.cols();
    if (n > kMaxSearchCols) throw TooLargeError("exact spark search limited to 64 columns");
    if (limit < 1) throw std::invalid_argument("search limit must be >= 1");

    // all-zero column: a dependent set of size one
    for (std::int64_t j = 0; j < n; ++j)
        if (h.col_weight(j) == 0) return {ExactSearch::Status::Found, 1, {j}};

    std::vector<std::int64_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (exact_rank(submatrix_cols(h, all)) == n) return {ExactSearch::Status::Infinite, 0, {}};

    const int max_s = static_cast<int>(std::min<std::int64_t>(limit, n));
    std::int64_t budget = 0;
    for (int s = 2; s <= max_s; ++s) {
        budget += binom_capped(n, s, kSubsetBudget);
        if (budget > kSubsetBudget) throw TooLargeError("subset budget exceeded");
    }

    std::vector<std::int64_t> idx;
    for (int s = 2; s <= max_s; ++s) {
        idx.assign(s, 0);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            if (exact_rank(submatrix_cols(h, idx)) < s)
                return {ExactSearch::Status::Found, s, idx};
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {ExactSearch::Status::AboveLimit, max_s, {}};
}

ExactSearch stopping_distance(const BinaryMatrix& h, int limit) {
    const std::int64_t n = h.cols();
    if (n > kMaxSearchCols) throw TooLargeError("stopping search limited to 64 columns");
    if (limit < 1) throw std::invalid_argument("search limit must be >= 1");

    std::vector<std::uint64_t> rows(h.rows());
    for (std::int64_t i = 0; i < h.rows(); ++i) {
        std::uint64_t w = 0;
        for (std::int64_t j = 0; j < n; ++j)
            if (h.get(i, j)) w |= std::uint64_t(1) << j;
        rows[i] = w;
    }

    const int max_s = static_cast<int>(std::min<std::int64_t>(limit, n));
    std::int64_t budget = 0;
    for (int s = 1; s <= max_s; ++s) {
        budget += binom_capped(n, s, kSubsetBudget);
        if (budget > kSubsetBudget) throw TooLargeError("subset budget exceeded");
    }

    std::vector<std::int64_t> idx;
    for (int s = 1; s <= max_s; ++s) {
        idx.assign(s, 0);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::uint64_t mask = 0;
            for (std::int64_t j : idx) mask |= std::uint64_t(1) << j;
            bool stopping = true;
            for (const std::uint64_t r : rows)
                if (std::popcount(r & mask) == 1) {
                    stopping = false;
                    break;
                }
            if (stopping) return {ExactSearch::Status::Found, s, idx};
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    if (max_s >= n) return {ExactSearch::Status::Infinite, 0, {}};
    return {ExactSearch::Status::AboveLimit, max_s, {}};
}

AnalysisReport analyze(const BinaryMatrix& h, int spark_limit, int stopping_limit) {
    AnalysisReport r;
    r.rows = h.rows();
    r.cols = h.cols();

    const auto cw = h.col_weights();
    const bool has_zero_col = std::find(cw.begin(), cw.end(), 0) != cw.end();

    const PairStats s = h.cols() >= 2 ? pair_scan(h) : PairStats{};
    r.gamma = h.cols() >= 2 ? s.gamma : cw[0];
    r.lambda = s.lambda;
    const auto rw = h.row_weights();
    r.rho = *std::max_element(rw.begin(), rw.end());

    if (!has_zero_col && s.coherence_defined) {
        r.coherence_defined = true;
        r.coherence_lambda = s.coh_dot;
        r.coherence_weight_product = s.coh_wprod;
        r.coherence =
            static_cast<double>(s.coh_dot) / std::sqrt(static_cast<double>(s.coh_wprod));
    }

    r.girth = girth(h);
    if (h.cols() >= 2) r.bounds = bounds_from_stats(h, s);
    if (spark_limit > 0) r.spark = exact_spark(h, spark_limit);
    if (stopping_limit > 0) r.stopping = stopping_distance(h, stopping_limit);
    return r;
}

namespace {

std::string join_indices(const std::vector<std::int64_t>& v) {
    if (v.empty()) return "na";
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(v[i]);
    }
    return s;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string AnalysisReport::render() const {
    std::string out;
    auto kv = [&out](const std::string& k, const std::string& v) { out += k + "=" + v + "\n"; };
    kv("rows", std::to_string(rows));
    kv("cols", std::to_string(cols));
    kv("gamma", std::to_string(gamma));
    kv("lambda", std::to_string(lambda));
    kv("rho", std::to_string(rho));
    kv("coherence", coherence_defined ? fmt_double(coherence) : "0");
    kv("coherence_defined", coherence_defined ? "1" : "0");
    kv("coherence_pair_dot", std::to_string(coherence_lambda));
    kv("coherence_pair_weight_product", std::to_string(coherence_weight_product));
    kv("girth", girth ? std::to_string(*girth) : "inf");
    kv("bound_coherence", bounds.coherence_applicable ? fmt_double(bounds.coherence_bound) : "na");
    kv("bound_gamma_lambda", bounds.ratio_applicable ? bounds.gamma_lambda_bound.str() : "na");
    kv("bound_two_gamma_lambda",
       bounds.ratio_applicable ? bounds.two_gamma_lambda_bound.str() : "na");
    kv("bound_type1", bounds.type1_bound ? std::to_string(*bounds.type1_bound) : "na");
    kv("bound_type2", bounds.type2_bound ? std::to_string(*bounds.type2_bound) : "na");
    kv("k_guaranteed", std::to_string(bounds.guaranteed_sparsity));
    kv("spark", spark ? spark->str() : "na");
    kv("spark_certificate",
       spark && spark->found() ? join_indices(spark->certificate) : "na");
    kv("stopping_distance", stopping ? stopping->str() : "na");
    kv("stopping_certificate",
       stopping && stopping->found() ? join_indices(stopping->certificate) : "na");
    return out;
}

BoundChain bound_chain(GeomKind kind, int r, std::int64_t q, int mu1, int mu2, int type) {
    if (type == 1) {
        if (!(1 <= mu1 && mu1 < mu2 && mu2 < r))
            throw std::invalid_argument("type-1 chain needs 1 <= mu1 < mu2 < r");
    } else if (type == 2) {
        if (!(0 <= mu1 && mu1 < mu2 && mu2 < r))
            throw std::invalid_argument("type-2 chain needs 0 <= mu1 < mu2 < r");
    } else {
        throw std::invalid_argument("type must be 1 or 2");
    }

    BoundChain c;
    if (type == 1) {
        const std::int64_t u = containing_count(kind, r, q, mu2, mu2 - 1);
        const std::int64_t g = containing_count(kind, r, q, mu2, mu1);
        const std::int64_t l = containing_count(kind, r, q, mu2, mu1 + 1);
        c.strongest = Rational(2 * u);
        c.middle = Rational(2 * g, l);
        c.weakest = Rational(1 + u);
        c.equality_expected = mu2 == mu1 + 1;
    } else {
        const std::int64_t u = contained_count(kind, q, mu1 + 1, mu1);
        const std::int64_t g = contained_count(kind, q, mu2, mu1);
        const std::int64_t l = contained_count(kind, q, mu2 - 1, mu1);
        c.strongest = Rational(2 * u);
        c.middle = Rational(2 * g, l);
        c.weakest = Rational(1 + u);
        c.equality_expected = mu2 == mu1 + 1 || (kind == GeomKind::EG && mu1 == 0);
    }
    c.first_ge_second = c.strongest >= c.middle;
    c.first_eq_second = c.strongest == c.middle;
    c.second_gt_third = c.middle > c.weakest;
    return c;
}

}  // namespace fgsense
