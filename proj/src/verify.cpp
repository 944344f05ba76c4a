#include "fgsense/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fgsense/analysis.hpp"
#include "fgsense/experiment.hpp"
#include "fgsense/field.hpp"
#include "fgsense/geometry.hpp"
#include "fgsense/matrix.hpp"
#include "fgsense/recovery.hpp"

namespace fgsense {

namespace {

class Suite {
public:
    explicit Suite(std::string name) { report_.suite = std::move(name); }

    void check(const std::string& name, bool ok, const std::string& observed) {
        report_.checks.push_back(CheckResult{name, ok, observed});
    }
    void check_eq(const std::string& name, std::int64_t got, std::int64_t want) {
        check(name, got == want,
              std::to_string(got) + (got == want ? " == " : " != ") + std::to_string(want));
    }

    SuiteReport take() { return std::move(report_); }

private:
    SuiteReport report_;
};

const std::vector<std::int64_t> kFieldOrders{2, 3, 4, 5, 7, 8, 9, 16, 32};
const std::vector<std::int64_t> kGridOrders{2, 3, 4, 5, 7, 8};

SuiteReport suite_fields() {
    Suite s("fields");
    for (const std::int64_t q : kFieldOrders) {
        std::int64_t p;
        int m;
        factor_prime_power(q, p, m);
        const Field f(p, m);
        const Field f2(p, m);
        s.check("gf" + std::to_string(q) + ".deterministic_modulus", f.modulus() == f2.modulus(),
                "rebuilt modulus matches");
        s.check_eq("gf" + std::to_string(q) + ".element_count",
                   static_cast<std::int64_t>(f.enumerate().size()), q);

        bool identities = true;
        for (Elt a = 0; a < q; ++a) {
            if (f.add(a, f.zero()) != a || f.mul(a, f.one()) != a) identities = false;
            if (f.add(a, f.neg(a)) != f.zero()) identities = false;
            if (a != 0 && f.mul(a, f.inv(a)) != f.one()) identities = false;
        }
        s.check("gf" + std::to_string(q) + ".identities", identities,
                "0/1/neg/inv behave on all elements");

        bool fermat = true;
        for (Elt a = 1; a < q; ++a) {
            Elt acc = f.one();
            for (std::int64_t e = 0; e < q - 1; ++e) acc = f.mul(acc, a);
            if (acc != f.one()) fermat = false;
        }
        s.check("gf" + std::to_string(q) + ".fermat", fermat, "a^(q-1) = 1 for a != 0");

        auto axiom_triple = [&](Elt a, Elt b, Elt c) {
            if (f.add(a, b) != f.add(b, a)) return false;
            if (f.mul(a, b) != f.mul(b, a)) return false;
            if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return false;
            if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return false;
            if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
            return true;
        };
        bool axioms = true;
        if (q <= 9) {
            for (Elt a = 0; a < q && axioms; ++a)
                for (Elt b = 0; b < q && axioms; ++b)
                    for (Elt c = 0; c < q && axioms; ++c) axioms = axiom_triple(a, b, c);
            s.check("gf" + std::to_string(q) + ".axioms_exhaustive", axioms, "all triples");
        } else {
            RngStream rng(7, "field-axioms", static_cast<std::uint64_t>(q));
            for (int i = 0; i < 10'000 && axioms; ++i)
                axioms = axiom_triple(static_cast<Elt>(rng.next_below(q)),
                                      static_cast<Elt>(rng.next_below(q)),
                                      static_cast<Elt>(rng.next_below(q)));
            s.check("gf" + std::to_string(q) + ".axioms_random", axioms, "10^4 random triples");
        }
    }
    return s.take();
}

SuiteReport suite_small_geometries() {
    Suite s("small-geometries");
    for (const GeomKind kind : {GeomKind::EG, GeomKind::PG}) {
        const std::string kn = kind == GeomKind::EG ? "eg" : "pg";
        for (int r = 2; r <= 4; ++r) {
            for (const std::int64_t q : kGridOrders) {
                const Geometry g(kind, r, q);
                const std::string cell = kn + std::to_string(r) + "q" + std::to_string(q);
                s.check_eq(cell + ".points", static_cast<std::int64_t>(g.points().size()),
                           point_count(kind, r, q));
                for (int mu = 0; mu <= r - 1; ++mu) {
                    const auto& fl = g.flats(mu);
                    s.check_eq(cell + ".flats_mu" + std::to_string(mu),
                               static_cast<std::int64_t>(fl.size()), flat_count(kind, r, q, mu));
                }
                // double counting over all (mu1, mu2) pairs kept under 1e6 ones
                for (int mu2 = 1; mu2 <= r - 1; ++mu2)
                    for (int mu1 = 0; mu1 < mu2; ++mu1) {
                        const std::int64_t expected =
                            flat_count(kind, r, q, mu1) * containing_count(kind, r, q, mu2, mu1);
                        if (expected > 1'000'000) continue;
                        std::int64_t total = 0;
                        for (const auto& f : g.flats(mu2))
                            total += static_cast<std::int64_t>(g.flats_within(f, mu1).size());
                        s.check_eq(cell + ".incidences_" + std::to_string(mu2) + "_" +
                                       std::to_string(mu1),
                                   total, expected);
                    }
            }
        }
    }

    // EG bundles partition the point set
    for (const auto& [r, q, mu] : std::vector<std::tuple<int, std::int64_t, int>>{
             {2, 2, 1}, {2, 3, 1}, {3, 2, 1}, {3, 2, 2}, {4, 2, 3}, {2, 16, 1}, {2, 32, 1}}) {
        const Geometry g(GeomKind::EG, r, q);
        const auto bundles = g.parallel_bundles(mu);
        std::int64_t per_bundle = 1;
        for (int i = 0; i < r - mu; ++i) per_bundle *= q;
        bool sizes_ok = true, partition_ok = true;
        for (const auto& b : bundles) {
            if (static_cast<std::int64_t>(b.members.size()) != per_bundle) sizes_ok = false;
            std::set<std::int64_t> seen;
            for (const std::int64_t fi : b.members)
                for (const std::int64_t p : g.flat_points(g.flats(mu)[fi])) seen.insert(p);
            if (static_cast<std::int64_t>(seen.size()) != g.num_points()) partition_ok = false;
        }
        const std::string cell =
            "eg" + std::to_string(r) + "q" + std::to_string(q) + "mu" + std::to_string(mu);
        s.check_eq(cell + ".bundle_count", static_cast<std::int64_t>(bundles.size()),
                   flat_count(GeomKind::EG, r, q, mu) / per_bundle);
        s.check(cell + ".bundle_sizes", sizes_ok, std::to_string(per_bundle) + " flats each");
        s.check(cell + ".bundles_partition_points", partition_ok,
                "every bundle covers each point once");
    }

    // existence lemmas, brute force at mu1=0, mu2=1
    for (const GeomKind kind : {GeomKind::EG, GeomKind::PG}) {
        for (const std::int64_t q : {std::int64_t(2), std::int64_t(3)}) {
            const Geometry g(kind, 2, q);
            const std::string cell =
                std::string(kind == GeomKind::EG ? "eg" : "pg") + "2q" + std::to_string(q);
            const auto& pts = g.flats(0);
            const auto& lines = g.flats(1);

            // distinguishing (mu2-1)-flats for small sets of mu1-flats
            const std::int64_t cap1 = containing_count(kind, 2, q, 1, 0);
            bool lemma1 = true;
            const std::int64_t np = static_cast<std::int64_t>(pts.size());
            std::vector<std::int64_t> subset;
            auto rec1 = [&](auto&& self, std::int64_t start) -> void {
                if (!lemma1) return;
                const std::int64_t l = static_cast<std::int64_t>(subset.size());
                if (l >= 1 && l <= cap1) {
                    for (const std::int64_t j : subset) {
                        bool exists = false;
                        for (const auto& f : pts) {  // candidate (mu2-1)-flats: 0-flats
                            if (!g.contains(f, pts[j])) continue;
                            bool others_out = true;
                            for (const std::int64_t i : subset)
                                if (i != j && g.contains(f, pts[i])) others_out = false;
                            if (others_out) {
                                exists = true;
                                break;
                            }
                        }
                        if (!exists) lemma1 = false;
                    }
                }
                if (l == cap1) return;
                for (std::int64_t nxt = start; nxt < np; ++nxt) {
                    subset.push_back(nxt);
                    self(self, nxt + 1);
                    subset.pop_back();
                }
            };
            rec1(rec1, 0);
            s.check(cell + ".distinguishing_subflat_exists", lemma1,
                    "all point sets up to size " + std::to_string(cap1));

            const std::int64_t cap2 = contained_count(kind, q, 1, 0);
            bool lemma2 = true;
            const std::int64_t nl = static_cast<std::int64_t>(lines.size());
            subset.clear();
            auto rec2 = [&](auto&& self, std::int64_t start) -> void {
                if (!lemma2) return;
                const std::int64_t l = static_cast<std::int64_t>(subset.size());
                if (l >= 1 && l <= cap2) {
                    for (const std::int64_t j : subset) {
                        bool exists = false;
                        for (const auto& f : lines) {  // candidate (mu1+1)-flats: lines
                            if (!g.contains(lines[j], f)) continue;
                            bool others_out = true;
                            for (const std::int64_t i : subset)
                                if (i != j && g.contains(lines[i], f)) others_out = false;
                            if (others_out) {
                                exists = true;
                                break;
                            }
                        }
                        if (!exists) lemma2 = false;
                    }
                }
                if (l == cap2) return;
                for (std::int64_t nxt = start; nxt < nl; ++nxt) {
                    subset.push_back(nxt);
                    self(self, nxt + 1);
                    subset.pop_back();
                }
            };
            rec2(rec2, 0);
            s.check(cell + ".distinguishing_superflat_exists", lemma2,
                    "all line sets up to size " + std::to_string(cap2));
        }
    }
    return s.take();
}

SuiteReport suite_bounds_chain() {
    Suite s("bounds-chain");
    for (const GeomKind kind : {GeomKind::EG, GeomKind::PG}) {
        const std::string kn = kind == GeomKind::EG ? "eg" : "pg";
        for (int type = 1; type <= 2; ++type) {
            std::int64_t combos = 0;
            bool ok = true;
            std::string failure;
            for (int r = 2; r <= 4; ++r)
                for (const std::int64_t q : kGridOrders)
                    for (int mu2 = 1; mu2 < r; ++mu2)
                        for (int mu1 = type == 1 ? 1 : 0; mu1 < mu2; ++mu1) {
                            const BoundChain c = bound_chain(kind, r, q, mu1, mu2, type);
                            ++combos;
                            const bool good = c.first_ge_second && c.second_gt_third &&
                                              c.first_eq_second == c.equality_expected;
                            if (!good && ok) {
                                ok = false;
                                std::ostringstream os;
                                os << "r=" << r << " q=" << q << " mu1=" << mu1
                                   << " mu2=" << mu2 << ": " << c.strongest.str() << " vs "
                                   << c.middle.str() << " vs " << c.weakest.str();
                                failure = os.str();
                            }
                        }
            s.check(kn + ".type" + std::to_string(type) + "_chain", ok,
                    ok ? std::to_string(combos) + " parameter combinations" : failure);
        }
    }
    return s.take();
}

BinaryMatrix k4_incidence() {
    return BinaryMatrix::from_rows({
        "111000",
        "100110",
        "010101",
        "001011",
    });
}

BinaryMatrix hamming_matrix(int m) {
    const std::int64_t n = (std::int64_t(1) << m) - 1;
    BinaryMatrix h(m, n);
    for (std::int64_t j = 1; j <= n; ++j)
        for (int i = 0; i < m; ++i)
            if ((j >> i) & 1) h.set(i, j - 1);
    return h;
}

BinaryMatrix random_binary_matrix(std::int64_t rows, std::int64_t cols, RngStream& rng) {
    for (;;) {
        BinaryMatrix h(rows, cols);
        for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j)
                if (rng.next_u64() & 1) h.set(i, j);
        bool zero_col = false;
        for (std::int64_t j = 0; j < cols; ++j)
            if (h.col_weight(j) == 0) zero_col = true;
        if (!zero_col) return h;
    }
}

// Appendix battery against one matrix: unique recovery strictly below half
// the spark, and a certificate-built counterexample at k = ceil(spark/2).
bool oracle_battery(const BinaryMatrix& h, std::uint64_t seed, std::string* why) {
    const ExactSearch spark = exact_spark(h, 7);
    if (!spark.found()) {
        *why = "spark search did not terminate";
        return false;
    }
    const Eigen::MatrixXd a = to_real(h);

    for (int k = 1; 2 * k < spark.value && k <= 3; ++k) {
        for (int t = 0; t < 20; ++t) {
            RngStream rng(seed, "oracle-signal", static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(t));
            const SparseSignal sig = gen_sparse_signal(h.cols(), k, rng);
            const Eigen::VectorXd x = sig.dense();
            const OracleResult res = l0_oracle(a, a * x, k);
            if (!res.found || res.sparsity != k || !res.unique ||
                res.supports[0] != sig.support) {
                *why = "unique recovery failed at k=" + std::to_string(k);
                return false;
            }
            if ((res.solutions[0] - x).norm() > 1e-8 * x.norm()) {
                *why = "recovered values drifted at k=" + std::to_string(k);
                return false;
            }
        }
    }

    // counterexample from the dependency over the spark certificate
    const int k0 = (spark.value + 1) / 2;
    const auto w = exact_kernel_vector([&] {
        std::vector<std::vector<std::int64_t>> cols(
            h.rows(), std::vector<std::int64_t>(spark.certificate.size()));
        for (std::int64_t i = 0; i < h.rows(); ++i)
            for (size_t c = 0; c < spark.certificate.size(); ++c)
                cols[i][c] = h.get(i, spark.certificate[c]) ? 1 : 0;
        return cols;
    }());
    const int half = spark.value / 2;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(h.cols());
    std::vector<std::int64_t> x_support;
    for (size_t c = half; c < spark.certificate.size(); ++c) {
        x[spark.certificate[c]] = -static_cast<double>(w[c]);
        x_support.push_back(spark.certificate[c]);
    }
    const OracleResult res = l0_oracle(a, a * x, k0);
    if (!res.found) {
        *why = "counterexample measurement had no sparse solution";
        return false;
    }
    const bool defeated =
        res.sparsity < k0 || res.supports.size() > 1 || res.supports[0] != x_support;
    if (!defeated) {
        *why = "counterexample was uniquely recovered";
        return false;
    }
    return true;
}

SuiteReport suite_oracle() {
    Suite s("oracle");
    std::string why;
    const bool k4_ok = oracle_battery(k4_incidence(), 11, &why);
    s.check("k4.battery", k4_ok, k4_ok ? "ok" : why);
    why.clear();
    const bool ham_ok = oracle_battery(hamming_matrix(3), 12, &why);
    s.check("hamming7.battery", ham_ok, ham_ok ? "ok" : why);
    bool all = true;
    std::string first_why;
    RngStream mgen(99, "oracle-matrices");
    for (int i = 0; i < 50 && all; ++i) {
        const BinaryMatrix h = random_binary_matrix(6, 10, mgen);
        why.clear();
        if (!oracle_battery(h, 1000 + i, &why)) {
            all = false;
            first_why = "matrix " + std::to_string(i) + ": " + why;
        }
    }
    s.check("random_6x10.battery", all, all ? "50 matrices" : first_why);
    return s.take();
}

SuiteReport suite_paper_values() {
    Suite s("paper-values");

    {  // EG(4,2), mu1=1, mu2=3
        const Geometry g(GeomKind::EG, 4, 2);
        s.check_eq("eg4q2.points", g.num_points(), 16);
        s.check_eq("eg4q2.flats3", static_cast<std::int64_t>(g.flats(3).size()), 30);
        s.check_eq("eg4q2.flats1", static_cast<std::int64_t>(g.flats(1).size()), 120);
        const BinaryMatrix h = build_incidence(g, 1, 3, 1);
        const auto rw = h.row_weights();
        const auto cw = h.col_weights();
        s.check("eg4q2.regular",
                std::all_of(rw.begin(), rw.end(), [](std::int64_t w) { return w == 28; }) &&
                    std::all_of(cw.begin(), cw.end(), [](std::int64_t w) { return w == 7; }),
                "(7,28)-regular 30x120");
        const auto gi = girth(h);
        s.check("eg4q2.girth", gi && *gi == 4, gi ? std::to_string(*gi) : "inf");
        const auto b = spark_lower_bounds(h);
        s.check("eg4q2.type1_bound", b.type1_bound && *b.type1_bound == 6,
                b.type1_bound ? std::to_string(*b.type1_bound) : "na");
        const auto [gamma, lambda] = gamma_lambda(h);
        s.check_eq("eg4q2.gamma", gamma, 7);
        s.check_eq("eg4q2.lambda", lambda, containing_count(GeomKind::EG, 4, 2, 3, 2));
        const auto coh = coherence(h);
        s.check("eg4q2.coherence_le_lambda_over_gamma",
                coh.value <= static_cast<double>(lambda) / gamma + 1e-12,
                "mu(H) within lambda/gamma");
    }

    {  // PG(3,4), mu1=0, mu2=1, type II
        const Geometry g(GeomKind::PG, 3, 4);
        s.check_eq("pg3q4.points", g.num_points(), 85);
        s.check_eq("pg3q4.lines", static_cast<std::int64_t>(g.flats(1).size()), 357);
        s.check_eq("pg3q4.contained", contained_count(GeomKind::PG, 4, 1, 0), 5);
        s.check_eq("pg3q4.containing", containing_count(GeomKind::PG, 3, 4, 1, 0), 21);
        const BinaryMatrix ht = build_incidence(g, 0, 1, 2);
        s.check("pg3q4.shape", ht.rows() == 85 && ht.cols() == 357, "85x357");
        const auto rw = ht.row_weights();
        const auto cw = ht.col_weights();
        s.check("pg3q4.regular",
                std::all_of(rw.begin(), rw.end(), [](std::int64_t w) { return w == 21; }) &&
                    std::all_of(cw.begin(), cw.end(), [](std::int64_t w) { return w == 5; }),
                "(5,21)-regular");
        const auto gi = girth(ht);
        s.check("pg3q4.girth", gi && *gi == 6, gi ? std::to_string(*gi) : "inf");
        const auto b = spark_lower_bounds(ht);
        s.check("pg3q4.type2_bound", b.type2_bound && *b.type2_bound == 10,
                b.type2_bound ? std::to_string(*b.type2_bound) : "na");
    }

    {  // EG(3,7), mu1=0, mu2=1, type II
        const Geometry g(GeomKind::EG, 3, 7);
        s.check_eq("eg3q7.points", g.num_points(), 343);
        s.check_eq("eg3q7.lines", static_cast<std::int64_t>(g.flats(1).size()), 2793);
        const BinaryMatrix ht = build_incidence(g, 0, 1, 2);
        s.check("eg3q7.shape", ht.rows() == 343 && ht.cols() == 2793, "343x2793");
        const auto rw = ht.row_weights();
        const auto cw = ht.col_weights();
        s.check("eg3q7.regular",
                std::all_of(rw.begin(), rw.end(), [](std::int64_t w) { return w == 57; }) &&
                    std::all_of(cw.begin(), cw.end(), [](std::int64_t w) { return w == 7; }),
                "(7,57)-regular");
        const auto gi = girth(ht);
        s.check("eg3q7.girth", gi && *gi == 6, gi ? std::to_string(*gi) : "inf");
        const auto b = spark_lower_bounds(ht);
        s.check("eg3q7.type2_bound", b.type2_bound && *b.type2_bound == 14,
                b.type2_bound ? std::to_string(*b.type2_bound) : "na");
    }

    {  // EG(3,8), mu1=1, mu2=2, type I
        const Geometry g(GeomKind::EG, 3, 8);
        s.check_eq("eg3q8.flats2", static_cast<std::int64_t>(g.flats(2).size()), 584);
        s.check_eq("eg3q8.flats1", static_cast<std::int64_t>(g.flats(1).size()), 4672);
        s.check_eq("eg3q8.contained", contained_count(GeomKind::EG, 8, 2, 1), 72);
        s.check_eq("eg3q8.containing", containing_count(GeomKind::EG, 3, 8, 2, 1), 9);
        const BinaryMatrix h = build_incidence(g, 1, 2, 1);
        s.check("eg3q8.shape", h.rows() == 584 && h.cols() == 4672, "584x4672");
        const auto rw = h.row_weights();
        const auto cw = h.col_weights();
        s.check("eg3q8.regular",
                std::all_of(rw.begin(), rw.end(), [](std::int64_t w) { return w == 72; }) &&
                    std::all_of(cw.begin(), cw.end(), [](std::int64_t w) { return w == 9; }),
                "(9,72)-regular");
        const auto gi = girth(h);
        s.check("eg3q8.girth", gi && *gi == 6, gi ? std::to_string(*gi) : "inf");
        const auto b = spark_lower_bounds(h);
        s.check("eg3q8.type1_bound", b.type1_bound && *b.type1_bound == 18,
                b.type1_bound ? std::to_string(*b.type1_bound) : "na");
    }

    {  // EG(2,16) parallel bundles and submatrices
        const Geometry g(GeomKind::EG, 2, 16);
        s.check_eq("eg2q16.points", g.num_points(), 256);
        s.check_eq("eg2q16.lines", static_cast<std::int64_t>(g.flats(1).size()), 272);
        const auto bundles = g.parallel_bundles(1);
        s.check("eg2q16.bundles",
                bundles.size() == 17 &&
                    std::all_of(bundles.begin(), bundles.end(),
                                [](const ParallelBundle& b) { return b.members.size() == 16; }),
                "17 bundles of 16 lines");
        const BinaryMatrix h = build_incidence(g, 0, 1, 1);
        bool shapes = true;
        for (const std::int64_t c : {4, 5, 6, 7}) {
            const BinaryMatrix sub = select_row_bundles(h, c);
            if (sub.rows() != 16 * c || sub.cols() != 256) shapes = false;
            const auto cw = sub.col_weights();
            if (!std::all_of(cw.begin(), cw.end(), [&](std::int64_t w) { return w == c; }))
                shapes = false;
        }
        s.check("eg2q16.bundle_submatrices", shapes,
                "64..112 x 256, uniform column weights 4..7");
    }

    {  // EG(2,32) bundles, row selection, column deletion
        const Geometry g(GeomKind::EG, 2, 32);
        s.check_eq("eg2q32.points", g.num_points(), 1024);
        s.check_eq("eg2q32.lines", static_cast<std::int64_t>(g.flats(1).size()), 1056);
        const auto bundles = g.parallel_bundles(1);
        s.check("eg2q32.bundles",
                bundles.size() == 33 &&
                    std::all_of(bundles.begin(), bundles.end(),
                                [](const ParallelBundle& b) { return b.members.size() == 32; }),
                "33 bundles of 32 lines");
        const BinaryMatrix h = build_incidence(g, 0, 1, 1);
        const BinaryMatrix hb = select_row_bundles(h, 10);
        s.check("eg2q32.hb_shape", hb.rows() == 320 && hb.cols() == 1024, "320x1024");
        bool deletions = true;
        for (const std::int64_t j : {std::int64_t(4), std::int64_t(8), std::int64_t(12)}) {
            const BinaryMatrix d = delete_covered_columns(g, hb, bundles[10], j);
            if (d.rows() != 320 || d.cols() != 1024 - 32 * j) deletions = false;
            const auto cw = d.col_weights();
            if (!std::all_of(cw.begin(), cw.end(), [](std::int64_t w) { return w == 10; }))
                deletions = false;
        }
        s.check("eg2q32.column_deletion", deletions,
                "320x896/768/640, column weight stays 10");
    }

    {  // complete graph on 4 vertices
        const BinaryMatrix k4 = k4_incidence();
        const auto [gamma, lambda] = gamma_lambda(k4);
        s.check_eq("k4.gamma", gamma, 2);
        s.check_eq("k4.lambda", lambda, 1);
        const auto spark = exact_spark(k4, 7);
        s.check("k4.spark", spark.found() && spark.value == 4, spark.str());
        const auto stop = stopping_distance(k4, 7);
        s.check("k4.stopping", stop.found() && stop.value == 3, stop.str());
    }

    {  // Hamming 3x7
        const BinaryMatrix h = hamming_matrix(3);
        const auto spark = exact_spark(h, 7);
        const auto stop = stopping_distance(h, 7);
        s.check("hamming7.spark", spark.found() && spark.value == 3, spark.str());
        s.check("hamming7.stopping", stop.found() && stop.value == 3, stop.str());
    }
    return s.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"fields", "small-geometries", "bounds-chain",
                                                "oracle", "paper-values"};
    return names;
}

SuiteReport run_suite(const std::string& name) {
    if (name == "fields") return suite_fields();
    if (name == "small-geometries") return suite_small_geometries();
    if (name == "bounds-chain") return suite_bounds_chain();
    if (name == "oracle") return suite_oracle();
    if (name == "paper-values") return suite_paper_values();
    throw std::invalid_argument("unknown suite: " + name);
}

std::string render(const SuiteReport& report) {
    std::string out;
    for (const auto& c : report.checks)
        out += std::string(c.passed ? "[ok]   " : "[FAIL] ") + report.suite + "." + c.name +
               ": " + c.observed + "\n";
    out += report.suite + ": " +
           (report.all_passed() ? "all checks passed" : "CHECKS FAILED") + "\n";
    return out;
}

}  // namespace fgsense
