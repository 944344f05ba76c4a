#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fgsense/analysis.hpp"
#include "fgsense/errors.hpp"
#include "fgsense/experiment.hpp"
#include "fgsense/field.hpp"
#include "fgsense/geometry.hpp"
#include "fgsense/matrix.hpp"
#include "fgsense/recovery.hpp"
#include "fgsense/verify.hpp"

namespace {

using namespace fgsense;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct GeometryFlags {
    std::string geom;
    int r = 0;
    std::int64_t q = 0;
    int mu1 = -1;
    int mu2 = -1;
    int type = 1;
    std::int64_t bundles = 0;       // 0 = all
    std::int64_t delete_lines = 0;  // columns covered by this many lines of the next bundle

    void add_to(CLI::App* cmd, bool with_build_options) {
        cmd->add_option("--geom", geom, "geometry kind: eg or pg")
            ->check(CLI::IsMember({"eg", "pg"}))
            ->required();
        cmd->add_option("--r", r, "geometry dimension (>= 2)")->required();
        cmd->add_option("--q", q, "field order, a prime power")->required();
        cmd->add_option("--mu1", mu1, "column flat dimension")->required();
        cmd->add_option("--mu2", mu2, "row flat dimension")->required();
        if (with_build_options) {
            cmd->add_option("--type", type, "1: flats over subflats, 2: the transpose")
                ->check(CLI::IsMember({1, 2}));
            cmd->add_option("--bundles", bundles, "keep only the first N row bundles (EG)");
            cmd->add_option("--delete-lines", delete_lines,
                            "delete the point columns covered by the first N lines of the "
                            "next unselected bundle");
        }
    }

    GeomKind kind() const { return geom == "eg" ? GeomKind::EG : GeomKind::PG; }

    BinaryMatrix build() const {
        const Geometry g(kind(), r, q);
        BinaryMatrix h = build_incidence(g, mu1, mu2, 1);
        if (bundles > 0) h = select_row_bundles(h, bundles);
        if (delete_lines > 0) {
            if (bundles == 0)
                throw std::invalid_argument("--delete-lines needs --bundles to leave a spare bundle");
            const auto all_bundles = g.parallel_bundles(mu2);
            if (bundles >= static_cast<std::int64_t>(all_bundles.size()))
                throw std::invalid_argument("no unselected bundle left to delete from");
            h = delete_covered_columns(g, h, all_bundles[bundles], delete_lines);
        }
        return type == 1 ? std::move(h) : transpose(h);
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError("failed writing " + path);
}

int cmd_field(std::int64_t p, int m) {
    const Field f(p, m);
    std::cout << "p=" << f.p() << "\n";
    std::cout << "m=" << f.m() << "\n";
    std::cout << "q=" << f.q() << "\n";
    std::cout << "modulus=";
    for (size_t i = 0; i < f.modulus().size(); ++i)
        std::cout << (i ? "," : "") << f.modulus()[i];
    std::cout << "\n";
    if (f.q() <= 64) {
        const auto elems = f.enumerate();
        for (size_t i = 0; i < elems.size(); ++i) {
            std::cout << "element_" << i << "=";
            for (size_t j = 0; j < elems[i].size(); ++j)
                std::cout << (j ? "," : "") << elems[i][j];
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_count(const GeometryFlags& gf) {
    const GeomKind kind = gf.kind();
    {
        std::int64_t p;
        int m;
        factor_prime_power(gf.q, p, m);  // reject non-prime-power orders
    }
    if (!(0 <= gf.mu1 && gf.mu1 < gf.mu2 && gf.mu2 <= gf.r))
        throw std::invalid_argument("need 0 <= mu1 < mu2 <= r");
    std::cout << "n_r_mu1=" << flat_count(kind, gf.r, gf.q, gf.mu1) << "\n";
    std::cout << "n_r_mu2=" << flat_count(kind, gf.r, gf.q, gf.mu2) << "\n";
    std::cout << "n_mu2_mu1=" << contained_count(kind, gf.q, gf.mu2, gf.mu1) << "\n";
    std::cout << "a_mu2_mu1=" << containing_count(kind, gf.r, gf.q, gf.mu2, gf.mu1) << "\n";
    std::cout << "a_mu2_mu2m1=" << containing_count(kind, gf.r, gf.q, gf.mu2, gf.mu2 - 1)
              << "\n";
    std::cout << "n_mu1p1_mu1=" << contained_count(kind, gf.q, gf.mu1 + 1, gf.mu1) << "\n";
    return kExitOk;
}

Eigen::MatrixXd load_matrix(const std::string& matrix_file, const std::string& gaussian_spec,
                            const GeometryFlags& gf, std::uint64_t seed) {
    if (!matrix_file.empty()) return to_real(read_bmm(matrix_file));
    if (!gaussian_spec.empty()) {
        const auto x = gaussian_spec.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("--gaussian expects MxN, e.g. 112x256");
        const std::int64_t m = std::stoll(gaussian_spec.substr(0, x));
        const std::int64_t n = std::stoll(gaussian_spec.substr(x + 1));
        return baseline_gaussian(m, n, seed);
    }
    return to_real(gf.build());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic binary measurement matrices from finite geometry"};
    app.require_subcommand(1);

    // field
    auto* field_cmd = app.add_subcommand("field", "print a finite field's layout");
    std::int64_t field_p = 2;
    int field_m = 1;
    field_cmd->add_option("--p", field_p, "prime characteristic")->required();
    field_cmd->add_option("--m", field_m, "extension degree")->required();

    // count
    auto* count_cmd = app.add_subcommand("count", "closed-form flat counts");
    GeometryFlags count_gf;
    count_gf.add_to(count_cmd, false);

    // build
    auto* build_cmd = app.add_subcommand("build", "construct a measurement matrix");
    GeometryFlags build_gf;
    build_gf.add_to(build_cmd, true);
    std::string build_out;
    build_cmd->add_option("-o,--output", build_out, "output .bmm path")->required();

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "structural report for a .bmm matrix");
    std::string analyze_file;
    int spark_limit = 0, stopping_limit = 0;
    analyze_cmd->add_option("file", analyze_file, "matrix file")->required();
    analyze_cmd->add_option("--exact-spark-limit", spark_limit,
                            "exhaustive spark search up to this size");
    analyze_cmd->add_option("--stopping-limit", stopping_limit,
                            "exhaustive stopping-set search up to this size");

    // simulate / compare share most flags
    auto add_sim_flags = [](CLI::App* cmd, GeometryFlags& gf, std::string& matrix_file,
                            ExperimentConfig& cfg, std::string& out, std::string& dat) {
        cmd->add_option("--matrix", matrix_file, "measurement matrix .bmm file");
        gf.add_to(cmd, true);
        for (const std::string opt : {"--geom", "--r", "--q", "--mu1", "--mu2"})
            cmd->get_option(opt)->required(false);
        cmd->add_option("--kmin", cfg.grid.k_min, "smallest sparsity");
        cmd->add_option("--kmax", cfg.grid.k_max, "largest sparsity")->required();
        cmd->add_option("--kstep", cfg.grid.k_step, "sparsity step");
        cmd->add_option("--trials", cfg.trials, "trials per sparsity (default 500)");
        cmd->add_option("--seed", cfg.seed, "master seed (default 1)");
        cmd->add_option("--workers", cfg.workers, "worker threads (default 1)");
        cmd->add_option("-o,--output", out, "output .csv path")->required();
        cmd->add_option("--dat", dat, "also write plain k/percent .dat file(s)");
    };

    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo OMP recovery curve");
    GeometryFlags sim_gf;
    std::string sim_matrix, sim_gaussian, sim_out, sim_dat;
    ExperimentConfig sim_cfg;
    add_sim_flags(sim_cmd, sim_gf, sim_matrix, sim_cfg, sim_out, sim_dat);
    sim_cmd->add_option("--gaussian", sim_gaussian, "use an MxN Gaussian matrix instead");

    auto* cmp_cmd = app.add_subcommand("compare", "proposed vs same-size Gaussian baseline");
    GeometryFlags cmp_gf;
    std::string cmp_matrix, cmp_out, cmp_dat;
    ExperimentConfig cmp_cfg;
    add_sim_flags(cmp_cmd, cmp_gf, cmp_matrix, cmp_cfg, cmp_out, cmp_dat);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named invariant suite");
    std::string suite;
    verify_cmd->add_option("suite", suite, "one of: fields, small-geometries, bounds-chain, oracle, paper-values")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (field_cmd->parsed()) return cmd_field(field_p, field_m);
        if (count_cmd->parsed()) return cmd_count(count_gf);
        if (build_cmd->parsed()) {
            write_bmm(build_gf.build(), build_out);
            return kExitOk;
        }
        if (analyze_cmd->parsed()) {
            const BinaryMatrix h = read_bmm(analyze_file);
            std::cout << analyze(h, spark_limit, stopping_limit).render();
            return kExitOk;
        }
        if (sim_cmd->parsed()) {
            if (sim_matrix.empty() && sim_gaussian.empty() && sim_gf.geom.empty())
                throw std::invalid_argument("need --matrix, --gaussian or geometry flags");
            const Eigen::MatrixXd a = load_matrix(sim_matrix, sim_gaussian, sim_gf, sim_cfg.seed);
            const RecoveryCurve curve = run_experiment(a, sim_cfg);
            write_text(sim_out, curve_csv(curve));
            if (!sim_dat.empty()) write_text(sim_dat, curve_dat(curve));
            return kExitOk;
        }
        if (cmp_cmd->parsed()) {
            if (cmp_matrix.empty() && cmp_gf.geom.empty())
                throw std::invalid_argument("need --matrix or geometry flags");
            const Eigen::MatrixXd a = load_matrix(cmp_matrix, "", cmp_gf, cmp_cfg.seed);
            const Eigen::MatrixXd b = baseline_gaussian(a.rows(), a.cols(), cmp_cfg.seed);
            const ComparisonResult cmp = compare(a, b, cmp_cfg);
            write_text(cmp_out, comparison_csv(cmp));
            if (!cmp_dat.empty()) {
                write_text(cmp_dat + ".proposed", curve_dat(cmp.proposed));
                write_text(cmp_dat + ".gaussian", curve_dat(cmp.gaussian));
            }
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            const SuiteReport report = run_suite(suite);
            std::cout << render(report);
            return report.all_passed() ? kExitOk : kExitVerifyFailed;
        }
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
