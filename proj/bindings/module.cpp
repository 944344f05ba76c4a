#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fgsense/analysis.hpp"
#include "fgsense/experiment.hpp"
#include "fgsense/field.hpp"
#include "fgsense/geometry.hpp"
#include "fgsense/matrix.hpp"
#include "fgsense/recovery.hpp"
#include "fgsense/verify.hpp"

namespace py = pybind11;
using namespace fgsense;

namespace {

GeomKind parse_kind(const std::string& kind) {
    if (kind == "eg" || kind == "EG") return GeomKind::EG;
    if (kind == "pg" || kind == "PG") return GeomKind::PG;
    throw std::invalid_argument("geometry kind must be 'eg' or 'pg'");
}

BinaryMatrix build_matrix(const std::string& kind, int r, std::int64_t q, int mu1, int mu2,
                          int type, std::int64_t bundles, std::int64_t delete_lines) {
    const Geometry g(parse_kind(kind), r, q);
    BinaryMatrix h = build_incidence(g, mu1, mu2, 1);
    if (bundles > 0) h = select_row_bundles(h, bundles);
    if (delete_lines > 0) {
        if (bundles == 0) throw std::invalid_argument("delete_lines needs a bundle selection");
        const auto all = g.parallel_bundles(mu2);
        if (bundles >= static_cast<std::int64_t>(all.size()))
            throw std::invalid_argument("no unselected bundle left to delete from");
        h = delete_covered_columns(g, h, all[bundles], delete_lines);
    }
    return type == 1 ? std::move(h) : transpose(h);
}

py::dict report_to_dict(const AnalysisReport& r) {
    py::dict d;
    d["rows"] = r.rows;
    d["cols"] = r.cols;
    d["gamma"] = r.gamma;
    d["lambda"] = r.lambda;
    d["rho"] = r.rho;
    d["coherence"] = r.coherence;
    d["coherence_defined"] = r.coherence_defined;
    if (r.girth)
        d["girth"] = *r.girth;
    else
        d["girth"] = py::none();
    py::dict b;
    if (r.bounds.coherence_applicable) b["coherence"] = r.bounds.coherence_bound;
    if (r.bounds.ratio_applicable) {
        b["gamma_lambda"] = r.bounds.gamma_lambda_bound.value();
        b["two_gamma_lambda"] = r.bounds.two_gamma_lambda_bound.value();
    }
    if (r.bounds.type1_bound) b["type1"] = *r.bounds.type1_bound;
    if (r.bounds.type2_bound) b["type2"] = *r.bounds.type2_bound;
    d["bounds"] = b;
    d["k_guaranteed"] = r.bounds.guaranteed_sparsity;
    if (r.spark) {
        d["spark"] = r.spark->str();
        if (r.spark->found()) d["spark_certificate"] = r.spark->certificate;
    }
    if (r.stopping) {
        d["stopping_distance"] = r.stopping->str();
        if (r.stopping->found()) d["stopping_certificate"] = r.stopping->certificate;
    }
    return d;
}

std::vector<py::tuple> curve_to_list(const RecoveryCurve& c) {
    std::vector<py::tuple> out;
    out.reserve(c.points.size());
    for (const auto& p : c.points) out.push_back(py::make_tuple(p.k, p.trials, p.successes, p.percent()));
    return out;
}

}  // namespace

PYBIND11_MODULE(_fgsense, m) {
    m.doc() = "binary measurement matrices from finite geometry";

    py::class_<Field>(m, "Field")
        .def(py::init<std::int64_t, int>(), py::arg("p"), py::arg("m"))
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("m", &Field::m)
        .def_property_readonly("q", &Field::q)
        .def_property_readonly("modulus", &Field::modulus,
                               "monic modulus polynomial, constant term first")
        .def("add", &Field::add)
        .def("sub", &Field::sub)
        .def("mul", &Field::mul)
        .def("neg", &Field::neg)
        .def("inv", &Field::inv)
        .def("coeffs", &Field::coeffs)
        .def("elements", &Field::enumerate, "all elements in canonical order");

    py::class_<BinaryMatrix>(m, "BinaryMatrix")
        .def_property_readonly("rows", &BinaryMatrix::rows)
        .def_property_readonly("cols", &BinaryMatrix::cols)
        .def("get", &BinaryMatrix::get)
        .def("row_weights", &BinaryMatrix::row_weights)
        .def("col_weights", &BinaryMatrix::col_weights)
        .def("transposed", [](const BinaryMatrix& h) { return transpose(h); })
        .def("same_bits", &BinaryMatrix::same_bits)
        .def("to_text", [](const BinaryMatrix& h) { return to_bmm_string(h); });

    m.def("flat_count", [](const std::string& kind, int r, std::int64_t q, int mu) {
        return flat_count(parse_kind(kind), r, q, mu);
    });
    m.def("point_count", [](const std::string& kind, int r, std::int64_t q) {
        return point_count(parse_kind(kind), r, q);
    });
    m.def("contained_count", [](const std::string& kind, std::int64_t q, int mu2, int mu1) {
        return contained_count(parse_kind(kind), q, mu2, mu1);
    });
    m.def("containing_count", [](const std::string& kind, int r, std::int64_t q, int mu2, int mu1) {
        return containing_count(parse_kind(kind), r, q, mu2, mu1);
    });
    m.def("bundle_sizes", [](const std::string& kind, int r, std::int64_t q, int mu) {
        const Geometry g(parse_kind(kind), r, q);
        std::vector<std::int64_t> sizes;
        for (const auto& b : g.parallel_bundles(mu))
            sizes.push_back(static_cast<std::int64_t>(b.members.size()));
        return sizes;
    });

    m.def("build_matrix", &build_matrix, py::arg("kind"), py::arg("r"), py::arg("q"),
          py::arg("mu1"), py::arg("mu2"), py::arg("type") = 1, py::arg("bundles") = 0,
          py::arg("delete_lines") = 0);
    m.def("write_bmm", &write_bmm);
    m.def("read_bmm", &read_bmm);

    m.def(
        "analyze",
        [](const BinaryMatrix& h, int spark_limit, int stopping_limit) {
            return report_to_dict(analyze(h, spark_limit, stopping_limit));
        },
        py::arg("matrix"), py::arg("exact_spark_limit") = 0, py::arg("stopping_limit") = 0);

    m.def(
        "simulate",
        [](const BinaryMatrix& h, int kmin, int kmax, int kstep, int trials, std::uint64_t seed,
           int workers) {
            ExperimentConfig cfg{{kmin, kmax, kstep}, trials, seed, workers};
            return curve_to_list(run_experiment(to_real(h), cfg));
        },
        py::arg("matrix"), py::arg("kmin"), py::arg("kmax"), py::arg("kstep") = 1,
        py::arg("trials") = 500, py::arg("seed") = 1, py::arg("workers") = 1);

    m.def(
        "simulate_gaussian",
        [](std::int64_t rows, std::int64_t cols, int kmin, int kmax, int kstep, int trials,
           std::uint64_t seed, int workers) {
            ExperimentConfig cfg{{kmin, kmax, kstep}, trials, seed, workers};
            return curve_to_list(run_experiment(baseline_gaussian(rows, cols, seed), cfg));
        },
        py::arg("rows"), py::arg("cols"), py::arg("kmin"), py::arg("kmax"), py::arg("kstep") = 1,
        py::arg("trials") = 500, py::arg("seed") = 1, py::arg("workers") = 1);

    m.def("run_suite", [](const std::string& name) {
        const SuiteReport rep = run_suite(name);
        std::vector<py::tuple> checks;
        for (const auto& c : rep.checks) checks.push_back(py::make_tuple(c.name, c.passed, c.observed));
        return py::make_tuple(rep.all_passed(), checks);
    });
}
