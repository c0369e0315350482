#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>

#include "sepclust/autoclust.hpp"
#include "sepclust/bench.hpp"
#include "sepclust/dataset.hpp"
#include "sepclust/fcm.hpp"
#include "sepclust/kmeans.hpp"
#include "sepclust/validity.hpp"

namespace py = pybind11;
using namespace sepclust;

namespace {

using InputArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Dataset dataset_from_array(const InputArray& points, const char* name = "array") {
    if (points.ndim() != 2) throw std::invalid_argument("points must be a 2-D array");
    Dataset ds;
    ds.points = Matrix(static_cast<std::size_t>(points.shape(0)),
                       static_cast<std::size_t>(points.shape(1)));
    auto view = points.unchecked<2>();
    for (py::ssize_t i = 0; i < points.shape(0); ++i)
        for (py::ssize_t j = 0; j < points.shape(1); ++j)
            ds.points(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = view(i, j);
    ds.name = name;
    return ds;
}

py::array_t<double> matrix_to_array(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    return out;
}

CmpVariant parse_cmpj(const std::string& name) {
    if (name == "inverse") return CmpVariant::inverse_variance;
    if (name == "literal") return CmpVariant::literal;
    throw std::invalid_argument("cmpj must be 'inverse' or 'literal'");
}

py::dict sweep_row_to_dict(const SweepRecord& rec) {
    py::dict row;
    row["c"] = rec.c;
    row["mse"] = rec.indices.mse;
    row["dunn"] = rec.indices.dunn;
    row["davies_bouldin"] = rec.indices.davies_bouldin;
    row["sep"] = rec.indices.sep;
    row["cmp"] = rec.indices.cmp;
    row["sep_cmp"] = rec.indices.sep_cmp;
    row["cardinalities"] = rec.cardinalities;
    return row;
}

py::dict auto_result_to_dict(const AutoResult& result) {
    py::dict out;
    out["c_opt"] = result.c_opt;
    out["centers"] = matrix_to_array(result.best.centers);
    out["assignment"] = result.best.assignment;
    py::list sweep;
    for (const auto& rec : result.sweep) sweep.append(sweep_row_to_dict(rec));
    out["sweep"] = sweep;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hard/fuzzy partition clustering with separation-compactness model selection";
    m.attr("__version__") = "0.1.0";

    m.def(
        "load_csv",
        [](const std::string& path, bool header, const py::object& label_column) {
            CsvOptions options;
            options.has_header = header;
            if (!label_column.is_none()) {
                if (py::isinstance<py::int_>(label_column))
                    options.label_column = label_column.cast<std::size_t>();
                else
                    options.label_column = label_column.cast<std::string>();
            }
            Dataset ds = load_csv(path, options);
            py::object labels = py::none();
            if (ds.labels) labels = py::cast(*ds.labels);
            return py::make_tuple(matrix_to_array(ds.points), labels);
        },
        py::arg("path"), py::arg("header") = false, py::arg("label_column") = py::none(),
        "Load a CSV file; returns (points, labels or None).");

    m.def(
        "generate_concentric",
        [](std::size_t inner_count, std::size_t outer_count, double inner_radius, double ring_min,
           double ring_max, std::uint64_t seed) {
            ConcentricSpec spec{inner_count, outer_count, inner_radius, ring_min, ring_max, seed};
            Dataset ds = generate_concentric(spec);
            return py::make_tuple(matrix_to_array(ds.points), *ds.labels);
        },
        py::arg("inner_count") = 1579, py::arg("outer_count") = 921, py::arg("inner_radius") = 1.0,
        py::arg("ring_min") = 2.0, py::arg("ring_max") = 3.0, py::arg("seed") = 0,
        "Sample the nested disk/ring dataset; returns (points, labels).");

    m.def(
        "kmeans",
        [](const InputArray& points, std::size_t c, std::uint64_t seed, std::size_t restarts,
           std::size_t max_iterations) {
            KMeansConfig cfg{c, max_iterations, seed, restarts};
            KMeansResult result = kmeans_run(dataset_from_array(points), cfg);
            py::dict out;
            out["centers"] = matrix_to_array(result.partition.centers);
            out["assignment"] = result.partition.assignment;
            out["criterion"] = result.criterion;
            out["iterations"] = result.iterations;
            return out;
        },
        py::arg("points"), py::arg("c"), py::arg("seed") = 0, py::arg("restarts") = 10,
        py::arg("max_iterations") = 300, "Best-of-restarts k-means.");

    m.def(
        "fcm",
        [](const InputArray& points, std::size_t c, double m_exp, double eps, std::uint64_t seed,
           std::size_t max_iterations) {
            FcmConfig cfg{c, m_exp, eps, max_iterations, seed};
            FcmResult result = fcm_run(dataset_from_array(points), cfg);
            py::dict out;
            out["centers"] = matrix_to_array(result.partition.centers);
            out["memberships"] = matrix_to_array(result.partition.memberships);
            out["objective"] = result.objective_trace.back();
            out["iterations"] = result.iterations;
            return out;
        },
        py::arg("points"), py::arg("c"), py::arg("m") = 2.0, py::arg("eps") = 1e-4,
        py::arg("seed") = 0, py::arg("max_iterations") = 300, "Fuzzy c-means.");

    m.def(
        "index_report",
        [](const InputArray& points, const InputArray& centers,
           const std::vector<std::size_t>& assignment, const std::string& cmpj) {
            Dataset ds = dataset_from_array(points);
            HardPartition hp;
            hp.centers = dataset_from_array(centers).points;
            hp.assignment = assignment;
            IndexReport report = compute_index_report(ds, hp, parse_cmpj(cmpj));
            py::dict out;
            out["mse"] = report.mse;
            out["dunn"] = report.dunn;
            out["davies_bouldin"] = report.davies_bouldin;
            out["sep"] = report.sep;
            out["cmp"] = report.cmp;
            out["sep_cmp"] = report.sep_cmp;
            py::list per_cluster;
            for (const auto& row : report.per_cluster) {
                py::dict r;
                r["cardinality"] = row.cardinality;
                r["sep_j"] = row.sep_j;
                r["cmp_j"] = row.cmp_j ? py::object(py::float_(*row.cmp_j)) : py::none();
                r["sepcmp_j"] = row.sepcmp_j ? py::object(py::float_(*row.sepcmp_j)) : py::none();
                r["var_global"] = row.var_global;
                r["var_split"] = row.var_split;
                per_cluster.append(r);
            }
            out["per_cluster"] = per_cluster;
            return out;
        },
        py::arg("points"), py::arg("centers"), py::arg("assignment"), py::arg("cmpj") = "inverse",
        "All validity indices of a hard partition.");

    m.def(
        "emk_means",
        [](const InputArray& points, std::uint64_t seed, std::size_t restarts,
           const std::string& cmpj, std::size_t max_iterations) {
            AutoConfig cfg{max_iterations, seed, restarts, parse_cmpj(cmpj)};
            return auto_result_to_dict(emk_means(dataset_from_array(points), cfg));
        },
        py::arg("points"), py::arg("seed") = 0, py::arg("restarts") = 10,
        py::arg("cmpj") = "inverse", py::arg("max_iterations") = 300,
        "Merge-based automatic k-means; returns c_opt, best partition and the sweep.");

    m.def(
        "esk_means",
        [](const InputArray& points, std::uint64_t seed, std::size_t restarts,
           const std::string& cmpj, std::size_t max_iterations) {
            AutoConfig cfg{max_iterations, seed, restarts, parse_cmpj(cmpj)};
            return auto_result_to_dict(esk_means(dataset_from_array(points), cfg));
        },
        py::arg("points"), py::arg("seed") = 0, py::arg("restarts") = 10,
        py::arg("cmpj") = "inverse", py::arg("max_iterations") = 300,
        "Split-based automatic k-means; returns c_opt, best partition and the sweep.");

    m.def(
        "fuzzy_auto",
        [](const InputArray& points, const std::string& mode, double m_exp, double eps,
           std::uint64_t seed, std::size_t max_iterations) {
            if (mode != "merge" && mode != "split")
                throw std::invalid_argument("mode must be 'merge' or 'split'");
            FcmConfig cfg{2, m_exp, eps, max_iterations, seed};
            FuzzyAutoResult result = fuzzy_auto(
                dataset_from_array(points), mode == "merge" ? AutoMode::merge : AutoMode::split, cfg);
            py::dict out;
            out["c_opt"] = result.c_opt;
            out["best_sc"] = result.best_sc;
            out["centers"] = matrix_to_array(result.best.centers);
            out["memberships"] = matrix_to_array(result.best.memberships);
            py::list sweep;
            for (const auto& rec : result.sweep) {
                py::dict row;
                row["c"] = rec.c;
                row["sc"] = rec.sc;
                row["cardinalities"] = rec.cardinalities;
                sweep.append(row);
            }
            out["sweep"] = sweep;
            return out;
        },
        py::arg("points"), py::arg("mode") = "merge", py::arg("m") = 2.0, py::arg("eps") = 1e-4,
        py::arg("seed") = 0, py::arg("max_iterations") = 300,
        "FCM with automatic cluster count via SC-guided merging or splitting.");

    m.def("distribution_similarity", &distribution_similarity, py::arg("real"), py::arg("obtained"),
          "Percent discrepancy between two histograms (lower is better).");

    m.def("c_max_rule", &c_max_rule, py::arg("n"), "floor(sqrt(n)), clamped to at least 2.");
}
