#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepclust/autoclust.hpp"
#include "sepclust/bench.hpp"
#include "sepclust/dataset.hpp"
#include "sepclust/errors.hpp"
#include "sepclust/fcm.hpp"
#include "sepclust/kmeans.hpp"
#include "sepclust/validity.hpp"

namespace {

using sepclust::AutoAlgorithm;
using sepclust::AutoMode;
using sepclust::CmpVariant;

struct LoadOptions {
    std::string input;
    bool header = false;
    std::string label_column;
    bool normalize = false;
};

void add_load_options(CLI::App* cmd, LoadOptions& opts, bool required = true) {
    auto* input = cmd->add_option("--input", opts.input, "CSV file to cluster");
    if (required) input->required();
    cmd->add_flag("--header", opts.header, "first CSV row is a header");
    cmd->add_option("--label-column", opts.label_column,
                    "label column, by 0-based index or by header name");
    cmd->add_flag("--normalize", opts.normalize, "min-max rescale each feature to [0,1]");
}

sepclust::Dataset load_dataset(const LoadOptions& opts) {
    sepclust::CsvOptions csv;
    csv.has_header = opts.header;
    if (!opts.label_column.empty()) {
        bool numeric = !opts.label_column.empty() &&
                       std::all_of(opts.label_column.begin(), opts.label_column.end(),
                                   [](unsigned char ch) { return std::isdigit(ch); });
        if (numeric)
            csv.label_column = static_cast<std::size_t>(std::stoul(opts.label_column));
        else
            csv.label_column = opts.label_column;
    }
    sepclust::Dataset ds = sepclust::load_csv(opts.input, csv);
    return opts.normalize ? sepclust::minmax_rescale(ds) : ds;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

void write_json(const std::string& out_path, const nlohmann::ordered_json& j) {
    write_text(out_path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return nlohmann::json::parse(in);
}

nlohmann::ordered_json sweep_to_json(const std::vector<sepclust::SweepRecord>& sweep,
                                     bool with_timings) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& rec : sweep) {
        nlohmann::ordered_json r;
        r["c"] = rec.c;
        r["mse"] = rec.indices.mse;
        r["dunn"] = rec.indices.dunn;
        r["davies_bouldin"] = rec.indices.davies_bouldin;
        r["sep"] = rec.indices.sep;
        r["cmp"] = rec.indices.cmp;
        r["sep_cmp"] = rec.indices.sep_cmp;
        r["cardinalities"] = rec.cardinalities;
        if (with_timings) r["wall_seconds"] = rec.wall_seconds;
        rows.push_back(std::move(r));
    }
    return rows;
}

CmpVariant parse_cmpj(const std::string& s) {
    if (s == "inverse") return CmpVariant::inverse_variance;
    if (s == "literal") return CmpVariant::literal;
    throw CLI::ValidationError("--cmpj", "expected 'inverse' or 'literal'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition-based clustering with separation-compactness model selection"};
    app.require_subcommand(1);

    // --- kmeans ---------------------------------------------------------
    auto* kmeans_cmd = app.add_subcommand("kmeans", "hard k-means, best of several restarts");
    LoadOptions km_load;
    add_load_options(kmeans_cmd, km_load);
    sepclust::KMeansConfig km_cfg;
    std::string km_out;
    kmeans_cmd->add_option("--c", km_cfg.c, "number of clusters")->required();
    kmeans_cmd->add_option("--seed", km_cfg.rng_seed, "RNG seed");
    kmeans_cmd->add_option("--restarts", km_cfg.restarts, "independent restarts");
    kmeans_cmd->add_option("--max-iterations", km_cfg.max_iterations, "iteration cap");
    kmeans_cmd->add_option("--out", km_out, "output partition JSON");
    kmeans_cmd->callback([&] {
        auto ds = load_dataset(km_load);
        auto result = sepclust::kmeans_run(ds, km_cfg);
        write_json(km_out, sepclust::to_json(result.partition));
    });

    // --- fcm --------------------------------------------------------------
    auto* fcm_cmd = app.add_subcommand("fcm", "fuzzy c-means");
    LoadOptions fcm_load;
    add_load_options(fcm_cmd, fcm_load);
    sepclust::FcmConfig fcm_cfg;
    std::string fcm_out;
    fcm_cmd->add_option("--c", fcm_cfg.c, "number of clusters")->required();
    fcm_cmd->add_option("--m", fcm_cfg.fuzzifier, "fuzzifier (> 1)");
    fcm_cmd->add_option("--eps", fcm_cfg.epsilon, "relative center-shift tolerance");
    fcm_cmd->add_option("--seed", fcm_cfg.rng_seed, "RNG seed");
    fcm_cmd->add_option("--max-iterations", fcm_cfg.max_iterations, "iteration cap");
    fcm_cmd->add_option("--out", fcm_out, "output fuzzy partition JSON");
    fcm_cmd->callback([&] {
        auto ds = load_dataset(fcm_load);
        auto result = sepclust::fcm_run(ds, fcm_cfg);
        write_json(fcm_out, sepclust::to_json(result.partition));
    });

    // --- autofcm ----------------------------------------------------------
    auto* autofcm_cmd = app.add_subcommand("autofcm", "FCM with automatic cluster count");
    LoadOptions af_load;
    add_load_options(autofcm_cmd, af_load);
    sepclust::FcmConfig af_cfg;
    std::string af_mode = "merge", af_out;
    bool af_timings = false;
    autofcm_cmd->add_option("--mode", af_mode, "merge or split")
        ->check(CLI::IsMember({"merge", "split"}));
    autofcm_cmd->add_option("--m", af_cfg.fuzzifier, "fuzzifier (> 1)");
    autofcm_cmd->add_option("--eps", af_cfg.epsilon, "relative center-shift tolerance");
    autofcm_cmd->add_option("--seed", af_cfg.rng_seed, "RNG seed");
    autofcm_cmd->add_option("--max-iterations", af_cfg.max_iterations, "iteration cap");
    autofcm_cmd->add_flag("--with-timings", af_timings, "include wall-clock times in the output");
    autofcm_cmd->add_option("--out", af_out, "output JSON");
    autofcm_cmd->callback([&] {
        auto ds = load_dataset(af_load);
        auto mode = af_mode == "merge" ? AutoMode::merge : AutoMode::split;
        auto result = sepclust::fuzzy_auto(ds, mode, af_cfg);
        nlohmann::ordered_json j;
        j["mode"] = af_mode;
        j["c_opt"] = result.c_opt;
        j["best_sc"] = result.best_sc;
        j["sweep"] = nlohmann::ordered_json::array();
        for (const auto& rec : result.sweep) {
            nlohmann::ordered_json r;
            r["c"] = rec.c;
            r["sc"] = rec.sc;
            r["cardinalities"] = rec.cardinalities;
            if (af_timings) r["wall_seconds"] = rec.wall_seconds;
            j["sweep"].push_back(std::move(r));
        }
        j["best_partition"] = sepclust::to_json(result.best);
        write_json(af_out, j);
    });

    // --- indices ------------------------------------------------------------
    auto* indices_cmd = app.add_subcommand("indices", "validity indices of a stored partition");
    LoadOptions idx_load;
    add_load_options(indices_cmd, idx_load);
    std::string idx_partition, idx_out, idx_cmpj = "inverse";
    indices_cmd->add_option("--partition", idx_partition, "hard partition JSON")->required();
    indices_cmd->add_option("--cmpj", idx_cmpj, "cmp_j variant: inverse or literal")
        ->check(CLI::IsMember({"inverse", "literal"}));
    indices_cmd->add_option("--out", idx_out, "output report JSON");
    indices_cmd->callback([&] {
        auto ds = load_dataset(idx_load);
        auto hp = sepclust::hard_partition_from_json(read_json(idx_partition));
        auto report = sepclust::compute_index_report(ds, hp, parse_cmpj(idx_cmpj));
        write_json(idx_out, sepclust::to_json(report));
    });

    // --- auto ----------------------------------------------------------------
    auto* auto_cmd = app.add_subcommand("auto", "automatic hard clustering (EMk/ESk)");
    LoadOptions auto_load;
    add_load_options(auto_cmd, auto_load);
    sepclust::AutoConfig auto_cfg;
    std::string auto_algo = "emk", auto_out, auto_cmpj = "inverse";
    bool auto_timings = false;
    auto_cmd->add_option("--algo", auto_algo, "emk (merge) or esk (split)")
        ->check(CLI::IsMember({"emk", "esk"}));
    auto_cmd->add_option("--seed", auto_cfg.rng_seed, "RNG seed");
    auto_cmd->add_option("--restarts", auto_cfg.restarts, "restarts of the initial k-means");
    auto_cmd->add_option("--max-iterations", auto_cfg.max_iterations, "per-run iteration cap");
    auto_cmd->add_option("--cmpj", auto_cmpj, "cmp_j variant: inverse or literal")
        ->check(CLI::IsMember({"inverse", "literal"}));
    auto_cmd->add_flag("--with-timings", auto_timings, "include wall-clock times in the output");
    auto_cmd->add_option("--out", auto_out, "output JSON");
    auto_cmd->callback([&] {
        auto ds = load_dataset(auto_load);
        auto_cfg.cmp_variant = parse_cmpj(auto_cmpj);
        auto result = auto_algo == "emk" ? sepclust::emk_means(ds, auto_cfg)
                                         : sepclust::esk_means(ds, auto_cfg);
        nlohmann::ordered_json j;
        j["algorithm"] = auto_algo;
        j["c_opt"] = result.c_opt;
        j["sweep"] = sweep_to_json(result.sweep, auto_timings);
        j["best_partition"] = sepclust::to_json(result.best);
        write_json(auto_out, j);
    });

    // --- bench -----------------------------------------------------------------
    auto* bench_cmd = app.add_subcommand("bench", "full benchmark report for a dataset");
    std::string bench_dataset, bench_algo = "emk", bench_format = "markdown", bench_out;
    std::string bench_data_dir = "data", bench_cmpj = "inverse";
    bool bench_header = false, bench_normalize = false, bench_timings = false;
    std::string bench_label_column;
    sepclust::BenchConfig bench_cfg;
    sepclust::ConcentricSpec bench_spec;
    bench_cmd->add_option("--dataset", bench_dataset, "iris|wine|diabetes|concentric|<csv path>")
        ->required();
    bench_cmd->add_option("--algo", bench_algo, "emk or esk")
        ->check(CLI::IsMember({"emk", "esk"}));
    bench_cmd->add_option("--seed", bench_cfg.auto_cfg.rng_seed, "RNG seed");
    bench_cmd->add_option("--restarts", bench_cfg.auto_cfg.restarts, "initial k-means restarts");
    bench_cmd->add_option("--cmpj", bench_cmpj, "cmp_j variant: inverse or literal")
        ->check(CLI::IsMember({"inverse", "literal"}));
    bench_cmd->add_option("--format", bench_format, "json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    bench_cmd->add_option("--out", bench_out, "output file (stdout when omitted)");
    bench_cmd->add_option("--data-dir", bench_data_dir, "directory holding the named datasets");
    bench_cmd->add_flag("--header", bench_header, "first CSV row is a header (path datasets)");
    bench_cmd->add_option("--label-column", bench_label_column,
                          "label column for path datasets, index or name");
    bench_cmd->add_flag("--normalize", bench_normalize, "min-max rescale features");
    bench_cmd->add_flag("--with-timings", bench_timings, "include wall-clock times in the report");
    bench_cmd->add_option("--inner-count", bench_spec.inner_count, "concentric: inner disk points");
    bench_cmd->add_option("--outer-count", bench_spec.outer_count, "concentric: ring points");
    bench_cmd->add_option("--inner-radius", bench_spec.inner_radius, "concentric: disk radius");
    bench_cmd->add_option("--ring-min", bench_spec.ring_inner_radius, "concentric: ring inner radius");
    bench_cmd->add_option("--ring-max", bench_spec.ring_outer_radius, "concentric: ring outer radius");
    bench_cmd->callback([&] {
        bench_cfg.auto_cfg.cmp_variant = parse_cmpj(bench_cmpj);
        bench_cfg.with_timings = bench_timings;
        sepclust::Dataset ds;
        if (bench_dataset == "iris" || bench_dataset == "wine" || bench_dataset == "diabetes") {
            LoadOptions named;
            named.input = bench_data_dir + "/" + bench_dataset + ".csv";
            named.header = true;
            named.label_column = "label";
            named.normalize = bench_normalize;
            ds = load_dataset(named);
            ds.name = bench_dataset;
        } else if (bench_dataset == "concentric") {
            bench_spec.rng_seed = bench_cfg.auto_cfg.rng_seed;
            ds = sepclust::generate_concentric(bench_spec);
            if (bench_normalize) ds = sepclust::minmax_rescale(ds);
        } else {
            LoadOptions path_opts;
            path_opts.input = bench_dataset;
            path_opts.header = bench_header;
            path_opts.label_column = bench_label_column;
            path_opts.normalize = bench_normalize;
            ds = load_dataset(path_opts);
        }
        auto algo = bench_algo == "emk" ? AutoAlgorithm::emk : AutoAlgorithm::esk;
        auto report = sepclust::run_benchmark(ds, algo, bench_cfg);
        auto format = bench_format == "json"  ? sepclust::ReportFormat::json
                      : bench_format == "csv" ? sepclust::ReportFormat::csv
                                              : sepclust::ReportFormat::markdown;
        write_text(bench_out, sepclust::emit_report(report, format));
    });

    // --- generate ------------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("generate", "write a synthetic concentric dataset as CSV");
    sepclust::ConcentricSpec gen_spec;
    std::string gen_out;
    gen_cmd->add_option("--inner-count", gen_spec.inner_count, "inner disk points");
    gen_cmd->add_option("--outer-count", gen_spec.outer_count, "ring points");
    gen_cmd->add_option("--inner-radius", gen_spec.inner_radius, "disk radius");
    gen_cmd->add_option("--ring-min", gen_spec.ring_inner_radius, "ring inner radius");
    gen_cmd->add_option("--ring-max", gen_spec.ring_outer_radius, "ring outer radius");
    gen_cmd->add_option("--seed", gen_spec.rng_seed, "RNG seed");
    gen_cmd->add_option("--out", gen_out, "output CSV path")->required();
    gen_cmd->callback([&] { sepclust::save_csv(sepclust::generate_concentric(gen_spec), gen_out); });

    // --- scale -----------------------------------------------------------------
    auto* scale_cmd = app.add_subcommand("scale", "time the SepCmp evaluation across sizes");
    std::vector<std::size_t> scale_sizes;
    std::size_t scale_c = 5;
    std::uint64_t scale_seed = 0;
    std::string scale_out;
    scale_cmd->add_option("--sizes", scale_sizes, "dataset sizes, ascending")
        ->required()
        ->delimiter(',');
    scale_cmd->add_option("--c", scale_c, "cluster count for the evaluation");
    scale_cmd->add_option("--seed", scale_seed, "RNG seed");
    scale_cmd->add_option("--out", scale_out, "output JSON (stdout when omitted)");
    scale_cmd->callback([&] {
        sepclust::ConcentricSpec base;
        base.rng_seed = scale_seed;
        auto probe = sepclust::scaling_probe(base, scale_sizes, scale_c);
        nlohmann::ordered_json j;
        j["c"] = scale_c;
        j["timings"] = nlohmann::ordered_json::array();
        for (const auto& [n, seconds] : probe.timings)
            j["timings"].push_back({{"n", n}, {"seconds", seconds}});
        j["slope"] = probe.slope ? nlohmann::ordered_json(*probe.slope)
                                 : nlohmann::ordered_json(nullptr);
        write_json(scale_out, j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const sepclust::UndefinedIndexError& e) {
        std::cerr << "undefined index: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
