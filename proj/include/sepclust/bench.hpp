#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sepclust/autoclust.hpp"
#include "sepclust/dataset.hpp"

namespace sepclust {

struct SweepRow {
    std::size_t c = 0;
    double mse = 0.0;
    double dunn = 0.0;
    double davies_bouldin = 0.0;
    double sep_cmp = 0.0;
};

struct BenchReport {
    std::string dataset;
    std::string algorithm;                        // "emk" or "esk"
    std::vector<SweepRow> table;                  // in sweep order
    std::size_t c_opt_mse = 0;                    // argmin over the sweep
    std::size_t c_opt_dunn = 0;                   // argmax
    std::size_t c_opt_db = 0;                     // argmin
    std::size_t c_opt_sepcmp = 0;                 // argmax
    std::vector<std::size_t> obtained_distribution;  // cardinalities at c_opt_sepcmp
    std::optional<std::vector<std::size_t>> real_distribution;
    std::optional<double> similarity;             // percent, lower is better
    std::optional<std::vector<std::pair<std::size_t, double>>> timings;  // (N, seconds)
};

/// Histogram discrepancy in percent: both count lists are sorted descending,
/// paired positionally (missing entries pair with zero), and the L1 gap is
/// reported relative to N. Zero iff the histograms agree as multisets.
double distribution_similarity(std::vector<std::size_t> real_counts,
                               std::vector<std::size_t> obtained_counts);

struct BenchConfig {
    AutoConfig auto_cfg;
    bool with_timings = false;
};

/// Runs the chosen automatic algorithm and assembles the per-c index table,
/// the per-index optima, and (when the dataset is labeled) the distribution
/// similarity at the SepCmp optimum.
BenchReport run_benchmark(const Dataset& ds, AutoAlgorithm algo, const BenchConfig& cfg);

enum class ReportFormat { json, csv, markdown };

std::string emit_report(const BenchReport& report, ReportFormat format);
BenchReport bench_report_from_json(const nlohmann::json& j);

/// From-scratch SepCmp evaluation used by the complexity probe: each
/// cluster's member set is derived independently by a full nearest-center
/// scan, so one evaluation costs Theta(N * M * c^2).
double sepcmp_scan_evaluation(const Dataset& ds, const Matrix& centers);

struct ScalingProbeResult {
    std::vector<std::pair<std::size_t, double>> timings;  // (N, median seconds)
    std::optional<double> slope;                          // log-log fit, absent for one size
};

/// Times sepcmp_scan_evaluation on generated concentric data of each size
/// (3 warmup + 5 measured repetitions, median kept) and fits the log N vs
/// log time slope.
ScalingProbeResult scaling_probe(const ConcentricSpec& base, const std::vector<std::size_t>& sizes,
                                 std::size_t c);

} // namespace sepclust
