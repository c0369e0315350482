#include "sepclust/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sepclust/errors.hpp"
#include "sepclust/rng.hpp"

namespace sepclust {
namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_fixed2(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << v;
    return out.str();
}

volatile double g_probe_sink = 0.0;  // keeps timed evaluations from being optimized out

} // namespace

double distribution_similarity(std::vector<std::size_t> real_counts,
                               std::vector<std::size_t> obtained_counts) {
    if (real_counts.empty() || obtained_counts.empty())
        throw std::invalid_argument("distribution_similarity: empty histogram");
    std::size_t real_total = 0, obtained_total = 0;
    for (auto v : real_counts) real_total += v;
    for (auto v : obtained_counts) obtained_total += v;
    if (real_total != obtained_total)
        throw std::invalid_argument("distribution_similarity: totals differ");

    std::sort(real_counts.rbegin(), real_counts.rend());
    std::sort(obtained_counts.rbegin(), obtained_counts.rend());
    std::size_t slots = std::max(real_counts.size(), obtained_counts.size());
    real_counts.resize(slots, 0);
    obtained_counts.resize(slots, 0);

    double gap = 0.0;
    for (std::size_t i = 0; i < slots; ++i) {
        double d = static_cast<double>(real_counts[i]) - static_cast<double>(obtained_counts[i]);
        gap += std::abs(d);
    }
    return 100.0 * gap / static_cast<double>(real_total);
}

BenchReport run_benchmark(const Dataset& ds, AutoAlgorithm algo, const BenchConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    AutoResult result =
        algo == AutoAlgorithm::emk ? emk_means(ds, cfg.auto_cfg) : esk_means(ds, cfg.auto_cfg);
    double total_seconds = std::chrono::duration<double>(clock::now() - t0).count();

    BenchReport report;
    report.dataset = ds.name;
    report.algorithm = algo == AutoAlgorithm::emk ? "emk" : "esk";
    for (const auto& rec : result.sweep)
        report.table.push_back(SweepRow{rec.c, rec.indices.mse, rec.indices.dunn,
                                        rec.indices.davies_bouldin, rec.indices.sep_cmp});

    auto arg_best = [&](auto value_of, bool maximize) {
        std::size_t best_c = 0;
        double best = maximize ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
        for (const auto& row : report.table) {
            double v = value_of(row);
            bool better = maximize ? v > best : v < best;
            if (better || (v == best && row.c < best_c)) {
                best = v;
                best_c = row.c;
            }
        }
        return best_c;
    };
    report.c_opt_mse = arg_best([](const SweepRow& r) { return r.mse; }, false);
    report.c_opt_dunn = arg_best([](const SweepRow& r) { return r.dunn; }, true);
    report.c_opt_db = arg_best([](const SweepRow& r) { return r.davies_bouldin; }, false);
    report.c_opt_sepcmp = arg_best([](const SweepRow& r) { return r.sep_cmp; }, true);

    report.obtained_distribution = result.best.cardinalities();
    std::sort(report.obtained_distribution.rbegin(), report.obtained_distribution.rend());

    if (ds.labels) {
        std::vector<std::size_t> real;
        for (const auto& [label, count] : label_histogram(ds)) real.push_back(count);
        report.real_distribution = real;
        report.similarity = distribution_similarity(real, report.obtained_distribution);
    }
    if (cfg.with_timings)
        report.timings = std::vector<std::pair<std::size_t, double>>{{ds.size(), total_seconds}};
    return report;
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["dataset"] = report.dataset;
        j["algorithm"] = report.algorithm;
        j["table"] = nlohmann::ordered_json::array();
        for (const auto& row : report.table) {
            nlohmann::ordered_json r;
            r["c"] = row.c;
            r["mse"] = row.mse;
            r["dunn"] = row.dunn;
            r["davies_bouldin"] = row.davies_bouldin;
            r["sep_cmp"] = row.sep_cmp;
            j["table"].push_back(std::move(r));
        }
        j["c_opt"] = {{"mse", report.c_opt_mse},
                      {"dunn", report.c_opt_dunn},
                      {"davies_bouldin", report.c_opt_db},
                      {"sep_cmp", report.c_opt_sepcmp}};
        j["obtained_distribution"] = report.obtained_distribution;
        if (report.real_distribution) j["real_distribution"] = *report.real_distribution;
        if (report.similarity) j["similarity"] = *report.similarity;
        if (report.timings) {
            j["timings"] = nlohmann::ordered_json::array();
            for (const auto& [n, seconds] : *report.timings)
                j["timings"].push_back({{"n", n}, {"seconds", seconds}});
        }
        return j.dump(2) + "\n";
    }

    if (format == ReportFormat::csv) {
        std::string out = "dataset,algorithm,c,index,value\n";
        for (const auto& row : report.table) {
            auto line = [&](const char* index, double value) {
                out += report.dataset + ',' + report.algorithm + ',' + std::to_string(row.c) + ',' +
                       index + ',' + format_double(value) + '\n';
            };
            line("mse", row.mse);
            line("dunn", row.dunn);
            line("davies_bouldin", row.davies_bouldin);
            line("sep_cmp", row.sep_cmp);
        }
        return out;
    }

    std::string out;
    out += "| c | MSE | I_Dunn | I_DB | SepCmp |\n";
    out += "|--:|----:|-------:|-----:|-------:|\n";
    for (const auto& row : report.table) {
        out += "| " + std::to_string(row.c) + " | " + format_fixed2(row.mse) + " | " +
               format_fixed2(row.dunn) + " | " + format_fixed2(row.davies_bouldin) + " | " +
               format_fixed2(row.sep_cmp) + " |\n";
    }
    out += "\nc_opt (SepCmp): " + std::to_string(report.c_opt_sepcmp) + "\n";
    if (report.similarity)
        out += "similarity: " + format_fixed2(*report.similarity) + "%\n";
    return out;
}

BenchReport bench_report_from_json(const nlohmann::json& j) {
    BenchReport report;
    report.dataset = j.at("dataset").get<std::string>();
    report.algorithm = j.at("algorithm").get<std::string>();
    for (const auto& r : j.at("table"))
        report.table.push_back(SweepRow{r.at("c").get<std::size_t>(), r.at("mse").get<double>(),
                                        r.at("dunn").get<double>(),
                                        r.at("davies_bouldin").get<double>(),
                                        r.at("sep_cmp").get<double>()});
    report.c_opt_mse = j.at("c_opt").at("mse").get<std::size_t>();
    report.c_opt_dunn = j.at("c_opt").at("dunn").get<std::size_t>();
    report.c_opt_db = j.at("c_opt").at("davies_bouldin").get<std::size_t>();
    report.c_opt_sepcmp = j.at("c_opt").at("sep_cmp").get<std::size_t>();
    report.obtained_distribution = j.at("obtained_distribution").get<std::vector<std::size_t>>();
    if (j.contains("real_distribution"))
        report.real_distribution = j.at("real_distribution").get<std::vector<std::size_t>>();
    if (j.contains("similarity")) report.similarity = j.at("similarity").get<double>();
    if (j.contains("timings")) {
        std::vector<std::pair<std::size_t, double>> timings;
        for (const auto& t : j.at("timings"))
            timings.emplace_back(t.at("n").get<std::size_t>(), t.at("seconds").get<double>());
        report.timings = std::move(timings);
    }
    return report;
}

double sepcmp_scan_evaluation(const Dataset& ds, const Matrix& centers) {
    std::size_t c = centers.rows();
    if (c < 2) throw std::invalid_argument("sepcmp evaluation: needs at least 2 centers");
    std::size_t n = ds.size();
    std::size_t m = ds.dim();
    const double* points = ds.points.data().data();
    const double* cents = centers.data().data();

    // Each cluster independently scans the whole dataset and runs the full
    // nearest-center test per point, so the cost is N * M * c per cluster.
    std::size_t k = 0;
    double variance_sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        std::size_t card = 0;
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* x = points + i * m;
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_l = 0;
            double to_j = 0.0;
            for (std::size_t l = 0; l < c; ++l) {
                const double* v = cents + l * m;
                double d = 0.0;
                for (std::size_t f = 0; f < m; ++f) {
                    double diff = x[f] - v[f];
                    d += diff * diff;
                }
                if (l == j) to_j = d;
                if (d < best) {
                    best = d;
                    best_l = l;
                }
            }
            if (best_l == j) {
                ++card;
                ss += to_j;
            }
        }
        if (card > 1) {
            ++k;
            variance_sum += ss / (static_cast<double>(card) * static_cast<double>(card));
        }
    }
    if (k == 0) throw UndefinedIndexError("sepcmp evaluation: every cluster is a singleton");
    if (variance_sum == 0.0) throw UndefinedIndexError("sepcmp evaluation: zero total variance");

    double separation = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < c; ++l)
            if (l != j) nearest = std::min(nearest, squared_distance(centers.row(j), centers.row(l)));
        separation += nearest;
    }
    double sep = separation / static_cast<double>(c);
    sep *= sep;
    double cmp = static_cast<double>(k) / variance_sum;
    return (static_cast<double>(k) / static_cast<double>(c)) * sep * cmp;
}

ScalingProbeResult scaling_probe(const ConcentricSpec& base, const std::vector<std::size_t>& sizes,
                                 std::size_t c) {
    if (sizes.empty()) throw std::invalid_argument("scaling_probe: no sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("scaling_probe: sizes must be ascending");

    using clock = std::chrono::steady_clock;
    ScalingProbeResult result;
    double inner_share = static_cast<double>(base.inner_count) /
                         static_cast<double>(base.inner_count + base.outer_count);

    bool burned_in = false;
    for (std::size_t n : sizes) {
        ConcentricSpec spec = base;
        spec.inner_count = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                        std::llround(inner_share * static_cast<double>(n))));
        spec.outer_count = std::max<std::size_t>(1, n - spec.inner_count);
        Dataset ds = generate_concentric(spec);

        auto rng = seeded_stream(spec.rng_seed, 0xc0ffee);
        auto picks = sample_without_replacement(rng, ds.size(), c);
        Matrix centers(c, ds.dim());
        for (std::size_t j = 0; j < c; ++j) centers.set_row(j, ds.points.row(picks[j]));

        if (!burned_in) {
            // settle CPU frequency and caches before the first measurement
            auto burn_until = clock::now() + std::chrono::milliseconds(100);
            while (clock::now() < burn_until)
                g_probe_sink = g_probe_sink + sepcmp_scan_evaluation(ds, centers);
            burned_in = true;
        }

        // calibrate the repeat count so one measurement lasts >= ~20 ms
        auto t0 = clock::now();
        g_probe_sink = g_probe_sink + sepcmp_scan_evaluation(ds, centers);
        double single = std::chrono::duration<double>(clock::now() - t0).count();
        std::size_t repeats = std::max<std::size_t>(1, static_cast<std::size_t>(0.02 / std::max(single, 1e-9)));

        std::vector<double> measured;
        for (int rep = 0; rep < 8; ++rep) {  // 3 warmup + 5 kept
            t0 = clock::now();
            for (std::size_t r = 0; r < repeats; ++r)
                g_probe_sink = g_probe_sink + sepcmp_scan_evaluation(ds, centers);
            double elapsed = std::chrono::duration<double>(clock::now() - t0).count() /
                             static_cast<double>(repeats);
            if (rep >= 3) measured.push_back(elapsed);
        }
        std::sort(measured.begin(), measured.end());
        result.timings.emplace_back(ds.size(), measured[measured.size() / 2]);
    }

    if (result.timings.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double m = static_cast<double>(result.timings.size());
        for (const auto& [n, t] : result.timings) {
            double x = std::log(static_cast<double>(n));
            double y = std::log(t);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        result.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return result;
}

} // namespace sepclust
