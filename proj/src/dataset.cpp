#include "sepclust/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sepclust/errors.hpp"
#include "sepclust/rng.hpp"

namespace sepclust {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) out.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw CsvError("cannot parse '" + cell + "' as a number at row " + std::to_string(row) +
                           ", column " + std::to_string(col),
                       row, col);
    if (!std::isfinite(value))
        throw CsvError("non-finite value at row " + std::to_string(row) + ", column " +
                           std::to_string(col),
                       row, col);
    return value;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

void ConcentricSpec::validate() const {
    if (inner_count == 0 || outer_count == 0)
        throw std::invalid_argument("concentric: point counts must be positive");
    if (!(inner_radius > 0.0) || !(inner_radius < ring_inner_radius) ||
        !(ring_inner_radius < ring_outer_radius))
        throw std::invalid_argument(
            "concentric: radii must satisfy 0 < inner_radius < ring_inner_radius < ring_outer_radius");
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");

    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        line = trim(line);
        if (!line.empty()) lines.push_back(std::move(line));
    }
    if (lines.empty()) throw CsvError("'" + path.string() + "' is empty");

    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (options.has_header) {
        header = split_fields(lines[0]);
        first_data = 1;
        if (lines.size() == 1) throw CsvError("'" + path.string() + "' has a header but no rows");
    }

    std::size_t arity = split_fields(lines[first_data]).size();
    if (options.has_header && header.size() != arity)
        throw CsvError("header arity " + std::to_string(header.size()) +
                           " does not match row arity " + std::to_string(arity),
                       1);

    std::optional<std::size_t> label_index;
    if (options.label_column) {
        if (const auto* idx = std::get_if<std::size_t>(&*options.label_column)) {
            if (*idx >= arity)
                throw CsvError("label column index " + std::to_string(*idx) + " out of range");
            label_index = *idx;
        } else {
            const auto& name = std::get<std::string>(*options.label_column);
            if (!options.has_header)
                throw CsvError("label column '" + name + "' requires a header row");
            auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw CsvError("no header column named '" + name + "'");
            label_index = static_cast<std::size_t>(it - header.begin());
        }
    }

    std::size_t feature_count = arity - (label_index ? 1 : 0);
    if (feature_count == 0) throw CsvError("no feature columns");

    std::size_t n = lines.size() - first_data;
    Dataset ds;
    ds.points = Matrix(n, feature_count);
    if (label_index) ds.labels = std::vector<std::string>(n);
    ds.name = path.stem().string();

    for (std::size_t r = 0; r < n; ++r) {
        std::size_t file_row = first_data + r + 1;  // 1-based, counting the header
        auto fields = split_fields(lines[first_data + r]);
        if (fields.size() != arity)
            throw CsvError("row " + std::to_string(file_row) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(arity),
                           file_row);
        std::size_t f = 0;
        for (std::size_t c = 0; c < arity; ++c) {
            if (label_index && c == *label_index) {
                (*ds.labels)[r] = fields[c];
            } else {
                ds.points(r, f++) = parse_cell(fields[c], file_row, c + 1);
            }
        }
    }
    return ds;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write '" + path.string() + "'");
    for (std::size_t c = 0; c < ds.dim(); ++c) {
        if (c) out << ',';
        out << 'f' << c;
    }
    if (ds.labels) out << ",label";
    out << '\n';
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t c = 0; c < ds.dim(); ++c) {
            if (c) out << ',';
            out << format_double(ds.points(r, c));
        }
        if (ds.labels) out << ',' << (*ds.labels)[r];
        out << '\n';
    }
}

Dataset generate_concentric(const ConcentricSpec& spec) {
    spec.validate();
    auto rng = seeded_stream(spec.rng_seed);
    std::size_t n = spec.inner_count + spec.outer_count;

    Dataset ds;
    ds.points = Matrix(n, 2);
    ds.labels = std::vector<std::string>(n);
    ds.name = "concentric";

    // Area-uniform radius via inverse CDF: r = sqrt(u*(r2^2 - r1^2) + r1^2).
    auto emit = [&](std::size_t row, double r1, double r2, const char* label) {
        double u = uniform_unit(rng);
        double theta = 2.0 * std::numbers::pi * uniform_unit(rng);
        double r = std::sqrt(u * (r2 * r2 - r1 * r1) + r1 * r1);
        ds.points(row, 0) = r * std::cos(theta);
        ds.points(row, 1) = r * std::sin(theta);
        (*ds.labels)[row] = label;
    };
    for (std::size_t i = 0; i < spec.inner_count; ++i) emit(i, 0.0, spec.inner_radius, "1");
    for (std::size_t i = 0; i < spec.outer_count; ++i)
        emit(spec.inner_count + i, spec.ring_inner_radius, spec.ring_outer_radius, "2");
    return ds;
}

std::vector<std::pair<std::string, std::size_t>> label_histogram(const Dataset& ds) {
    if (!ds.labels) throw std::invalid_argument("label_histogram: dataset has no labels");
    std::map<std::string, std::size_t> counts;
    for (const auto& l : *ds.labels) ++counts[l];
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

Dataset minmax_rescale(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t c = 0; c < ds.dim(); ++c) {
        double lo = ds.points(0, c), hi = ds.points(0, c);
        for (std::size_t r = 1; r < ds.size(); ++r) {
            lo = std::min(lo, ds.points(r, c));
            hi = std::max(hi, ds.points(r, c));
        }
        double range = hi - lo;
        for (std::size_t r = 0; r < ds.size(); ++r)
            out.points(r, c) = range > 0.0 ? (ds.points(r, c) - lo) / range : 0.0;
    }
    return out;
}

} // namespace sepclust
