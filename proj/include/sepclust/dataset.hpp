#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sepclust/matrix.hpp"

namespace sepclust {

/// An N x M set of real-valued points with optional ground-truth labels.
struct Dataset {
    Matrix points;                                    // N x M, finite entries
    std::optional<std::vector<std::string>> labels;   // size N when present
    std::string name;

    std::size_t size() const { return points.rows(); }
    std::size_t dim() const { return points.cols(); }
};

/// Geometry of the synthetic nested-rings dataset: a uniform disk of
/// `inner_count` points inside a uniform annulus of `outer_count` points.
struct ConcentricSpec {
    std::size_t inner_count = 1579;
    std::size_t outer_count = 921;
    double inner_radius = 1.0;
    double ring_inner_radius = 2.0;
    double ring_outer_radius = 3.0;
    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument unless counts are positive and
    /// inner_radius < ring_inner_radius < ring_outer_radius.
    void validate() const;
};

/// Picks the label column by 0-based index or by header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

struct CsvOptions {
    bool has_header = false;
    std::optional<ColumnSelector> label_column;
};

/// Loads a comma-separated numeric file. Every non-label cell must parse as
/// a finite real; rows must have equal arity. Throws CsvError with the
/// offending 1-based row/column on malformed input.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes a dataset back out (header + shortest round-trip number format),
/// so load_csv(save_csv(ds)) reproduces ds exactly.
void save_csv(const Dataset& ds, const std::filesystem::path& path);

Dataset generate_concentric(const ConcentricSpec& spec);

/// Per-label counts, sorted by descending count (ties by label).
/// Throws std::invalid_argument when the dataset has no labels.
std::vector<std::pair<std::string, std::size_t>> label_histogram(const Dataset& ds);

/// Per-feature rescale to [0, 1]; constant features map to 0.
Dataset minmax_rescale(const Dataset& ds);

} // namespace sepclust
