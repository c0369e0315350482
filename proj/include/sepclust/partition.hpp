#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "sepclust/dataset.hpp"
#include "sepclust/matrix.hpp"

namespace sepclust {

/// Crisp clustering: every point belongs to exactly one of the c clusters.
struct HardPartition {
    Matrix centers;                        // c x M
    std::vector<std::size_t> assignment;   // N entries in [0, c)

    std::size_t cluster_count() const { return centers.rows(); }
    std::vector<std::size_t> cardinalities() const;
    /// Member point indices per cluster.
    std::vector<std::vector<std::size_t>> members() const;
};

/// Soft clustering: row i of `memberships` is point i's distribution over
/// the c clusters (entries in [0,1], summing to 1).
struct FuzzyPartition {
    Matrix centers;       // c x M
    Matrix memberships;   // N x c

    std::size_t cluster_count() const { return centers.rows(); }
};

/// One cluster of a hard partition, detached from the rest of the scheme.
struct ClusterView {
    std::vector<std::size_t> indices;
    std::vector<double> center;

    std::size_t cardinality() const { return indices.size(); }
    bool singleton() const { return indices.size() == 1; }
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean(std::span<const double> a, std::span<const double> b);

/// Nearest-center assignment; ties go to the lowest cluster index.
std::vector<std::size_t> hard_assign(const Dataset& ds, const Matrix& centers);

/// Arithmetic mean of each cluster's members. Throws EmptyClusterError
/// (naming the cluster) instead of averaging an empty cluster.
Matrix recompute_centers(const Dataset& ds, const std::vector<std::size_t>& assignment,
                         std::size_t cluster_count);

/// Maximum-membership assignment; ties go to the lowest cluster index.
HardPartition defuzzify(const FuzzyPartition& fp);

/// Row-stochastic check (tolerance 1e-9) plus entry range checks.
void validate(const FuzzyPartition& fp);

ClusterView cluster_view(const Dataset& ds, const HardPartition& hp, std::size_t cluster);

nlohmann::ordered_json to_json(const HardPartition& hp);
nlohmann::ordered_json to_json(const FuzzyPartition& fp);
HardPartition hard_partition_from_json(const nlohmann::json& j);
FuzzyPartition fuzzy_partition_from_json(const nlohmann::json& j);

} // namespace sepclust
