#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "sepclust/partition.hpp"

namespace sepclust {

/// Local compactness flavor. The printed formula (`literal`,
/// Var^2 / sum d^2) scores loose clusters higher, which inverts the
/// worst-cluster selection rule, so `inverse_variance` (1 / mean squared
/// member distance) is the default.
enum class CmpVariant { inverse_variance, literal };

double mse(const Dataset& ds, const HardPartition& hp);

/// min inter-cluster single-linkage distance / max cluster diameter.
/// Throws UndefinedIndexError when every cluster has zero diameter.
double dunn(const Dataset& ds, const HardPartition& hp);

/// Davies-Bouldin with mean member-to-own-center distances and
/// center-to-center separation. Throws UndefinedIndexError on duplicate
/// centers.
double davies_bouldin(const Dataset& ds, const HardPartition& hp);

/// Var_j = sum of squared member distances / cardinality^2 (feeds Cmp).
double var_global(const Dataset& ds, const ClusterView& cluster);

/// Var(C_j) = mean squared member distance (feeds the split selection).
double var_split(const Dataset& ds, const ClusterView& cluster);

/// Cmp = k / sum of Var_j over the k non-singleton clusters.
double hard_cmp(const Dataset& ds, const HardPartition& hp);

/// Sep = ((sum over clusters of the squared distance to the nearest other
/// center) / c)^2.
double hard_sep(const HardPartition& hp);

/// SepCmp = (k/c) * Sep * Cmp; the best scheme in a sweep maximizes it.
double hard_sep_cmp(const Dataset& ds, const HardPartition& hp);

/// sep_j = squared distance from center j to its nearest other center.
double hard_local_sep(const HardPartition& hp, std::size_t cluster);

/// cmp_j of a non-singleton cluster, per the chosen variant.
double hard_local_cmp(const Dataset& ds, const ClusterView& cluster,
                      CmpVariant variant = CmpVariant::inverse_variance);

/// sepcmp_j = sep_j * cmp_j; the merge candidate minimizes it.
double hard_local_sep_cmp(const Dataset& ds, const HardPartition& hp, std::size_t cluster,
                          CmpVariant variant = CmpVariant::inverse_variance);

struct PerClusterIndices {
    std::size_t cardinality = 0;
    double sep_j = 0.0;
    std::optional<double> cmp_j;      // absent for singleton / zero-spread clusters
    std::optional<double> sepcmp_j;
    double var_global = 0.0;
    double var_split = 0.0;
};

struct IndexReport {
    double mse = 0.0;
    double dunn = 0.0;
    double davies_bouldin = 0.0;
    double sep = 0.0;
    double cmp = 0.0;
    double sep_cmp = 0.0;
    std::vector<PerClusterIndices> per_cluster;
};

IndexReport compute_index_report(const Dataset& ds, const HardPartition& hp,
                                 CmpVariant variant = CmpVariant::inverse_variance);

nlohmann::ordered_json to_json(const IndexReport& report);

} // namespace sepclust
