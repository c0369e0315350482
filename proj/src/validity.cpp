#include "sepclust/validity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sepclust/errors.hpp"

namespace sepclust {
namespace {

void require_clusters(const HardPartition& hp, std::size_t minimum) {
    if (hp.cluster_count() < minimum)
        throw std::invalid_argument("index needs at least " + std::to_string(minimum) + " clusters");
}

} // namespace

double mse(const Dataset& ds, const HardPartition& hp) {
    double total = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        total += squared_distance(ds.points.row(i), hp.centers.row(hp.assignment[i]));
    return total / static_cast<double>(ds.size());
}

double dunn(const Dataset& ds, const HardPartition& hp) {
    require_clusters(hp, 2);
    auto members = hp.members();
    for (const auto& m : members)
        if (m.empty()) throw std::invalid_argument("dunn: empty cluster");

    double max_diameter = 0.0;
    for (const auto& m : members)
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = a + 1; b < m.size(); ++b)
                max_diameter = std::max(max_diameter,
                                        euclidean(ds.points.row(m[a]), ds.points.row(m[b])));
    if (max_diameter == 0.0)
        throw UndefinedIndexError("dunn: every cluster has zero diameter");

    double min_linkage = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < members.size(); ++j)
        for (std::size_t l = j + 1; l < members.size(); ++l)
            for (std::size_t a : members[j])
                for (std::size_t b : members[l])
                    min_linkage = std::min(min_linkage, euclidean(ds.points.row(a), ds.points.row(b)));
    return min_linkage / max_diameter;
}

double davies_bouldin(const Dataset& ds, const HardPartition& hp) {
    require_clusters(hp, 2);
    std::size_t c = hp.cluster_count();
    auto counts = hp.cardinalities();
    for (auto n : counts)
        if (n == 0) throw std::invalid_argument("davies_bouldin: empty cluster");

    // D_c: mean distance from a cluster's members to its own center
    std::vector<double> spread(c, 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i)
        spread[hp.assignment[i]] += euclidean(ds.points.row(i), hp.centers.row(hp.assignment[i]));
    for (std::size_t j = 0; j < c; ++j) spread[j] /= static_cast<double>(counts[j]);

    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        double worst = 0.0;
        for (std::size_t l = 0; l < c; ++l) {
            if (l == j) continue;
            double gap = euclidean(hp.centers.row(j), hp.centers.row(l));
            if (gap == 0.0) throw UndefinedIndexError("davies_bouldin: duplicate centers");
            worst = std::max(worst, (spread[j] + spread[l]) / gap);
        }
        total += worst;
    }
    return total / static_cast<double>(c);
}

double var_global(const Dataset& ds, const ClusterView& cluster) {
    if (cluster.indices.empty()) throw std::invalid_argument("var_global: empty cluster");
    double ss = 0.0;
    for (std::size_t i : cluster.indices)
        ss += squared_distance(ds.points.row(i), std::span<const double>(cluster.center));
    double card = static_cast<double>(cluster.cardinality());
    return ss / (card * card);
}

double var_split(const Dataset& ds, const ClusterView& cluster) {
    if (cluster.indices.empty()) throw std::invalid_argument("var_split: empty cluster");
    double ss = 0.0;
    for (std::size_t i : cluster.indices)
        ss += squared_distance(ds.points.row(i), std::span<const double>(cluster.center));
    return ss / static_cast<double>(cluster.cardinality());
}

double hard_cmp(const Dataset& ds, const HardPartition& hp) {
    std::size_t k = 0;
    double variance_sum = 0.0;
    for (std::size_t j = 0; j < hp.cluster_count(); ++j) {
        ClusterView view = cluster_view(ds, hp, j);
        if (view.cardinality() <= 1) continue;
        ++k;
        variance_sum += var_global(ds, view);
    }
    if (k == 0) throw UndefinedIndexError("cmp: every cluster is a singleton");
    if (variance_sum == 0.0) throw UndefinedIndexError("cmp: zero total variance");
    return static_cast<double>(k) / variance_sum;
}

double hard_sep(const HardPartition& hp) {
    require_clusters(hp, 2);
    std::size_t c = hp.cluster_count();
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) sum += hard_local_sep(hp, j);
    double mean = sum / static_cast<double>(c);
    return mean * mean;  // the outer square is part of the definition
}

double hard_sep_cmp(const Dataset& ds, const HardPartition& hp) {
    std::size_t k = 0;
    for (auto n : hp.cardinalities())
        if (n > 1) ++k;
    double prefactor = static_cast<double>(k) / static_cast<double>(hp.cluster_count());
    return prefactor * hard_sep(hp) * hard_cmp(ds, hp);
}

double hard_local_sep(const HardPartition& hp, std::size_t cluster) {
    require_clusters(hp, 2);
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < hp.cluster_count(); ++l)
        if (l != cluster)
            nearest = std::min(nearest, squared_distance(hp.centers.row(cluster), hp.centers.row(l)));
    return nearest;
}

double hard_local_cmp(const Dataset& ds, const ClusterView& cluster, CmpVariant variant) {
    if (cluster.cardinality() <= 1) throw UndefinedIndexError("cmp_j: singleton cluster");
    double ss = 0.0;
    for (std::size_t i : cluster.indices)
        ss += squared_distance(ds.points.row(i), std::span<const double>(cluster.center));
    if (ss == 0.0) throw UndefinedIndexError("cmp_j: zero-spread cluster");
    if (variant == CmpVariant::inverse_variance)
        return static_cast<double>(cluster.cardinality()) / ss;  // 1 / var_split
    double vg = var_global(ds, cluster);
    return vg * vg / ss;
}

double hard_local_sep_cmp(const Dataset& ds, const HardPartition& hp, std::size_t cluster,
                          CmpVariant variant) {
    return hard_local_sep(hp, cluster) * hard_local_cmp(ds, cluster_view(ds, hp, cluster), variant);
}

IndexReport compute_index_report(const Dataset& ds, const HardPartition& hp, CmpVariant variant) {
    IndexReport report;
    report.mse = mse(ds, hp);
    report.dunn = dunn(ds, hp);
    report.davies_bouldin = davies_bouldin(ds, hp);
    report.sep = hard_sep(hp);
    report.cmp = hard_cmp(ds, hp);
    std::size_t k = 0;
    for (auto n : hp.cardinalities())
        if (n > 1) ++k;
    report.sep_cmp = (static_cast<double>(k) / static_cast<double>(hp.cluster_count())) *
                     report.sep * report.cmp;

    for (std::size_t j = 0; j < hp.cluster_count(); ++j) {
        ClusterView view = cluster_view(ds, hp, j);
        PerClusterIndices row;
        row.cardinality = view.cardinality();
        row.sep_j = hard_local_sep(hp, j);
        row.var_global = var_global(ds, view);
        row.var_split = var_split(ds, view);
        try {
            row.cmp_j = hard_local_cmp(ds, view, variant);
            row.sepcmp_j = row.sep_j * *row.cmp_j;
        } catch (const UndefinedIndexError&) {
            // singleton or zero-spread: leave the local pair absent
        }
        report.per_cluster.push_back(std::move(row));
    }
    return report;
}

nlohmann::ordered_json to_json(const IndexReport& report) {
    nlohmann::ordered_json j;
    j["mse"] = report.mse;
    j["dunn"] = report.dunn;
    j["davies_bouldin"] = report.davies_bouldin;
    j["sep"] = report.sep;
    j["cmp"] = report.cmp;
    j["sep_cmp"] = report.sep_cmp;
    j["per_cluster"] = nlohmann::ordered_json::array();
    for (const auto& row : report.per_cluster) {
        nlohmann::ordered_json r;
        r["cardinality"] = row.cardinality;
        r["sep_j"] = row.sep_j;
        r["cmp_j"] = row.cmp_j ? nlohmann::ordered_json(*row.cmp_j) : nlohmann::ordered_json(nullptr);
        r["sepcmp_j"] =
            row.sepcmp_j ? nlohmann::ordered_json(*row.sepcmp_j) : nlohmann::ordered_json(nullptr);
        r["var_global"] = row.var_global;
        r["var_split"] = row.var_split;
        j["per_cluster"].push_back(std::move(r));
    }
    return j;
}

} // namespace sepclust
