#pragma once

#include <cstdint>
#include <vector>

#include "sepclust/partition.hpp"

namespace sepclust {

enum class EmptyClusterPolicy {
    reseed_farthest,   // relocate an emptied center to the point farthest from it
    drop               // remove the cluster, shrinking c
};

struct KMeansConfig {
    std::size_t c = 2;
    std::size_t max_iterations = 300;
    std::uint64_t rng_seed = 0;
    std::size_t restarts = 10;
    EmptyClusterPolicy empty_cluster_policy = EmptyClusterPolicy::reseed_farthest;
};

struct KMeansResult {
    HardPartition partition;
    double criterion = 0.0;              // E of the returned partition
    std::size_t iterations = 0;          // iterations of the winning restart
    std::vector<double> criterion_trace; // E after each iteration, non-increasing
};

/// Best-of-restarts k-means. Each restart seeds its centers with c distinct
/// data points drawn from a seed-derived stream and iterates
/// assign/recompute until the assignment stops changing. Restarts are
/// reduced by (criterion, restart index), so the result is deterministic.
KMeansResult kmeans_run(const Dataset& ds, const KMeansConfig& cfg);

/// Single warm-started run from the given centers (no randomness except the
/// empty-cluster policy, which is itself deterministic).
KMeansResult kmeans_refine(const Dataset& ds, Matrix centers, std::size_t max_iterations = 300,
                           EmptyClusterPolicy policy = EmptyClusterPolicy::reseed_farthest);

/// E = 1/2 sum_j sum_i delta_ji |x_i - c_j|^2.
double kmeans_criterion(const Dataset& ds, const HardPartition& hp);

} // namespace sepclust
