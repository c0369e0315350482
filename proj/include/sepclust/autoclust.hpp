#pragma once

#include <cstdint>
#include <vector>

#include "sepclust/kmeans.hpp"
#include "sepclust/validity.hpp"

namespace sepclust {

/// Which two members of the split cluster seed its 2-means: the pair with
/// the largest total distance to the other members (the default) or to the
/// other clusters' centers.
enum class SplitSeedRule { member_distances, center_distances };

struct AutoConfig {
    std::size_t max_iterations = 300;
    std::uint64_t rng_seed = 0;
    std::size_t restarts = 10;
    CmpVariant cmp_variant = CmpVariant::inverse_variance;
    SplitSeedRule split_seed_rule = SplitSeedRule::member_distances;
};

/// Bezdek's bound on the cluster count: floor(sqrt(N)), at least 2.
/// Requires N >= 4.
std::size_t c_max_rule(std::size_t n);

/// One merge: delete the worst cluster (min sepcmp_j among non-singleton
/// clusters with defined cmp_j; if none qualifies, min sep_j), reassign its
/// points to the nearest survivor, recompute survivor centers as member
/// means, then refine with warm-started k-means. c must be >= 3.
HardPartition merge_step(const Dataset& ds, const HardPartition& hp, const AutoConfig& cfg);

/// One split: take the cluster with the largest Var(C_j), seed two centers
/// inside it by the configured rule, and 2-means its members. Only the
/// selected cluster changes; the result has exactly c + 1 clusters.
HardPartition split_step(const Dataset& ds, const HardPartition& hp, const AutoConfig& cfg);

struct SweepRecord {
    std::size_t c = 0;
    IndexReport indices;
    std::vector<std::size_t> cardinalities;
    double wall_seconds = 0.0;
};

struct AutoResult {
    HardPartition best;
    std::size_t c_opt = 0;
    std::vector<SweepRecord> sweep;
};

enum class AutoAlgorithm { emk, esk };

/// Merge-based search: k-means at c = floor(sqrt(N)), then merge steps down
/// to c = 2, scoring SepCmp at every c. Ties on the maximum go to smaller c.
AutoResult emk_means(const Dataset& ds, const AutoConfig& cfg);

/// Split-based search: k-means at c = 2, then split steps (each followed by
/// a warm-started global k-means refinement) up to c = floor(sqrt(N)).
AutoResult esk_means(const Dataset& ds, const AutoConfig& cfg);

} // namespace sepclust
