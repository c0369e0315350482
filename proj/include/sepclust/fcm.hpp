#pragma once

#include <cstdint>
#include <vector>

#include "sepclust/partition.hpp"

namespace sepclust {

struct FcmConfig {
    std::size_t c = 2;
    double fuzzifier = 2.0;       // m, strictly > 1
    double epsilon = 1e-4;        // relative center-shift tolerance
    std::size_t max_iterations = 300;
    std::uint64_t rng_seed = 0;
};

struct FcmResult {
    FuzzyPartition partition;
    std::size_t iterations = 0;
    std::vector<double> objective_trace;  // J_m after each iteration, non-increasing
};

/// Memberships induced by a fixed set of centers:
/// u_ji is proportional to d(x_i, c_j)^(-2/(m-1)), normalized per point.
/// A point coincident with one or more centers splits its membership equally
/// over the coincident centers.
Matrix fcm_memberships(const Dataset& ds, const Matrix& centers, double fuzzifier);

/// Fuzzy c-means: alternates membership and center updates until the largest
/// relative center shift drops to epsilon or max_iterations is reached.
/// Centers are initialized with c distinct data points from the seed stream.
FcmResult fcm_run(const Dataset& ds, const FcmConfig& cfg);

/// Warm-started run from the given centers (cfg.c and cfg.rng_seed ignored).
FcmResult fcm_refine(const Dataset& ds, Matrix centers, const FcmConfig& cfg);

/// J_m = sum_j sum_i u_ji^m |x_i - c_j|^2, as a plain formula over the
/// given matrices (no row-stochasticity requirement).
double fcm_objective(const Dataset& ds, const Matrix& centers, const Matrix& memberships,
                     double fuzzifier);
double fcm_objective(const Dataset& ds, const FuzzyPartition& fp, double fuzzifier);

/// Global fuzzy separation-compactness SC of the scheme. Larger is better.
/// Cluster membership is by maximum membership; singleton clusters and points
/// coincident with their center are excluded from the compactness sums.
double fuzzy_sc(const Dataset& ds, const FuzzyPartition& fp);

/// Local separation-compactness sc_j of one (non-singleton) cluster; the
/// merge candidate is the cluster with the smallest value.
double fuzzy_local_sc(const Dataset& ds, const FuzzyPartition& fp, std::size_t cluster);

/// Score s(j) = (column-j membership mass) / (points hard-assigned to j);
/// the split candidate is the cluster with the smallest value.
double fuzzy_score(const FuzzyPartition& fp, std::size_t cluster);

enum class AutoMode { merge, split };

struct FuzzySweepEntry {
    std::size_t c = 0;
    double sc = 0.0;
    std::vector<std::size_t> cardinalities;  // of the defuzzified scheme
    double wall_seconds = 0.0;
};

struct FuzzyAutoResult {
    FuzzyPartition best;
    std::size_t c_opt = 0;
    double best_sc = 0.0;
    std::vector<FuzzySweepEntry> sweep;
};

/// Automatic cluster-count search around FCM. Merge mode starts at
/// c = floor(sqrt(N)) and repeatedly deletes the worst (min sc_j) cluster
/// down to c = 2; split mode starts at c = 2 and repeatedly splits the
/// min-s(j) cluster up to floor(sqrt(N)). The scheme with maximal SC wins;
/// on ties the earlier one is kept.
FuzzyAutoResult fuzzy_auto(const Dataset& ds, AutoMode mode, const FcmConfig& cfg);

} // namespace sepclust
