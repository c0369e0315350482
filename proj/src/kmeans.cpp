#include "sepclust/kmeans.hpp"

#include <limits>
#include <stdexcept>

#include "sepclust/rng.hpp"

namespace sepclust {
namespace {

// Assignment entries are recomputed in place; every reseeded center claims
// the point it moved to, so no cluster leaves this function empty.
void reseed_empty_clusters(const Dataset& ds, Matrix& centers,
                           std::vector<std::size_t>& assignment) {
    std::vector<std::size_t> counts(centers.rows(), 0);
    for (std::size_t a : assignment) ++counts[a];
    std::vector<bool> claimed(ds.size(), false);
    for (std::size_t j = 0; j < centers.rows(); ++j) {
        if (counts[j] > 0) continue;
        double best = -1.0;
        std::size_t far = ds.size();
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (claimed[i]) continue;
            double d = squared_distance(ds.points.row(i), centers.row(j));
            if (d > best) {
                best = d;
                far = i;
            }
        }
        if (far == ds.size()) break;  // fewer unclaimed points than empty clusters
        claimed[far] = true;
        --counts[assignment[far]];
        counts[j] = 1;
        assignment[far] = j;
        centers.set_row(j, ds.points.row(far));
    }
}

void drop_empty_clusters(Matrix& centers, std::vector<std::size_t>& assignment) {
    std::vector<std::size_t> counts(centers.rows(), 0);
    for (std::size_t a : assignment) ++counts[a];
    std::vector<std::size_t> remap(centers.rows());
    std::size_t kept = 0;
    for (std::size_t j = 0; j < centers.rows(); ++j)
        if (counts[j] > 0) remap[j] = kept++;
    if (kept == centers.rows()) return;
    Matrix next(kept, centers.cols());
    for (std::size_t j = 0; j < centers.rows(); ++j)
        if (counts[j] > 0) next.set_row(remap[j], centers.row(j));
    centers = std::move(next);
    for (auto& a : assignment) a = remap[a];
}

double criterion_of(const Dataset& ds, const std::vector<std::size_t>& assignment,
                    const Matrix& centers) {
    double e = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        e += squared_distance(ds.points.row(i), centers.row(assignment[i]));
    return 0.5 * e;
}

} // namespace

double kmeans_criterion(const Dataset& ds, const HardPartition& hp) {
    return criterion_of(ds, hp.assignment, hp.centers);
}

KMeansResult kmeans_refine(const Dataset& ds, Matrix centers, std::size_t max_iterations,
                           EmptyClusterPolicy policy) {
    if (ds.size() == 0) throw std::invalid_argument("kmeans: empty dataset");
    if (centers.rows() == 0) throw std::invalid_argument("kmeans: no centers");
    if (max_iterations == 0) throw std::invalid_argument("kmeans: max_iterations must be >= 1");

    auto fix_empties = [&](std::vector<std::size_t>& assignment) {
        if (policy == EmptyClusterPolicy::reseed_farthest)
            reseed_empty_clusters(ds, centers, assignment);
        else
            drop_empty_clusters(centers, assignment);
    };

    KMeansResult result;
    std::vector<std::size_t> assignment = hard_assign(ds, centers);
    fix_empties(assignment);
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        centers = recompute_centers(ds, assignment, centers.rows());
        result.criterion_trace.push_back(criterion_of(ds, assignment, centers));
        result.iterations = iter;
        std::vector<std::size_t> next = hard_assign(ds, centers);
        fix_empties(next);
        if (next == assignment) break;
        assignment = std::move(next);
    }
    result.partition = HardPartition{std::move(centers), std::move(assignment)};
    result.criterion = result.criterion_trace.back();
    return result;
}

KMeansResult kmeans_run(const Dataset& ds, const KMeansConfig& cfg) {
    if (ds.size() == 0) throw std::invalid_argument("kmeans: empty dataset");
    if (cfg.c == 0) throw std::invalid_argument("kmeans: c must be >= 1");
    if (cfg.c > ds.size()) throw std::invalid_argument("kmeans: c exceeds the number of points");
    if (cfg.restarts == 0) throw std::invalid_argument("kmeans: restarts must be >= 1");

    KMeansResult best;
    bool have_best = false;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        auto rng = seeded_stream(cfg.rng_seed, r);
        auto picks = sample_without_replacement(rng, ds.size(), cfg.c);
        Matrix centers(cfg.c, ds.dim());
        for (std::size_t j = 0; j < cfg.c; ++j) centers.set_row(j, ds.points.row(picks[j]));
        KMeansResult candidate =
            kmeans_refine(ds, std::move(centers), cfg.max_iterations, cfg.empty_cluster_policy);
        // strict comparison keeps the earliest restart on ties
        if (!have_best || candidate.criterion < best.criterion) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

} // namespace sepclust
