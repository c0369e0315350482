#include "sepclust/autoclust.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sepclust/errors.hpp"

namespace sepclust {

std::size_t c_max_rule(std::size_t n) {
    if (n < 4) throw std::invalid_argument("c_max_rule: needs at least 4 points");
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while ((r + 1) * (r + 1) <= n) ++r;
    while (r * r > n) --r;
    return std::max<std::size_t>(r, 2);
}

HardPartition merge_step(const Dataset& ds, const HardPartition& hp, const AutoConfig& cfg) {
    std::size_t c = hp.cluster_count();
    if (c < 3) throw std::invalid_argument("merge_step: needs at least 3 clusters");

    double best_val = std::numeric_limits<double>::infinity();
    std::size_t worst = c;
    for (std::size_t j = 0; j < c; ++j) {
        try {
            double v = hard_local_sep_cmp(ds, hp, j, cfg.cmp_variant);
            if (v < best_val) {
                best_val = v;
                worst = j;
            }
        } catch (const UndefinedIndexError&) {
            // singletons and zero-spread clusters only merge as a last resort
        }
    }
    if (worst == c) {
        double least = std::numeric_limits<double>::infinity();
        worst = 0;
        for (std::size_t j = 0; j < c; ++j) {
            double sep = hard_local_sep(hp, j);
            if (sep < least) {
                least = sep;
                worst = j;
            }
        }
    }

    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < c; ++j)
        if (j != worst) keep.push_back(j);
    Matrix survivors(keep.size(), ds.dim());
    for (std::size_t n = 0; n < keep.size(); ++n) survivors.set_row(n, hp.centers.row(keep[n]));

    std::vector<std::size_t> assignment(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (hp.assignment[i] != worst) {
            assignment[i] = static_cast<std::size_t>(
                std::lower_bound(keep.begin(), keep.end(), hp.assignment[i]) - keep.begin());
        } else {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t n = 0; n < keep.size(); ++n) {
                double d = squared_distance(ds.points.row(i), survivors.row(n));
                if (d < best) {
                    best = d;
                    best_j = n;
                }
            }
            assignment[i] = best_j;
        }
    }

    Matrix centers = recompute_centers(ds, assignment, keep.size());
    return kmeans_refine(ds, std::move(centers), cfg.max_iterations).partition;
}

HardPartition split_step(const Dataset& ds, const HardPartition& hp, const AutoConfig& cfg) {
    std::size_t c = hp.cluster_count();
    double widest = -1.0;
    std::size_t target = c;
    for (std::size_t j = 0; j < c; ++j) {
        ClusterView view = cluster_view(ds, hp, j);
        if (view.cardinality() < 2) continue;
        double v = var_split(ds, view);
        if (v > widest) {
            widest = v;
            target = j;
        }
    }
    if (target == c) throw std::invalid_argument("split_step: no splittable cluster");

    ClusterView view = cluster_view(ds, hp, target);
    Dataset sub;
    sub.points = Matrix(view.cardinality(), ds.dim());
    for (std::size_t n = 0; n < view.indices.size(); ++n)
        sub.points.set_row(n, ds.points.row(view.indices[n]));

    // Seed with the two members farthest in total distance, either to the
    // rest of the member set or to the other clusters' centers.
    std::vector<double> score(view.cardinality(), 0.0);
    if (cfg.split_seed_rule == SplitSeedRule::member_distances) {
        for (std::size_t a = 0; a < score.size(); ++a)
            for (std::size_t b = 0; b < score.size(); ++b)
                if (a != b) score[a] += euclidean(sub.points.row(a), sub.points.row(b));
    } else {
        for (std::size_t a = 0; a < score.size(); ++a)
            for (std::size_t j = 0; j < c; ++j)
                if (j != target) score[a] += euclidean(sub.points.row(a), hp.centers.row(j));
    }
    std::vector<std::size_t> order(score.size());
    for (std::size_t n = 0; n < order.size(); ++n) order[n] = n;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    Matrix seeds(2, ds.dim());
    seeds.set_row(0, sub.points.row(order[0]));
    seeds.set_row(1, sub.points.row(order[1]));
    KMeansResult halves = kmeans_refine(sub, std::move(seeds), cfg.max_iterations);

    HardPartition out;
    out.centers = Matrix(c + 1, ds.dim());
    std::size_t n = 0;
    std::vector<std::size_t> remap(c);
    for (std::size_t j = 0; j < c; ++j) {
        if (j == target) continue;
        remap[j] = n;
        out.centers.set_row(n++, hp.centers.row(j));
    }
    out.centers.set_row(n, halves.partition.centers.row(0));
    out.centers.set_row(n + 1, halves.partition.centers.row(1));

    out.assignment.resize(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (hp.assignment[i] != target) out.assignment[i] = remap[hp.assignment[i]];
    for (std::size_t m = 0; m < view.indices.size(); ++m)
        out.assignment[view.indices[m]] = n + halves.partition.assignment[m];
    return out;
}

namespace {

AutoResult run_sweep(const Dataset& ds, const AutoConfig& cfg, bool merging) {
    if (ds.size() < 4) throw std::invalid_argument("auto clustering: needs at least 4 points");
    std::size_t c_max = c_max_rule(ds.size());

    AutoResult result;
    double best_val = -std::numeric_limits<double>::infinity();
    auto record = [&](const HardPartition& hp, double seconds) {
        SweepRecord rec;
        rec.c = hp.cluster_count();
        rec.indices = compute_index_report(ds, hp, cfg.cmp_variant);
        rec.cardinalities = hp.cardinalities();
        rec.wall_seconds = seconds;
        // ties go to the smaller cluster count
        if (rec.indices.sep_cmp > best_val ||
            (rec.indices.sep_cmp == best_val && rec.c < result.c_opt)) {
            best_val = rec.indices.sep_cmp;
            result.c_opt = rec.c;
            result.best = hp;
        }
        result.sweep.push_back(std::move(rec));
    };

    using clock = std::chrono::steady_clock;
    KMeansConfig start_cfg;
    start_cfg.c = merging ? c_max : 2;
    start_cfg.max_iterations = cfg.max_iterations;
    start_cfg.rng_seed = cfg.rng_seed;
    start_cfg.restarts = cfg.restarts;

    auto t0 = clock::now();
    HardPartition current = kmeans_run(ds, start_cfg).partition;
    record(current, std::chrono::duration<double>(clock::now() - t0).count());

    if (merging) {
        while (current.cluster_count() > 2) {
            t0 = clock::now();
            current = merge_step(ds, current, cfg);
            record(current, std::chrono::duration<double>(clock::now() - t0).count());
        }
    } else {
        while (current.cluster_count() < c_max) {
            t0 = clock::now();
            current = split_step(ds, current, cfg);
            current = kmeans_refine(ds, std::move(current.centers), cfg.max_iterations).partition;
            record(current, std::chrono::duration<double>(clock::now() - t0).count());
        }
    }
    return result;
}

} // namespace

AutoResult emk_means(const Dataset& ds, const AutoConfig& cfg) {
    return run_sweep(ds, cfg, true);
}

AutoResult esk_means(const Dataset& ds, const AutoConfig& cfg) {
    return run_sweep(ds, cfg, false);
}

} // namespace sepclust
