#include "sepclust/fcm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sepclust/errors.hpp"
#include "sepclust/kmeans.hpp"
#include "sepclust/rng.hpp"

namespace sepclust {
namespace {

void check_config(const FcmConfig& cfg, std::size_t n) {
    if (cfg.c < 2) throw std::invalid_argument("fcm: c must be >= 2");
    if (cfg.c > n) throw std::invalid_argument("fcm: c exceeds the number of points");
    if (!(cfg.fuzzifier > 1.0)) throw std::invalid_argument("fcm: fuzzifier must be > 1");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("fcm: epsilon must be > 0");
    if (cfg.max_iterations == 0) throw std::invalid_argument("fcm: max_iterations must be >= 1");
}

Matrix weighted_centers(const Dataset& ds, const Matrix& memberships, const Matrix& previous,
                        double fuzzifier) {
    std::size_t c = memberships.cols();
    Matrix centers(c, ds.dim());
    std::vector<double> mass(c, 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            double w = std::pow(memberships(i, j), fuzzifier);
            mass[j] += w;
            for (std::size_t f = 0; f < ds.dim(); ++f) centers(j, f) += w * ds.points(i, f);
        }
    }
    for (std::size_t j = 0; j < c; ++j) {
        if (mass[j] > 0.0) {
            for (std::size_t f = 0; f < ds.dim(); ++f) centers(j, f) /= mass[j];
        } else {
            centers.set_row(j, previous.row(j));  // cluster got no mass at all
        }
    }
    return centers;
}

double relative_shift(const Matrix& before, const Matrix& after) {
    double worst = 0.0;
    for (std::size_t j = 0; j < before.rows(); ++j) {
        double shift = euclidean(before.row(j), after.row(j));
        double norm = 0.0;
        for (double v : after.row(j)) norm += v * v;
        norm = std::sqrt(norm);
        worst = std::max(worst, norm > 0.0 ? shift / norm : shift);
    }
    return worst;
}

FcmResult fcm_iterate(const Dataset& ds, Matrix centers, const FcmConfig& cfg) {
    FcmResult result;
    Matrix memberships;
    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        memberships = fcm_memberships(ds, centers, cfg.fuzzifier);
        Matrix next = weighted_centers(ds, memberships, centers, cfg.fuzzifier);
        result.objective_trace.push_back(fcm_objective(ds, next, memberships, cfg.fuzzifier));
        result.iterations = iter;
        double shift = relative_shift(centers, next);
        centers = std::move(next);
        if (shift <= cfg.epsilon) break;
    }
    result.partition = FuzzyPartition{std::move(centers), std::move(memberships)};
    return result;
}

std::vector<std::size_t> defuzzified_cardinalities(const FuzzyPartition& fp) {
    std::vector<std::size_t> counts(fp.cluster_count(), 0);
    for (std::size_t a : defuzzify(fp).assignment) ++counts[a];
    return counts;
}

} // namespace

Matrix fcm_memberships(const Dataset& ds, const Matrix& centers, double fuzzifier) {
    if (!(fuzzifier > 1.0)) throw std::invalid_argument("fcm: fuzzifier must be > 1");
    std::size_t c = centers.rows();
    Matrix memberships(ds.size(), c);
    double exponent = 1.0 / (fuzzifier - 1.0);
    std::vector<double> d2(c);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::size_t coincident = 0;
        for (std::size_t j = 0; j < c; ++j) {
            d2[j] = squared_distance(ds.points.row(i), centers.row(j));
            if (d2[j] == 0.0) ++coincident;
        }
        if (coincident > 0) {
            for (std::size_t j = 0; j < c; ++j)
                memberships(i, j) = d2[j] == 0.0 ? 1.0 / static_cast<double>(coincident) : 0.0;
            continue;
        }
        // u_ij = 1 / sum_k (d2_j / d2_k)^(1/(m-1)), stable against tiny distances
        for (std::size_t j = 0; j < c; ++j) {
            double denom = 0.0;
            for (std::size_t k = 0; k < c; ++k) denom += std::pow(d2[j] / d2[k], exponent);
            memberships(i, j) = 1.0 / denom;
        }
    }
    return memberships;
}

FcmResult fcm_run(const Dataset& ds, const FcmConfig& cfg) {
    check_config(cfg, ds.size());
    auto rng = seeded_stream(cfg.rng_seed);
    auto picks = sample_without_replacement(rng, ds.size(), cfg.c);
    Matrix centers(cfg.c, ds.dim());
    for (std::size_t j = 0; j < cfg.c; ++j) centers.set_row(j, ds.points.row(picks[j]));
    return fcm_iterate(ds, std::move(centers), cfg);
}

FcmResult fcm_refine(const Dataset& ds, Matrix centers, const FcmConfig& cfg) {
    if (centers.rows() < 2) throw std::invalid_argument("fcm: c must be >= 2");
    if (!(cfg.fuzzifier > 1.0)) throw std::invalid_argument("fcm: fuzzifier must be > 1");
    return fcm_iterate(ds, std::move(centers), cfg);
}

double fcm_objective(const Dataset& ds, const Matrix& centers, const Matrix& memberships,
                     double fuzzifier) {
    double j_m = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < centers.rows(); ++j)
            j_m += std::pow(memberships(i, j), fuzzifier) *
                   squared_distance(ds.points.row(i), centers.row(j));
    return j_m;
}

double fcm_objective(const Dataset& ds, const FuzzyPartition& fp, double fuzzifier) {
    return fcm_objective(ds, fp.centers, fp.memberships, fuzzifier);
}

double fuzzy_sc(const Dataset& ds, const FuzzyPartition& fp) {
    std::size_t c = fp.cluster_count();
    if (c < 2) throw std::invalid_argument("fuzzy_sc: needs at least 2 clusters");
    HardPartition hard = defuzzify(fp);
    auto counts = hard.cardinalities();

    std::size_t k = 0;
    for (auto n : counts)
        if (n > 1) ++k;
    if (k == 0) throw UndefinedIndexError("fuzzy_sc: every cluster is a singleton");

    double separation = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < c; ++l)
            if (l != j) nearest = std::min(nearest, squared_distance(fp.centers.row(j), fp.centers.row(l)));
        separation += nearest;
    }

    double compactness = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        if (counts[j] <= 1) continue;  // singletons stay out of the denominator
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (hard.assignment[i] != j) continue;
            double d2 = squared_distance(ds.points.row(i), fp.centers.row(j));
            if (d2 == 0.0) continue;  // x_i coincident with the center
            double u2 = fp.memberships(i, j) * fp.memberships(i, j);
            num += u2 * d2;
            den += u2;
        }
        if (den > 0.0) compactness += num / den;
    }
    if (compactness == 0.0)
        throw UndefinedIndexError("fuzzy_sc: zero compactness denominator");
    return (static_cast<double>(k) / static_cast<double>(c)) * separation / compactness;
}

double fuzzy_local_sc(const Dataset& ds, const FuzzyPartition& fp, std::size_t cluster) {
    std::size_t c = fp.cluster_count();
    if (c < 2) throw std::invalid_argument("fuzzy_local_sc: needs at least 2 clusters");
    HardPartition hard = defuzzify(fp);
    std::size_t card = 0;
    for (std::size_t a : hard.assignment)
        if (a == cluster) ++card;
    if (card <= 1) throw UndefinedIndexError("fuzzy_local_sc: singleton cluster");

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (hard.assignment[i] != cluster) continue;
        double d2 = squared_distance(ds.points.row(i), fp.centers.row(cluster));
        if (d2 == 0.0) continue;
        double u2 = fp.memberships(i, cluster) * fp.memberships(i, cluster);
        num += u2;
        den += u2 * d2;
    }
    if (den == 0.0) throw UndefinedIndexError("fuzzy_local_sc: zero-spread cluster");

    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < c; ++l)
        if (l != cluster)
            nearest = std::min(nearest, squared_distance(fp.centers.row(cluster), fp.centers.row(l)));
    return nearest * num / den;
}

double fuzzy_score(const FuzzyPartition& fp, std::size_t cluster) {
    std::size_t card = 0;
    for (std::size_t a : defuzzify(fp).assignment)
        if (a == cluster) ++card;
    if (card == 0) throw UndefinedIndexError("fuzzy_score: empty cluster");
    double mass = 0.0;
    for (std::size_t i = 0; i < fp.memberships.rows(); ++i) mass += fp.memberships(i, cluster);
    return mass / static_cast<double>(card);
}

namespace {

// Delete `worst`, move its points to their best surviving cluster, and seed
// the next FCM run with the member means of the surviving clusters.
Matrix merged_seed_centers(const Dataset& ds, const FuzzyPartition& fp, std::size_t worst) {
    std::size_t c = fp.cluster_count();
    HardPartition hard = defuzzify(fp);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < c; ++j)
        if (j != worst) keep.push_back(j);

    std::vector<std::size_t> assignment(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (hard.assignment[i] != worst) {
            assignment[i] = static_cast<std::size_t>(
                std::lower_bound(keep.begin(), keep.end(), hard.assignment[i]) - keep.begin());
        } else {
            double best = -1.0;
            std::size_t best_j = 0;
            for (std::size_t n = 0; n < keep.size(); ++n) {
                double u = fp.memberships(i, keep[n]);
                if (u > best) {
                    best = u;
                    best_j = n;
                }
            }
            assignment[i] = best_j;
        }
    }

    Matrix centers(keep.size(), ds.dim());
    std::vector<std::size_t> counts(keep.size(), 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        ++counts[assignment[i]];
        for (std::size_t f = 0; f < ds.dim(); ++f) centers(assignment[i], f) += ds.points(i, f);
    }
    for (std::size_t n = 0; n < keep.size(); ++n) {
        if (counts[n] > 0)
            for (std::size_t f = 0; f < ds.dim(); ++f) centers(n, f) /= static_cast<double>(counts[n]);
        else
            centers.set_row(n, fp.centers.row(keep[n]));
    }
    return centers;
}

// Replace the split cluster's center with two seeds refined by 2-means over
// its members; the two-farthest-total-distance rule picks the seeds.
Matrix split_seed_centers(const Dataset& ds, const FuzzyPartition& fp, std::size_t target) {
    HardPartition hard = defuzzify(fp);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (hard.assignment[i] == target) members.push_back(i);

    Dataset sub;
    sub.points = Matrix(members.size(), ds.dim());
    for (std::size_t n = 0; n < members.size(); ++n) sub.points.set_row(n, ds.points.row(members[n]));

    std::vector<double> score(members.size(), 0.0);
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < members.size(); ++b)
            if (a != b) score[a] += euclidean(sub.points.row(a), sub.points.row(b));
    std::vector<std::size_t> order(members.size());
    for (std::size_t n = 0; n < order.size(); ++n) order[n] = n;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    Matrix seeds(2, ds.dim());
    seeds.set_row(0, sub.points.row(order[0]));
    seeds.set_row(1, sub.points.row(order[1]));
    KMeansResult split = kmeans_refine(sub, std::move(seeds));

    Matrix centers(fp.cluster_count() + 1, ds.dim());
    std::size_t n = 0;
    for (std::size_t j = 0; j < fp.cluster_count(); ++j)
        if (j != target) centers.set_row(n++, fp.centers.row(j));
    centers.set_row(n++, split.partition.centers.row(0));
    centers.set_row(n, split.partition.centers.row(1));
    return centers;
}

} // namespace

FuzzyAutoResult fuzzy_auto(const Dataset& ds, AutoMode mode, const FcmConfig& cfg) {
    if (ds.size() < 4) throw std::invalid_argument("fuzzy_auto: needs at least 4 points");
    std::size_t c_max = static_cast<std::size_t>(std::sqrt(static_cast<double>(ds.size())));
    while ((c_max + 1) * (c_max + 1) <= ds.size()) ++c_max;
    while (c_max * c_max > ds.size()) --c_max;
    c_max = std::max<std::size_t>(c_max, 2);

    FuzzyAutoResult result;
    auto record = [&](const FuzzyPartition& fp, double seconds) {
        double sc = fuzzy_sc(ds, fp);
        result.sweep.push_back(
            FuzzySweepEntry{fp.cluster_count(), sc, defuzzified_cardinalities(fp), seconds});
        // strict improvement, so ties keep the scheme found first
        if (result.sweep.size() == 1 || sc > result.best_sc) {
            result.best_sc = sc;
            result.c_opt = fp.cluster_count();
            result.best = fp;
        }
    };

    using clock = std::chrono::steady_clock;
    FcmConfig step_cfg = cfg;
    step_cfg.c = mode == AutoMode::merge ? c_max : 2;

    auto t0 = clock::now();
    FcmResult current = fcm_run(ds, step_cfg);
    record(current.partition, std::chrono::duration<double>(clock::now() - t0).count());

    if (mode == AutoMode::merge) {
        while (current.partition.cluster_count() > 2) {
            t0 = clock::now();
            std::size_t c = current.partition.cluster_count();
            double best_val = std::numeric_limits<double>::infinity();
            std::size_t worst = c;
            for (std::size_t j = 0; j < c; ++j) {
                try {
                    double v = fuzzy_local_sc(ds, current.partition, j);
                    if (v < best_val) {
                        best_val = v;
                        worst = j;
                    }
                } catch (const UndefinedIndexError&) {
                    // singletons and zero-spread clusters do not compete
                }
            }
            if (worst == c) {
                // nothing scorable: fall back to the least separated cluster
                double least = std::numeric_limits<double>::infinity();
                worst = 0;
                for (std::size_t j = 0; j < c; ++j) {
                    double nearest = std::numeric_limits<double>::infinity();
                    for (std::size_t l = 0; l < c; ++l)
                        if (l != j)
                            nearest = std::min(nearest, squared_distance(current.partition.centers.row(j),
                                                                         current.partition.centers.row(l)));
                    if (nearest < least) {
                        least = nearest;
                        worst = j;
                    }
                }
            }
            current = fcm_refine(ds, merged_seed_centers(ds, current.partition, worst), cfg);
            record(current.partition, std::chrono::duration<double>(clock::now() - t0).count());
        }
    } else {
        while (current.partition.cluster_count() < c_max) {
            t0 = clock::now();
            auto counts = defuzzified_cardinalities(current.partition);
            double best_score = std::numeric_limits<double>::infinity();
            std::size_t target = counts.size();
            for (std::size_t j = 0; j < counts.size(); ++j) {
                if (counts[j] < 2) continue;  // nothing to split
                double s = fuzzy_score(current.partition, j);
                if (s < best_score) {
                    best_score = s;
                    target = j;
                }
            }
            if (target == counts.size())
                throw UndefinedIndexError("fuzzy_auto: no splittable cluster");
            current = fcm_refine(ds, split_seed_centers(ds, current.partition, target), cfg);
            record(current.partition, std::chrono::duration<double>(clock::now() - t0).count());
        }
    }
    return result;
}

} // namespace sepclust
