#include "sepclust/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "sepclust/errors.hpp"

namespace sepclust {

std::vector<std::size_t> HardPartition::cardinalities() const {
    std::vector<std::size_t> counts(cluster_count(), 0);
    for (std::size_t a : assignment) ++counts[a];
    return counts;
}

std::vector<std::vector<std::size_t>> HardPartition::members() const {
    std::vector<std::vector<std::size_t>> out(cluster_count());
    for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(i);
    return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("squared_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

std::vector<std::size_t> hard_assign(const Dataset& ds, const Matrix& centers) {
    if (centers.rows() == 0) throw std::invalid_argument("hard_assign: no centers");
    std::vector<std::size_t> assignment(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto x = ds.points.row(i);
        double best = squared_distance(x, centers.row(0));
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < centers.rows(); ++j) {
            double d = squared_distance(x, centers.row(j));
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        assignment[i] = best_j;
    }
    return assignment;
}

Matrix recompute_centers(const Dataset& ds, const std::vector<std::size_t>& assignment,
                         std::size_t cluster_count) {
    std::vector<std::size_t> counts(cluster_count, 0);
    Matrix centers(cluster_count, ds.dim());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        std::size_t j = assignment[i];
        if (j >= cluster_count) throw std::invalid_argument("recompute_centers: bad cluster index");
        ++counts[j];
        for (std::size_t c = 0; c < ds.dim(); ++c) centers(j, c) += ds.points(i, c);
    }
    for (std::size_t j = 0; j < cluster_count; ++j) {
        if (counts[j] == 0)
            throw EmptyClusterError(j, "cluster " + std::to_string(j) + " has no members");
        for (std::size_t c = 0; c < ds.dim(); ++c) centers(j, c) /= static_cast<double>(counts[j]);
    }
    return centers;
}

HardPartition defuzzify(const FuzzyPartition& fp) {
    HardPartition hp;
    hp.centers = fp.centers;
    hp.assignment.resize(fp.memberships.rows());
    for (std::size_t i = 0; i < fp.memberships.rows(); ++i) {
        double best = fp.memberships(i, 0);
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < fp.memberships.cols(); ++j) {
            if (fp.memberships(i, j) > best) {
                best = fp.memberships(i, j);
                best_j = j;
            }
        }
        hp.assignment[i] = best_j;
    }
    return hp;
}

void validate(const FuzzyPartition& fp) {
    if (fp.memberships.cols() != fp.centers.rows())
        throw std::invalid_argument("fuzzy partition: memberships/centers disagree on c");
    for (std::size_t i = 0; i < fp.memberships.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < fp.memberships.cols(); ++j) {
            double u = fp.memberships(i, j);
            if (u < 0.0 || u > 1.0)
                throw std::invalid_argument("fuzzy partition: membership outside [0,1]");
            sum += u;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("fuzzy partition: membership row does not sum to 1");
    }
}

ClusterView cluster_view(const Dataset&, const HardPartition& hp, std::size_t cluster) {
    ClusterView view;
    view.center.assign(hp.centers.row(cluster).begin(), hp.centers.row(cluster).end());
    for (std::size_t i = 0; i < hp.assignment.size(); ++i)
        if (hp.assignment[i] == cluster) view.indices.push_back(i);
    return view;
}

namespace {

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": expected a non-empty array");
    std::size_t cols = j.front().size();
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (j[r].size() != cols) throw std::invalid_argument(std::string(what) + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

} // namespace

nlohmann::ordered_json to_json(const HardPartition& hp) {
    nlohmann::ordered_json j;
    j["centers"] = matrix_to_json(hp.centers);
    j["assignment"] = hp.assignment;
    return j;
}

nlohmann::ordered_json to_json(const FuzzyPartition& fp) {
    nlohmann::ordered_json j;
    j["centers"] = matrix_to_json(fp.centers);
    j["memberships"] = matrix_to_json(fp.memberships);
    return j;
}

HardPartition hard_partition_from_json(const nlohmann::json& j) {
    HardPartition hp;
    hp.centers = matrix_from_json(j.at("centers"), "centers");
    hp.assignment = j.at("assignment").get<std::vector<std::size_t>>();
    for (std::size_t a : hp.assignment)
        if (a >= hp.cluster_count())
            throw std::invalid_argument("partition: assignment index out of range");
    return hp;
}

FuzzyPartition fuzzy_partition_from_json(const nlohmann::json& j) {
    FuzzyPartition fp;
    fp.centers = matrix_from_json(j.at("centers"), "centers");
    fp.memberships = matrix_from_json(j.at("memberships"), "memberships");
    validate(fp);
    return fp;
}

} // namespace sepclust
