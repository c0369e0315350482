#include <doctest.h>

#include <algorithm>

#include "common/generators.hpp"
#include "sepclust/kmeans.hpp"

using namespace sepclust;

namespace {

Dataset d4() {
    Dataset ds;
    ds.points = Matrix(4, 2);
    ds.points(1, 1) = 2;
    ds.points(2, 0) = 10;
    ds.points(3, 0) = 10;
    ds.points(3, 1) = 2;
    return ds;
}

std::vector<std::vector<double>> sorted_centers(const HardPartition& hp) {
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < hp.cluster_count(); ++j)
        rows.emplace_back(hp.centers.row(j).begin(), hp.centers.row(j).end());
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace

TEST_CASE("kmeans_run: recovers the natural split of the 2x2 grid") {
    Dataset ds = d4();
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        KMeansConfig cfg{2, 300, seed, 4};
        KMeansResult result = kmeans_run(ds, cfg);
        CHECK(result.criterion == doctest::Approx(2.0).epsilon(1e-12));
        auto rows = sorted_centers(result.partition);
        CHECK(rows[0] == std::vector<double>{0.0, 1.0});
        CHECK(rows[1] == std::vector<double>{10.0, 1.0});
    }
}

TEST_CASE("kmeans_run: degenerate configurations") {
    Dataset same;
    same.points = Matrix(5, 2, 3.0);
    KMeansResult one = kmeans_run(same, KMeansConfig{1, 300, 0, 1});
    CHECK(one.criterion == 0.0);
    CHECK(one.partition.centers(0, 0) == 3.0);

    auto rng = seeded_stream(2);
    Dataset ds = gen::random_dataset(rng, 6, 2);
    KMeansResult exact = kmeans_run(ds, KMeansConfig{6, 300, 1, 2});
    CHECK(exact.criterion == 0.0);

    CHECK_THROWS_AS(kmeans_run(ds, KMeansConfig{7, 300, 0, 1}), std::invalid_argument);
    Dataset empty;
    empty.points = Matrix(0, 2);
    CHECK_THROWS_AS(kmeans_run(empty, KMeansConfig{1, 300, 0, 1}), std::invalid_argument);
}

TEST_CASE("kmeans_criterion: hand values") {
    Dataset ds = d4();
    HardPartition hp;
    hp.centers = Matrix(2, 2);
    hp.centers(0, 1) = 1;
    hp.centers(1, 0) = 10;
    hp.centers(1, 1) = 1;
    hp.assignment = {0, 0, 1, 1};
    CHECK(kmeans_criterion(ds, hp) == doctest::Approx(2.0).epsilon(1e-12));

    Dataset pair;
    pair.points = Matrix(2, 2);
    pair.points(1, 0) = 2;
    HardPartition single;
    single.centers = Matrix(1, 2);
    single.centers(0, 0) = 1;
    single.assignment = {0, 0};
    CHECK(kmeans_criterion(pair, single) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kmeans_run: criterion trace never increases") {
    auto rng = seeded_stream(23);
    for (int trial = 0; trial < 20; ++trial) {
        Dataset ds = gen::random_dataset(rng, 12 + uniform_index(rng, 40), 1 + uniform_index(rng, 3));
        std::size_t c = 2 + uniform_index(rng, 4);
        KMeansConfig cfg{c, 300, static_cast<std::uint64_t>(trial), 1};
        KMeansResult result = kmeans_run(ds, cfg);
        for (std::size_t i = 1; i < result.criterion_trace.size(); ++i)
            CHECK(result.criterion_trace[i] <=
                  result.criterion_trace[i - 1] + 1e-9 * std::max(1.0, result.criterion_trace[i - 1]));
    }
}

TEST_CASE("kmeans_run: scaling doubles coordinates, quadruples E") {
    auto rng = seeded_stream(31);
    Dataset ds = gen::random_dataset(rng, 40, 2);
    Dataset scaled = ds;
    for (auto& v : scaled.points.data()) v *= 2.0;
    KMeansConfig cfg{3, 300, 5, 4};
    KMeansResult base = kmeans_run(ds, cfg);
    KMeansResult big = kmeans_run(scaled, cfg);
    CHECK(big.partition.assignment == base.partition.assignment);
    CHECK(big.criterion == doctest::Approx(4.0 * base.criterion).epsilon(1e-9));
}

TEST_CASE("kmeans_run: deterministic for identical configuration") {
    auto rng = seeded_stream(37);
    Dataset ds = gen::random_dataset(rng, 50, 3);
    KMeansConfig cfg{4, 300, 99, 5};
    KMeansResult a = kmeans_run(ds, cfg);
    KMeansResult b = kmeans_run(ds, cfg);
    CHECK(a.partition.centers == b.partition.centers);
    CHECK(a.partition.assignment == b.partition.assignment);
    CHECK(a.criterion == b.criterion);
}

TEST_CASE("kmeans_refine: permuting rows relabels but preserves the solution") {
    auto rng = seeded_stream(41);
    Dataset ds = gen::random_dataset(rng, 30, 2);
    Dataset reversed;
    reversed.points = Matrix(30, 2);
    for (std::size_t i = 0; i < 30; ++i) reversed.points.set_row(i, ds.points.row(29 - i));

    Matrix starts(3, 2);
    for (std::size_t j = 0; j < 3; ++j) starts.set_row(j, ds.points.row(j * 9));
    KMeansResult a = kmeans_refine(ds, starts);
    KMeansResult b = kmeans_refine(reversed, starts);
    CHECK(a.criterion == doctest::Approx(b.criterion).epsilon(1e-9));
    auto cards_a = a.partition.cardinalities();
    auto cards_b = b.partition.cardinalities();
    std::sort(cards_a.begin(), cards_a.end());
    std::sort(cards_b.begin(), cards_b.end());
    CHECK(cards_a == cards_b);
}

TEST_CASE("empty-cluster policies: reseed keeps c, drop shrinks it") {
    Dataset ds = d4();
    Matrix far(2, 2);
    far(0, 0) = 5;
    far(0, 1) = 1;
    far(1, 0) = 1000;
    far(1, 1) = 1000;  // nobody picks this center

    KMeansResult reseeded = kmeans_refine(ds, far, 300, EmptyClusterPolicy::reseed_farthest);
    CHECK(reseeded.partition.cluster_count() == 2);
    for (auto n : reseeded.partition.cardinalities()) CHECK(n > 0);

    KMeansResult dropped = kmeans_refine(ds, far, 300, EmptyClusterPolicy::drop);
    CHECK(dropped.partition.cluster_count() == 1);
    CHECK(dropped.partition.cardinalities()[0] == 4);
}
