#include <doctest.h>

#include <cmath>

#include "common/generators.hpp"
#include "common/reference_indices.hpp"
#include "sepclust/errors.hpp"
#include "sepclust/validity.hpp"

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

HardPartition d4_partition() {
    HardPartition hp;
    hp.centers = Matrix(2, 2);
    hp.centers(0, 1) = 1;
    hp.centers(1, 0) = 10;
    hp.centers(1, 1) = 1;
    hp.assignment = {0, 0, 1, 1};
    return hp;
}

HardPartition scaled_copy(const HardPartition& hp, double s) {
    HardPartition out = hp;
    for (auto& v : out.centers.data()) v *= s;
    return out;
}

Dataset scaled_copy(const Dataset& ds, double s) {
    Dataset out = ds;
    for (auto& v : out.points.data()) v *= s;
    return out;
}

} // namespace

TEST_CASE("hand values on the 2x2 grid") {
    Dataset ds = d4();
    HardPartition hp = d4_partition();
    CHECK(mse(ds, hp) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dunn(ds, hp) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(davies_bouldin(ds, hp) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(hard_sep(hp) == doctest::Approx(10000.0).epsilon(1e-12));
    CHECK(hard_cmp(ds, hp) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(hard_sep_cmp(ds, hp) == doctest::Approx(20000.0).epsilon(1e-12));
    CHECK(hard_local_sep(hp, 0) == doctest::Approx(100.0).epsilon(1e-12));

    ClusterView a = cluster_view(ds, hp, 0);
    CHECK(var_global(ds, a) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(var_split(ds, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hard_local_cmp(ds, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hard_local_cmp(ds, a, CmpVariant::literal) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(hard_local_sep_cmp(ds, hp, 0) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(hard_local_sep_cmp(ds, hp, 0) ==
          doctest::Approx(hard_local_sep_cmp(ds, hp, 1)).epsilon(1e-12));
}

TEST_CASE("mse: zero at centers, quadratic under scaling") {
    Dataset ds;
    ds.points = Matrix(3, 2, 2.0);
    HardPartition hp;
    hp.centers = Matrix(1, 2, 2.0);
    hp.assignment = {0, 0, 0};
    CHECK(mse(ds, hp) == 0.0);

    Dataset base = d4();
    HardPartition part = d4_partition();
    CHECK(mse(scaled_copy(base, 3.0), scaled_copy(part, 3.0)) ==
          doctest::Approx(9.0 * mse(base, part)).epsilon(1e-12));
}

TEST_CASE("dunn: undefined without a positive diameter, scale invariant") {
    Dataset ds;
    ds.points = Matrix(2, 2);
    ds.points(1, 0) = 5;
    HardPartition singletons;
    singletons.centers = ds.points;
    singletons.assignment = {0, 1};
    CHECK_THROWS_AS(dunn(ds, singletons), UndefinedIndexError);

    Dataset base = d4();
    HardPartition part = d4_partition();
    CHECK(dunn(scaled_copy(base, 7.0), scaled_copy(part, 7.0)) ==
          doctest::Approx(dunn(base, part)).epsilon(1e-12));
}

TEST_CASE("davies_bouldin: duplicate centers and separation response") {
    Dataset ds = d4();
    HardPartition dup = d4_partition();
    dup.centers.set_row(1, dup.centers.row(0));
    CHECK_THROWS_AS(davies_bouldin(ds, dup), UndefinedIndexError);

    // pulling the clusters further apart lowers the index
    Dataset far = d4();
    far.points(2, 0) = 40;
    far.points(3, 0) = 40;
    HardPartition far_part = d4_partition();
    far_part.centers(1, 0) = 40;
    CHECK(davies_bouldin(far, far_part) < davies_bouldin(ds, d4_partition()));

    HardPartition part = d4_partition();
    CHECK(davies_bouldin(scaled_copy(ds, 5.0), scaled_copy(part, 5.0)) ==
          doctest::Approx(davies_bouldin(ds, part)).epsilon(1e-12));
}

TEST_CASE("var_global: cardinality-squared normalization") {
    Dataset pair;
    pair.points = Matrix(2, 2);
    pair.points(1, 1) = 2;
    ClusterView view{{0, 1}, {0.0, 1.0}};
    CHECK(var_global(pair, view) == doctest::Approx(0.5).epsilon(1e-12));

    ClusterView singleton{{0}, {0.0, 0.0}};
    CHECK(var_global(pair, singleton) == 0.0);

    // duplicating every member halves the value: 2S/(2n)^2 = S/(2n^2)
    Dataset doubled;
    doubled.points = Matrix(4, 2);
    doubled.points(1, 1) = 2;
    doubled.points(3, 1) = 2;
    ClusterView both{{0, 1, 2, 3}, {0.0, 1.0}};
    CHECK(var_global(doubled, both) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("var_split: mean squared distance") {
    Dataset pair;
    pair.points = Matrix(2, 2);
    pair.points(1, 1) = 2;
    ClusterView view{{0, 1}, {0.0, 1.0}};
    CHECK(var_split(pair, view) == doctest::Approx(1.0).epsilon(1e-12));
    ClusterView singleton{{0}, {0.0, 0.0}};
    CHECK(var_split(pair, singleton) == 0.0);

    Dataset scaled = scaled_copy(pair, 3.0);
    ClusterView sview{{0, 1}, {0.0, 3.0}};
    CHECK(var_split(scaled, sview) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("hard_cmp: reciprocal variance and singleton exclusion") {
    Dataset ds = d4();
    HardPartition hp = d4_partition();
    CHECK(hard_cmp(ds, hp) == doctest::Approx(2.0).epsilon(1e-12));

    // a third, singleton cluster changes k but adds no variance
    Dataset plus;
    plus.points = Matrix(5, 2);
    plus.points(1, 1) = 2;
    plus.points(2, 0) = 10;
    plus.points(3, 0) = 10;
    plus.points(3, 1) = 2;
    plus.points(4, 0) = 20;
    plus.points(4, 1) = 1;
    HardPartition with_singleton;
    with_singleton.centers = Matrix(3, 2);
    with_singleton.centers(0, 1) = 1;
    with_singleton.centers(1, 0) = 10;
    with_singleton.centers(1, 1) = 1;
    with_singleton.centers(2, 0) = 20;
    with_singleton.centers(2, 1) = 1;
    with_singleton.assignment = {0, 0, 1, 1, 2};
    CHECK(hard_cmp(plus, with_singleton) == doctest::Approx(2.0).epsilon(1e-12));

    HardPartition all_single;
    all_single.centers = ds.points;
    all_single.assignment = {0, 1, 2, 3};
    CHECK_THROWS_AS(hard_cmp(ds, all_single), UndefinedIndexError);

    Dataset at_centers;
    at_centers.points = Matrix(4, 2);
    at_centers.points(2, 0) = 9;
    at_centers.points(3, 0) = 9;
    HardPartition zero;
    zero.centers = Matrix(2, 2);
    zero.centers(1, 0) = 9;
    zero.assignment = {0, 0, 1, 1};
    CHECK_THROWS_AS(hard_cmp(at_centers, zero), UndefinedIndexError);
}

TEST_CASE("hard_sep: printed outer square, duplicates, collinear centers") {
    HardPartition hp = d4_partition();
    CHECK(hard_sep(hp) == doctest::Approx(10000.0).epsilon(1e-12));

    HardPartition dup = hp;
    dup.centers.set_row(1, dup.centers.row(0));
    CHECK(hard_sep(dup) == 0.0);

    HardPartition collinear;
    collinear.centers = Matrix(3, 1);
    collinear.centers(1, 0) = 2;
    collinear.centers(2, 0) = 4;
    collinear.assignment = {0, 1, 2};
    CHECK(hard_sep(collinear) == doctest::Approx(16.0).epsilon(1e-12));  // d = 2, d^4 = 16
}

TEST_CASE("hard_sep_cmp: prefactor counts non-singletons") {
    Dataset plus;
    plus.points = Matrix(5, 2);
    plus.points(1, 1) = 2;
    plus.points(2, 0) = 10;
    plus.points(3, 0) = 10;
    plus.points(3, 1) = 2;
    plus.points(4, 0) = 20;
    plus.points(4, 1) = 1;
    HardPartition hp;
    hp.centers = Matrix(3, 2);
    hp.centers(0, 1) = 1;
    hp.centers(1, 0) = 10;
    hp.centers(1, 1) = 1;
    hp.centers(2, 0) = 20;
    hp.centers(2, 1) = 1;
    hp.assignment = {0, 0, 1, 1, 2};
    CHECK(hard_sep_cmp(plus, hp) ==
          doctest::Approx((2.0 / 3.0) * hard_sep(hp) * hard_cmp(plus, hp)).epsilon(1e-12));
}

TEST_CASE("local measures: tightening and distance trade-offs") {
    // tightening a cluster (member distances halved) quadruples inverse-variance cmp_j
    Dataset loose;
    loose.points = Matrix(2, 2);
    loose.points(0, 1) = -2;
    loose.points(1, 1) = 2;
    Dataset tight;
    tight.points = Matrix(2, 2);
    tight.points(0, 1) = -1;
    tight.points(1, 1) = 1;
    ClusterView lview{{0, 1}, {0.0, 0.0}};
    CHECK(hard_local_cmp(tight, lview) == doctest::Approx(4.0 * hard_local_cmp(loose, lview)).epsilon(1e-12));

    // a far-away tight cluster outranks a nearby loose one
    Dataset mixed;
    mixed.points = Matrix(6, 2);
    mixed.points(0, 1) = 0.0;  mixed.points(0, 0) = 0.0;   // loose pair near the third cluster
    mixed.points(1, 0) = 0.0;  mixed.points(1, 1) = 4.0;
    mixed.points(2, 0) = 50.0; mixed.points(2, 1) = 0.0;   // tight pair far away
    mixed.points(3, 0) = 50.0; mixed.points(3, 1) = 0.2;
    mixed.points(4, 0) = 2.0;  mixed.points(4, 1) = 0.0;   // third cluster anchoring "near"
    mixed.points(5, 0) = 2.0;  mixed.points(5, 1) = 0.2;
    HardPartition hp;
    hp.centers = Matrix(3, 2);
    hp.centers(0, 0) = 0.0;  hp.centers(0, 1) = 2.0;
    hp.centers(1, 0) = 50.0; hp.centers(1, 1) = 0.1;
    hp.centers(2, 0) = 2.0;  hp.centers(2, 1) = 0.1;
    hp.assignment = {0, 0, 1, 1, 2, 2};
    CHECK(hard_local_sep_cmp(mixed, hp, 1) > hard_local_sep_cmp(mixed, hp, 0));

    CHECK_THROWS_AS(hard_local_cmp(mixed, ClusterView{{2}, {50.0, 0.0}}, CmpVariant::inverse_variance),
                    UndefinedIndexError);
}

TEST_CASE("every index is translation invariant") {
    auto rng = seeded_stream(53);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = gen::random_dataset(rng, 14, 2);
        HardPartition hp = gen::random_hard_partition(rng, ds, 3, true);
        double dx = gen::uniform(rng, -40, 40), dy = gen::uniform(rng, -40, 40);
        Dataset moved = ds;
        HardPartition moved_hp = hp;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            moved.points(i, 0) += dx;
            moved.points(i, 1) += dy;
        }
        for (std::size_t j = 0; j < hp.cluster_count(); ++j) {
            moved_hp.centers(j, 0) += dx;
            moved_hp.centers(j, 1) += dy;
        }
        CHECK(mse(moved, moved_hp) == doctest::Approx(mse(ds, hp)).epsilon(1e-9));
        CHECK(dunn(moved, moved_hp) == doctest::Approx(dunn(ds, hp)).epsilon(1e-9));
        CHECK(davies_bouldin(moved, moved_hp) == doctest::Approx(davies_bouldin(ds, hp)).epsilon(1e-9));
        CHECK(hard_sep(moved_hp) == doctest::Approx(hard_sep(hp)).epsilon(1e-9));
        CHECK(hard_cmp(moved, moved_hp) == doctest::Approx(hard_cmp(ds, hp)).epsilon(1e-9));
        CHECK(hard_sep_cmp(moved, moved_hp) == doctest::Approx(hard_sep_cmp(ds, hp)).epsilon(1e-9));
        CHECK(hard_local_sep(moved_hp, 0) == doctest::Approx(hard_local_sep(hp, 0)).epsilon(1e-9));
    }
}

TEST_CASE("scale covariance factors") {
    auto rng = seeded_stream(59);
    const double s = 3.0;
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = gen::random_dataset(rng, 16, 3);
        HardPartition hp = gen::random_hard_partition(rng, ds, 3, true);
        Dataset big = scaled_copy(ds, s);
        HardPartition big_hp = scaled_copy(hp, s);
        CHECK(mse(big, big_hp) == doctest::Approx(s * s * mse(ds, hp)).epsilon(1e-9));
        CHECK(dunn(big, big_hp) == doctest::Approx(dunn(ds, hp)).epsilon(1e-9));
        CHECK(davies_bouldin(big, big_hp) == doctest::Approx(davies_bouldin(ds, hp)).epsilon(1e-9));
        CHECK(hard_sep(big_hp) == doctest::Approx(std::pow(s, 4) * hard_sep(hp)).epsilon(1e-9));
        CHECK(hard_cmp(big, big_hp) == doctest::Approx(hard_cmp(ds, hp) / (s * s)).epsilon(1e-9));
        CHECK(hard_sep_cmp(big, big_hp) == doctest::Approx(s * s * hard_sep_cmp(ds, hp)).epsilon(1e-9));
        CHECK(hard_local_sep(big_hp, 1) == doctest::Approx(s * s * hard_local_sep(hp, 1)).epsilon(1e-9));
        ClusterView view = cluster_view(ds, hp, 0);
        ClusterView big_view = cluster_view(big, big_hp, 0);
        CHECK(var_split(big, big_view) == doctest::Approx(s * s * var_split(ds, view)).epsilon(1e-9));
    }
}

TEST_CASE("index report: optional locals and naive-reference agreement") {
    auto rng = seeded_stream(61);
    Dataset ds = gen::random_dataset(rng, 9, 2);
    HardPartition hp = gen::random_hard_partition(rng, ds, 3, true);
    IndexReport report = compute_index_report(ds, hp);
    REQUIRE(report.per_cluster.size() == 3);
    for (const auto& row : report.per_cluster) {
        if (row.cardinality == 1) {
            CHECK(!row.cmp_j);
            CHECK(!row.sepcmp_j);
            CHECK(row.var_global == 0.0);
        } else {
            CHECK(row.cmp_j);
        }
        CHECK(std::isfinite(row.sep_j));
    }

    // naive triple-loop agreement across random instances
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 4 + uniform_index(rng, 5);
        std::size_t m = 1 + uniform_index(rng, 3);
        std::size_t c = 2 + uniform_index(rng, 2);
        if (c + 1 > n) continue;
        Dataset data = gen::random_dataset(rng, n, m);
        HardPartition part = gen::random_hard_partition(rng, data, c, trial % 2 == 0);
        auto x = refimpl::to_rows(data.points);
        auto cents = refimpl::to_rows(part.centers);
        CHECK(mse(data, part) == doctest::Approx(refimpl::mse_ref(x, part.assignment, cents)).epsilon(1e-12));
        auto dn = refimpl::dunn_ref(x, part.assignment, c);
        REQUIRE(dn);
        CHECK(dunn(data, part) == doctest::Approx(*dn).epsilon(1e-12));
        auto sc = refimpl::sepcmp_ref(x, part.assignment, cents);
        if (sc) CHECK(hard_sep_cmp(data, part) == doctest::Approx(*sc).epsilon(1e-12));
    }
}
