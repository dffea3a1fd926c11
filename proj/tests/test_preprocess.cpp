#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include "lpf/errors.hpp"
#include "lpf/pipeline.hpp"
#include "lpf/preprocess.hpp"
#include "test_util.hpp"

using namespace lpf;

namespace {

/// Independent SOR reference: full sorted distance lists, two-pass moments.
std::vector<std::size_t> sor_oracle_survivors(const PointCloud& cloud, int k, double alpha) {
    const std::size_t n = cloud.size();
    std::vector<double> mean_knn(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> d;
        d.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                d.push_back((cloud.points[j] - cloud.points[i]).norm());
            }
        }
        std::sort(d.begin(), d.end());
        double sum = 0.0;
        for (int t = 0; t < k; ++t) {
            sum += d[t];
        }
        mean_knn[i] = sum / k;
    }
    double mu = 0.0;
    for (double v : mean_knn) {
        mu += v;
    }
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (double v : mean_knn) {
        var += (v - mu) * (v - mu);
    }
    const double threshold = mu + alpha * std::sqrt(var / static_cast<double>(n));
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < n; ++i) {
        if (mean_knn[i] <= threshold) {
            survivors.push_back(i);
        }
    }
    return survivors;
}

std::set<std::tuple<double, double, double>> point_set(const PointCloud& c) {
    std::set<std::tuple<double, double, double>> s;
    for (const Vec3& p : c.points) {
        s.emplace(p.x, p.y, p.z);
    }
    return s;
}

}  // namespace

TEST_CASE("sor basics") {
    SUBCASE("unreachable threshold keeps everything") {
        const PointCloud cloud = lpf::test::random_cloud(60, 4);
        const PointCloud out = sor(cloud, {2, 1e9});
        REQUIRE(out.size() == cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            CHECK(out.points[i].x == cloud.points[i].x);
        }
    }
    SUBCASE("a single far outlier is removed, nothing else") {
        PointCloud cloud = lpf::test::symmetric_sphere_cloud(50, 1.0, 8);  // 100 points
        cloud.points.push_back({10.0, 0.0, 0.0});
        const PointCloud out = sor(cloud, {2, 1.1});
        CHECK(out.size() == 100);
        for (const Vec3& p : out.points) {
            CHECK(p.norm() < 2.0);
        }
    }
    SUBCASE("parameter validation") {
        const PointCloud cloud = lpf::test::random_cloud(10, 1);
        CHECK_THROWS_AS(sor(cloud, {0, 1.0}), InvalidSpec);
        CHECK_THROWS_AS(sor(cloud, {2, 0.0}), InvalidSpec);
        CHECK_THROWS_AS(sor(cloud, {10, 1.0}), TooFewPoints);
        CHECK_THROWS_AS(sor(cloud, {15, 1.0}), TooFewPoints);
    }
}

TEST_CASE("sor matches the brute-force oracle exactly") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PointCloud cloud = lpf::test::random_cloud(64 + 17 * seed, 1000 + seed);
        if (seed % 3 == 0) {
            // salt with genuine outliers so removals actually happen
            SplitMix64 rng(seed);
            for (int i = 0; i < 5; ++i) {
                const Vec3 u = lpf::test::random_unit_vector(rng);
                cloud.points.push_back(u * (4.0 + rng.next_double()));
            }
        }
        const PointCloud out = sor(cloud, {2, 1.1});
        const std::vector<std::size_t> expect = sor_oracle_survivors(cloud, 2, 1.1);
        REQUIRE(out.size() == expect.size());
        for (std::size_t t = 0; t < expect.size(); ++t) {
            const Vec3& a = out.points[t];
            const Vec3& b = cloud.points[expect[t]];
            CHECK(a.x == b.x);
            CHECK(a.y == b.y);
            CHECK(a.z == b.z);
        }
    }
}

TEST_CASE("sor output is a subset in original order") {
    PointCloud cloud = lpf::test::random_cloud(128, 3);
    SplitMix64 rng(77);
    for (int i = 0; i < 8; ++i) {
        cloud.points.insert(cloud.points.begin() + static_cast<long>(rng.next_below(cloud.size())),
                            lpf::test::random_unit_vector(rng) * 6.0);
    }
    const PointCloud out = sor(cloud, {3, 0.8});
    CHECK(out.size() < cloud.size());
    // order-preserving subset: every output point appears in the input at or
    // after the previous match
    std::size_t cursor = 0;
    for (const Vec3& p : out.points) {
        while (cursor < cloud.size() &&
               !(cloud.points[cursor].x == p.x && cloud.points[cursor].y == p.y &&
                 cloud.points[cursor].z == p.z)) {
            ++cursor;
        }
        CHECK(cursor < cloud.size());
        ++cursor;
    }
}

TEST_CASE("srs") {
    const PointCloud cloud = lpf::test::random_float_cloud(1024, 21);

    SUBCASE("dropping zero points is the identity") {
        const PointCloud out = srs(cloud, 0, 5);
        REQUIRE(out.size() == 1024);
        for (std::size_t i = 0; i < 1024; ++i) {
            CHECK(out.points[i].x == cloud.points[i].x);
        }
    }
    SUBCASE("drops exactly n_drop, members of the original") {
        const PointCloud out = srs(cloud, 500, 5);
        REQUIRE(out.size() == 524);
        const auto members = point_set(cloud);
        for (const Vec3& p : out.points) {
            CHECK(members.count({p.x, p.y, p.z}) == 1);
        }
    }
    SUBCASE("deterministic per seed") {
        const PointCloud a = srs(cloud, 500, 5);
        const PointCloud b = srs(cloud, 500, 5);
        REQUIRE(a.size() == b.size());
        bool equal = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            equal = equal && a.points[i].x == b.points[i].x;
        }
        CHECK(equal);
        const PointCloud c = srs(cloud, 500, 6);
        bool same_as_a = c.size() == a.size();
        for (std::size_t i = 0; same_as_a && i < a.size(); ++i) {
            same_as_a = a.points[i].x == c.points[i].x;
        }
        CHECK_FALSE(same_as_a);
    }
    SUBCASE("chained drops compose sizes") {
        const PointCloud once = srs(cloud, 100, 1);
        const PointCloud twice = srs(once, 200, 2);
        CHECK(twice.size() == 1024 - 100 - 200);
    }
    SUBCASE("order preserved") {
        const PointCloud out = srs(cloud, 300, 9);
        std::size_t cursor = 0;
        for (const Vec3& p : out.points) {
            while (cursor < cloud.size() && cloud.points[cursor].x != p.x) {
                ++cursor;
            }
            CHECK(cursor < cloud.size());
            ++cursor;
        }
    }
    SUBCASE("dropping everything is refused") {
        CHECK_THROWS_AS(srs(cloud, 1024, 1), DropTooLarge);
        CHECK_THROWS_AS(srs(cloud, 2000, 1), DropTooLarge);
    }
}

TEST_CASE("perturb") {
    const PointCloud cloud = lpf::test::symmetric_sphere_cloud(512, 1.0, 33);  // 1024 points

    SUBCASE("zero-sigma shift is the identity") {
        const PointCloud out = perturb(cloud, PerturbSpec::shift_gaussian(0.0, 3));
        REQUIRE(out.size() == cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            CHECK(out.points[i].x == cloud.points[i].x);
        }
    }
    SUBCASE("gaussian shift displaces on the expected scale") {
        const double sigma = 0.01;
        const PointCloud out = perturb(cloud, PerturbSpec::shift_gaussian(sigma, 3));
        double mean_sq = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            mean_sq += (out.points[i] - cloud.points[i]).dot(out.points[i] - cloud.points[i]);
        }
        mean_sq /= static_cast<double>(cloud.size());
        // E|d|^2 = 3 sigma^2; allow a generous band
        CHECK(mean_sq > 1.5 * sigma * sigma);
        CHECK(mean_sq < 4.5 * sigma * sigma);
    }
    SUBCASE("add-outliers count and radial range") {
        const PointCloud out = perturb(cloud, PerturbSpec::add_outliers(512, 2.0, 3.0, 11));
        REQUIRE(out.size() == 1536);
        const Centroid c = centroid_of(cloud);
        for (std::size_t i = 1024; i < 1536; ++i) {
            const double r = (out.points[i] - c).norm();
            CHECK(r >= 2.0);
            CHECK(r <= 3.0);
        }
        // prefix untouched
        for (std::size_t i = 0; i < 1024; ++i) {
            CHECK(out.points[i].x == cloud.points[i].x);
        }
    }
    SUBCASE("drop-random delegates to srs semantics") {
        const PointCloud out = perturb(cloud, PerturbSpec::drop_random(100, 17));
        CHECK(out.size() == 924);
        const PointCloud same = srs(cloud, 100, 17);
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(out.points[i].x == same.points[i].x);
        }
    }
    SUBCASE("invalid specs") {
        CHECK_THROWS_AS(perturb(cloud, PerturbSpec::shift_gaussian(-1.0, 1)), InvalidSpec);
        CHECK_THROWS_AS(perturb(cloud, PerturbSpec::add_outliers(4, 3.0, 2.0, 1)), InvalidSpec);
        CHECK_THROWS_AS(perturb(cloud, PerturbSpec::drop_random(1024, 1)), InvalidSpec);
        CHECK_THROWS_AS(perturb(PointCloud{}, PerturbSpec::shift_gaussian(0.1, 1)), EmptyCloud);
    }
}

TEST_CASE("outlier attack, sor, and lowpass compose") {
    const PointCloud clean = lpf::test::symmetric_sphere_cloud(512, 1.0, 99);
    const PointCloud attacked = perturb(clean, PerturbSpec::add_outliers(512, 2.0, 3.0, 7));

    auto count_far = [](const PointCloud& c, double radius) {
        const Centroid ctr = centroid_of(c);
        std::size_t n = 0;
        for (const Vec3& p : c.points) {
            if ((p - ctr).norm() > radius) {
                ++n;
            }
        }
        return n;
    };
    REQUIRE(count_far(attacked, 1.5) == 512);

    const PointCloud after_sor = sor(attacked, {2, 1.1});
    const std::size_t sor_far = count_far(after_sor, 1.5);
    CHECK(sor_far < 512);  // sor alone strips most of the injected points

    const PointCloud composed =
        lowpass_cloud(after_sor, FilterSpec::gaussian(20.0), 16, after_sor.size(), 5);
    const std::size_t composed_far = count_far(composed, 1.5);
    CHECK(composed_far <= sor_far);
}
