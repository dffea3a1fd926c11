#include "lpf/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lpf/errors.hpp"
#include "lpf/rng.hpp"

namespace lpf {

PointCloud sor(const PointCloud& cloud, const SorParams& params) {
    if (params.k < 1 || !(params.alpha > 0.0)) {
        throw InvalidSpec("sor needs k >= 1 and alpha > 0");
    }
    const std::size_t n = cloud.size();
    if (n <= static_cast<std::size_t>(params.k)) {
        throw TooFewPoints("sor needs more points than k=" + std::to_string(params.k) + ", got " +
                           std::to_string(n));
    }
    const std::size_t k = static_cast<std::size_t>(params.k);

    // mean distance to the k nearest neighbors, self excluded
    std::vector<double> mean_knn(n);
    std::vector<double> dists(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                dists[w++] = (cloud.points[j] - cloud.points[i]).norm();
            }
        }
        std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
        std::sort(dists.begin(), dists.begin() + k);  // fixed summation order
        double sum = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            sum += dists[t];
        }
        mean_knn[i] = sum / static_cast<double>(k);
    }

    double mu = 0.0;
    for (double d : mean_knn) {
        mu += d;
    }
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (double d : mean_knn) {
        var += (d - mu) * (d - mu);
    }
    const double sigma = std::sqrt(var / static_cast<double>(n));  // population std dev
    const double threshold = mu + params.alpha * sigma;

    PointCloud out;
    out.label = cloud.label;
    out.source_path = cloud.source_path;
    out.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (mean_knn[i] <= threshold) {
            out.points.push_back(cloud.points[i]);
        }
    }
    return out;
}

PointCloud srs(const PointCloud& cloud, std::size_t n_drop, std::uint64_t seed) {
    const std::size_t n = cloud.size();
    if (n_drop >= n) {
        throw DropTooLarge("srs cannot drop " + std::to_string(n_drop) + " of " +
                           std::to_string(n) + " points");
    }
    // partial Fisher-Yates selects the dropped set uniformly without
    // replacement; survivors keep their original relative order
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = static_cast<std::uint32_t>(i);
    }
    SplitMix64 rng(seed);
    std::vector<bool> dropped(n, false);
    for (std::size_t t = 0; t < n_drop; ++t) {
        const std::size_t pick = t + rng.next_below(n - t);
        std::swap(idx[t], idx[pick]);
        dropped[idx[t]] = true;
    }
    PointCloud out;
    out.label = cloud.label;
    out.source_path = cloud.source_path;
    out.points.reserve(n - n_drop);
    for (std::size_t i = 0; i < n; ++i) {
        if (!dropped[i]) {
            out.points.push_back(cloud.points[i]);
        }
    }
    return out;
}

PerturbSpec PerturbSpec::shift_gaussian(double sigma, std::uint64_t seed) {
    PerturbSpec s;
    s.kind = Kind::ShiftGaussian;
    s.sigma = sigma;
    s.seed = seed;
    return s;
}

PerturbSpec PerturbSpec::add_outliers(std::size_t count, double radius_min, double radius_max,
                                      std::uint64_t seed) {
    PerturbSpec s;
    s.kind = Kind::AddOutliers;
    s.count = count;
    s.radius_min = radius_min;
    s.radius_max = radius_max;
    s.seed = seed;
    return s;
}

PerturbSpec PerturbSpec::drop_random(std::size_t count, std::uint64_t seed) {
    PerturbSpec s;
    s.kind = Kind::DropRandom;
    s.count = count;
    s.seed = seed;
    return s;
}

PointCloud perturb(const PointCloud& cloud, const PerturbSpec& spec) {
    if (cloud.empty()) {
        throw EmptyCloud("perturb: cloud has no points");
    }
    switch (spec.kind) {
        case PerturbSpec::Kind::ShiftGaussian: {
            if (!(spec.sigma >= 0.0)) {
                throw InvalidSpec("ShiftGaussian needs sigma >= 0");
            }
            PointCloud out = cloud;
            SplitMix64 rng(spec.seed);
            for (Vec3& p : out.points) {
                p.x += spec.sigma * rng.next_gaussian();
                p.y += spec.sigma * rng.next_gaussian();
                p.z += spec.sigma * rng.next_gaussian();
            }
            return out;
        }
        case PerturbSpec::Kind::AddOutliers: {
            if (spec.radius_min < 0.0 || spec.radius_max < spec.radius_min) {
                throw InvalidSpec("AddOutliers needs 0 <= radius_min <= radius_max");
            }
            PointCloud out = cloud;
            const Centroid c = centroid_of(cloud);
            SplitMix64 rng(spec.seed);
            out.points.reserve(cloud.size() + spec.count);
            for (std::size_t i = 0; i < spec.count; ++i) {
                // uniform direction: uniform z plus uniform longitude
                const double z = 2.0 * rng.next_double() - 1.0;
                const double phi = 2.0 * std::numbers::pi * rng.next_double();
                const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double r =
                    spec.radius_min + (spec.radius_max - spec.radius_min) * rng.next_double();
                out.points.push_back(c + Vec3{r * s * std::cos(phi), r * s * std::sin(phi), r * z});
            }
            return out;
        }
        case PerturbSpec::Kind::DropRandom: {
            if (spec.count >= cloud.size()) {
                throw InvalidSpec("DropRandom count " + std::to_string(spec.count) +
                                  " must be below cloud size " + std::to_string(cloud.size()));
            }
            return srs(cloud, spec.count, spec.seed);
        }
    }
    throw InvalidSpec("unknown perturbation kind");
}

}  // namespace lpf
