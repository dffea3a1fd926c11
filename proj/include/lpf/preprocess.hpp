#ifndef LPF_PREPROCESS_HPP
#define LPF_PREPROCESS_HPP

#include <cstdint>

#include "lpf/point_cloud.hpp"

namespace lpf {

/// Statistical outlier removal parameters: k nearest neighbors and the
/// standard-deviation multiplier alpha.
struct SorParams {
    int k = 2;
    double alpha = 1.1;
};

/// Drop points whose mean distance to their k nearest neighbors (self
/// excluded) exceeds mu + alpha * sigma, where mu and sigma are the mean and
/// population standard deviation of that statistic over the cloud. Survivor
/// order is preserved. Throws TooFewPoints (size <= k), InvalidSpec.
PointCloud sor(const PointCloud& cloud, const SorParams& params);

/// Simple random sampling defense: remove n_drop uniformly random points
/// without replacement, order preserved, deterministic per seed.
/// Throws DropTooLarge (n_drop >= size).
PointCloud srs(const PointCloud& cloud, std::size_t n_drop, std::uint64_t seed);

/// Synthetic perturbation generators; desk-scale stand-ins for the attack
/// families (shift / add / drop) used to exercise the analysis and defense
/// pipelines.
struct PerturbSpec {
    enum class Kind { ShiftGaussian, AddOutliers, DropRandom };

    Kind kind = Kind::ShiftGaussian;
    double sigma = 0.0;        // ShiftGaussian: per-coordinate std dev
    std::size_t count = 0;     // AddOutliers / DropRandom: point count
    double radius_min = 0.0;   // AddOutliers: radial range about the centroid
    double radius_max = 0.0;
    std::uint64_t seed = 0;

    static PerturbSpec shift_gaussian(double sigma, std::uint64_t seed);
    static PerturbSpec add_outliers(std::size_t count, double radius_min, double radius_max,
                                    std::uint64_t seed);
    static PerturbSpec drop_random(std::size_t count, std::uint64_t seed);
};

/// Apply a perturbation. ShiftGaussian displaces every point by iid
/// zero-mean Gaussian noise; AddOutliers appends points at uniform random
/// directions from the centroid with radii uniform in [radius_min,
/// radius_max]; DropRandom removes count uniform points. Deterministic per
/// seed. Throws InvalidSpec.
PointCloud perturb(const PointCloud& cloud, const PerturbSpec& spec);

}  // namespace lpf

#endif
