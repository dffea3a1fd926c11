#ifndef LPF_TESTS_TEST_UTIL_HPP
#define LPF_TESTS_TEST_UTIL_HPP

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "lpf/point_cloud.hpp"
#include "lpf/rng.hpp"
#include "lpf/sht.hpp"
#include "lpf/sphere_grid.hpp"

namespace lpf::test {

/// Self-deleting scratch directory.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("lpf_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

/// Uniform points in [-1, 1]^3.
inline PointCloud random_cloud(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PointCloud c;
    c.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.points.push_back({2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0,
                            2.0 * rng.next_double() - 1.0});
    }
    return c;
}

/// Cloud whose coordinates are exactly representable as float32 (for byte
/// and text round-trip checks).
inline PointCloud random_float_cloud(std::size_t n, std::uint64_t seed) {
    PointCloud c = random_cloud(n, seed);
    for (Vec3& p : c.points) {
        p.x = static_cast<double>(static_cast<float>(p.x));
        p.y = static_cast<double>(static_cast<float>(p.y));
        p.z = static_cast<double>(static_cast<float>(p.z));
    }
    return c;
}

inline Vec3 random_unit_vector(SplitMix64& rng) {
    const double z = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.next_double();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

/// 2n points of radius exactly `radius`, antipodally symmetric so the
/// centroid cancels to roundoff.
inline PointCloud symmetric_sphere_cloud(std::size_t n_half, double radius, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PointCloud c;
    c.points.reserve(2 * n_half);
    for (std::size_t i = 0; i < n_half; ++i) {
        const Vec3 u = random_unit_vector(rng);
        c.points.push_back(u * radius);
        c.points.push_back(u * -radius);
    }
    return c;
}

/// Star-shaped cube surface: directions pushed out to the axis-aligned cube
/// of half-width `half`, antipodally symmetric.
inline PointCloud cube_surface_cloud(std::size_t n_half, double half, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PointCloud c;
    c.points.reserve(2 * n_half);
    for (std::size_t i = 0; i < n_half; ++i) {
        const Vec3 u = random_unit_vector(rng);
        const double m = std::max({std::abs(u.x), std::abs(u.y), std::abs(u.z)});
        const double r = half / m;
        c.points.push_back(u * r);
        c.points.push_back(u * -r);
    }
    return c;
}

/// Star shape synthesized from every harmonic of degree 1..shape_degree with
/// amplitudes bounded away from zero. Low-degree coefficients of such clouds
/// are never degenerate, which keeps normalized dissimilarity ratios tame
/// where a spectrum-null shape would explode them.
inline PointCloud harmonic_blob_cloud(std::size_t n, std::uint64_t seed, int shape_degree = 5) {
    SplitMix64 rng(seed);
    std::vector<double> amp;
    for (int l = 1; l <= shape_degree; ++l) {
        for (int m = -l; m <= l; ++m) {
            const double mag = 0.04 + 0.06 * rng.next_double();
            amp.push_back(rng.next_double() < 0.5 ? -mag : mag);
        }
    }
    PointCloud c;
    c.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 u = random_unit_vector(rng);
        const double theta = std::acos(std::clamp(u.z, -1.0, 1.0));
        const double phi = std::atan2(u.y, u.x);
        double r = 1.0;
        std::size_t t = 0;
        for (int l = 1; l <= shape_degree; ++l) {
            for (int m = -l; m <= l; ++m) {
                r += amp[t++] * eval_ylm(l, m, theta, phi);
            }
        }
        c.points.push_back(u * std::max(r, 0.2));
    }
    return c;
}

/// Elongated body plus thin flat wings; anisotropic enough to spread power
/// across many degrees. Antipodally symmetric.
inline PointCloud airplane_like_cloud(std::size_t n_half, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PointCloud c;
    c.points.reserve(2 * n_half);
    for (std::size_t i = 0; i < n_half; ++i) {
        Vec3 p;
        if (rng.next_double() < 0.6) {
            // fuselage: long ellipsoid along x
            const Vec3 u = random_unit_vector(rng);
            p = {1.5 * u.x, 0.25 * u.y, 0.25 * u.z};
        } else {
            // wings: thin slab along y
            p = {0.4 * (2.0 * rng.next_double() - 1.0), 1.2 * (2.0 * rng.next_double() - 1.0),
                 0.05 * (2.0 * rng.next_double() - 1.0)};
        }
        c.points.push_back(p);
        c.points.push_back(p * -1.0);
    }
    return c;
}

/// One cloud point per grid node direction at the given radius, skipping the
/// polar row j=0 whose node directions all coincide. Points are emitted in
/// row-major cell order, so a projection assigns point (j-1)*n_lon + k to
/// cell (j, k).
inline PointCloud node_direction_cloud(const GridSpec& grid, double radius) {
    PointCloud c;
    c.points.reserve(static_cast<std::size_t>(grid.n_lat - 1) * grid.n_lon);
    for (int j = 1; j < grid.n_lat; ++j) {
        const double st = std::sin(grid.theta(j));
        const double ct = std::cos(grid.theta(j));
        for (int k = 0; k < grid.n_lon; ++k) {
            c.points.push_back({radius * st * std::cos(grid.phi(k)),
                                radius * st * std::sin(grid.phi(k)), radius * ct});
        }
    }
    return c;
}

/// Exhaustive nearest grid node for one direction (the contract for the
/// point -> grid assignment): greatest cos(great-circle distance), ties to
/// the lexicographically smallest (j, k).
inline std::size_t oracle_nearest_node(const GridSpec& grid, double cos_theta_p,
                                       double sin_theta_p, double phi_p) {
    double best = -2.0;
    std::size_t best_cell = 0;
    for (int j = 0; j < grid.n_lat; ++j) {
        const double ct = std::cos(grid.theta(j));
        const double st = std::sin(grid.theta(j));
        for (int k = 0; k < grid.n_lon; ++k) {
            const double score =
                ct * cos_theta_p + st * sin_theta_p * std::cos(grid.phi(k) - phi_p);
            if (score > best) {
                best = score;
                best_cell = grid.cell_index(j, k);
            }
        }
    }
    return best_cell;
}

/// Exhaustive nearest cloud point for every grid node (the contract for the
/// grid -> point values): greatest dot product with the node direction over
/// positive-radius points, ties to the lowest point index.
inline std::vector<double> oracle_grid_values(const PointCloud& cloud, const GridSpec& grid) {
    std::vector<double> values(grid.n_cells(), 0.0);
    std::vector<double> r(cloud.size());
    std::vector<Vec3> u(cloud.size());
    bool any_positive = false;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        r[i] = cloud.points[i].norm();
        if (r[i] > 0.0) {
            u[i] = cloud.points[i] * (1.0 / r[i]);
            any_positive = true;
        }
    }
    if (!any_positive) {
        return values;
    }
    for (int j = 0; j < grid.n_lat; ++j) {
        const double ct = std::cos(grid.theta(j));
        const double st = std::sin(grid.theta(j));
        for (int k = 0; k < grid.n_lon; ++k) {
            const Vec3 node{st * std::cos(grid.phi(k)), st * std::sin(grid.phi(k)), ct};
            double best = -2.0;
            std::size_t best_i = 0;
            bool have = false;
            for (std::size_t i = 0; i < cloud.size(); ++i) {
                if (r[i] <= 0.0) {
                    continue;
                }
                const double d = u[i].x * node.x + u[i].y * node.y + u[i].z * node.z;
                if (!have || d > best) {
                    best = d;
                    best_i = i;
                    have = true;
                }
            }
            values[grid.cell_index(j, k)] = r[best_i];
        }
    }
    return values;
}

}  // namespace lpf::test

#endif
