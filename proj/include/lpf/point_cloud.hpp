#ifndef LPF_POINT_CLOUD_HPP
#define LPF_POINT_CLOUD_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lpf {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

using Centroid = Vec3;

/// Spherical coordinates: r >= 0, co-latitude theta in [0, pi],
/// longitude phi in [0, 2*pi).
struct SphericalCoord {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Ordered point list with provenance metadata. Point order is significant
/// and preserved by every operation and by file round trips.
struct PointCloud {
    std::vector<Vec3> points;
    std::optional<std::string> label;
    std::optional<std::string> source_path;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

struct CenteredCloud {
    PointCloud cloud;
    Centroid centroid;
};

/// Arithmetic mean of the cloud's points. Throws EmptyCloud.
Centroid centroid_of(const PointCloud& cloud);

/// Translate the cloud so its centroid sits at the origin.
/// The returned centroid restores the original cloud by translation.
CenteredCloud center(const PointCloud& cloud);

/// Cartesian -> spherical about the given origin. A point exactly at the
/// origin maps to (r=0, theta=0, phi=0); it carries no angular information.
SphericalCoord to_spherical(const Vec3& point, const Vec3& origin);

/// Spherical -> Cartesian about the given origin.
Vec3 to_cartesian(const SphericalCoord& coord, const Vec3& origin);

/// Largest distance from the given origin to any point (0 for empty input).
double bounding_radius(const PointCloud& cloud, const Vec3& origin);

}  // namespace lpf

#endif
