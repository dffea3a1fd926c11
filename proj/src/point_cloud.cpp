#include "lpf/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lpf/errors.hpp"

namespace lpf {

Centroid centroid_of(const PointCloud& cloud) {
    if (cloud.empty()) {
        throw EmptyCloud("centroid_of: cloud has no points");
    }
    double sx = 0.0, sy = 0.0, sz = 0.0;
    for (const Vec3& p : cloud.points) {
        sx += p.x;
        sy += p.y;
        sz += p.z;
    }
    const double n = static_cast<double>(cloud.size());
    return {sx / n, sy / n, sz / n};
}

CenteredCloud center(const PointCloud& cloud) {
    const Centroid c = centroid_of(cloud);
    CenteredCloud out;
    out.centroid = c;
    out.cloud.label = cloud.label;
    out.cloud.source_path = cloud.source_path;
    out.cloud.points.reserve(cloud.size());
    for (const Vec3& p : cloud.points) {
        out.cloud.points.push_back(p - c);
    }
    return out;
}

SphericalCoord to_spherical(const Vec3& point, const Vec3& origin) {
    const Vec3 d = point - origin;
    const double r = d.norm();
    if (r == 0.0) {
        return {0.0, 0.0, 0.0};
    }
    double ct = d.z / r;
    ct = std::clamp(ct, -1.0, 1.0);
    const double theta = std::acos(ct);
    double phi = std::atan2(d.y, d.x);
    if (phi < 0.0) {
        phi += 2.0 * std::numbers::pi;
    }
    if (phi >= 2.0 * std::numbers::pi) {
        phi = 0.0;  // atan2 rounding can land exactly on 2*pi
    }
    return {r, theta, phi};
}

Vec3 to_cartesian(const SphericalCoord& coord, const Vec3& origin) {
    const double st = std::sin(coord.theta);
    return origin + Vec3{coord.r * st * std::cos(coord.phi), coord.r * st * std::sin(coord.phi),
                         coord.r * std::cos(coord.theta)};
}

double bounding_radius(const PointCloud& cloud, const Vec3& origin) {
    double r = 0.0;
    for (const Vec3& p : cloud.points) {
        r = std::max(r, (p - origin).norm());
    }
    return r;
}

}  // namespace lpf
