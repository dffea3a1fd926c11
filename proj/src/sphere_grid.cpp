#include "lpf/sphere_grid.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "lpf/errors.hpp"

namespace lpf {

double GridSpec::theta(int j) const {
    return std::numbers::pi * j / n_lat;
}

double GridSpec::phi(int k) const {
    return 2.0 * std::numbers::pi * k / n_lon;
}

GridSpec build_grid(int bandlimit) {
    if (bandlimit < 1 || bandlimit > kMaxBandlimit) {
        throw InvalidBandlimit("bandlimit must be in [1, " + std::to_string(kMaxBandlimit) +
                               "], got " + std::to_string(bandlimit));
    }
    GridSpec g;
    g.bandlimit = bandlimit;
    g.n_lat = 2 * (bandlimit + 1);
    g.n_lon = 2 * g.n_lat;
    return g;
}

std::size_t RadialField::occupied_cells() const {
    return static_cast<std::size_t>(
        std::count_if(occupancy.begin(), occupancy.end(), [](std::uint32_t o) { return o > 0; }));
}

namespace {

struct PointAngles {
    double r;
    double cos_theta;
    double sin_theta;
    double phi;
};

/// Nearest grid node to one point direction, by greatest
/// cos(great-circle distance) = cos(t_j) cos(t_p) + sin(t_j) sin(t_p) cos(dphi).
/// Ties resolve to the lexicographically smallest (j, k). Per row only the
/// columns bracketing the point's longitude can win, except when the
/// longitude term vanishes and every column ties (then column 0 is smallest).
std::size_t nearest_node(const GridSpec& grid, const PointAngles& pt,
                         std::span<const double> cos_tj, std::span<const double> sin_tj) {
    const double dphi = 2.0 * std::numbers::pi / grid.n_lon;
    double best = -2.0;
    int best_j = 0, best_k = 0;
    for (int j = 0; j < grid.n_lat; ++j) {
        const double polar = cos_tj[j] * pt.cos_theta;
        const double band = sin_tj[j] * pt.sin_theta;
        int k = 0;
        double score;
        if (band == 0.0) {
            score = polar + band;  // every column identical; keep k = 0
        } else {
            const int k_lo = static_cast<int>(std::floor(pt.phi / dphi));
            const int k0 = ((k_lo % grid.n_lon) + grid.n_lon) % grid.n_lon;
            const int k1 = (k0 + 1) % grid.n_lon;
            const double s0 = polar + band * std::cos(grid.phi(k0) - pt.phi);
            const double s1 = polar + band * std::cos(grid.phi(k1) - pt.phi);
            // strict comparison keeps the smaller column index on ties
            if (k1 < k0) {  // wrapped: candidate pair is (n_lon-1, 0)
                score = s1;
                k = k1;
                if (s0 > score) {
                    score = s0;
                    k = k0;
                }
            } else {
                score = s0;
                k = k0;
                if (s1 > score) {
                    score = s1;
                    k = k1;
                }
            }
        }
        if (score > best) {
            best = score;
            best_j = j;
            best_k = k;
        }
    }
    return grid.cell_index(best_j, best_k);
}

}  // namespace

RadialField project(const PointCloud& cloud, const GridSpec& grid) {
    const std::size_t n = cloud.size();
    if (n == 0) {
        throw EmptyCloud("project: cloud has no points");
    }
    const Centroid c = centroid_of(cloud);
    const double bound = bounding_radius(cloud, {0.0, 0.0, 0.0});
    if (c.norm() > 1e-6 * bound) {
        throw NotCentered("project: centroid norm " + std::to_string(c.norm()) +
                          " exceeds 1e-6 of bounding radius " + std::to_string(bound));
    }

    // per-point spherical data and unit directions
    std::vector<PointAngles> angles(n);
    std::vector<double> ux(n), uy(n), uz(n), radius(n);
    std::vector<std::uint32_t> positive;  // indices of points with r > 0, ascending
    positive.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p = cloud.points[i];
        const SphericalCoord s = to_spherical(p, {0.0, 0.0, 0.0});
        radius[i] = s.r;
        angles[i] = {s.r, std::cos(s.theta), std::sin(s.theta), s.phi};
        if (s.r > 0.0) {
            ux[i] = p.x / s.r;
            uy[i] = p.y / s.r;
            uz[i] = p.z / s.r;
            positive.push_back(static_cast<std::uint32_t>(i));
        } else {
            // convention: theta=0, phi=0 -> the formula above sees the pole
            angles[i].cos_theta = 1.0;
            angles[i].sin_theta = 0.0;
            angles[i].phi = 0.0;
        }
    }

    std::vector<double> cos_tj(grid.n_lat), sin_tj(grid.n_lat);
    for (int j = 0; j < grid.n_lat; ++j) {
        cos_tj[j] = std::cos(grid.theta(j));
        sin_tj[j] = std::sin(grid.theta(j));
    }

    RadialField field;
    field.grid = grid;
    const std::size_t n_cells = grid.n_cells();
    field.values.assign(n_cells, 0.0);
    field.occupancy.assign(n_cells, 0);

    // point -> grid: occupancy and CSR assignment (counting sort keeps the
    // point indices ascending within each cell)
    std::vector<std::uint32_t> home_cell(n);
    for (std::size_t i = 0; i < n; ++i) {
        home_cell[i] = static_cast<std::uint32_t>(nearest_node(grid, angles[i], cos_tj, sin_tj));
        ++field.occupancy[home_cell[i]];
    }
    field.cell_start.assign(n_cells + 1, 0);
    for (std::size_t cidx = 0; cidx < n_cells; ++cidx) {
        field.cell_start[cidx + 1] = field.cell_start[cidx] + field.occupancy[cidx];
    }
    field.assigned_points.resize(n);
    std::vector<std::uint32_t> fill = field.cell_start;
    for (std::size_t i = 0; i < n; ++i) {
        field.assigned_points[fill[home_cell[i]]++] = static_cast<std::uint32_t>(i);
    }

    // grid -> point: every node takes the radius of its angularly nearest
    // positive-radius point (zero-radius points have no direction)
    if (positive.empty()) {
        return field;  // single degenerate cloud at the centroid: f stays 0
    }
    const std::uint32_t* cand = positive.data();
    const std::size_t n_cand = positive.size();
    for (int j = 0; j < grid.n_lat; ++j) {
        const double ct = cos_tj[j];
        const double st = sin_tj[j];
        for (int k = 0; k < grid.n_lon; ++k) {
            const double nx = st * std::cos(grid.phi(k));
            const double ny = st * std::sin(grid.phi(k));
            const double nz = ct;
            double best = -2.0;
            std::uint32_t best_i = cand[0];
            for (std::size_t t = 0; t < n_cand; ++t) {
                const std::uint32_t i = cand[t];
                const double d = ux[i] * nx + uy[i] * ny + uz[i] * nz;
                if (d > best) {
                    best = d;
                    best_i = i;
                }
            }
            field.values[grid.cell_index(j, k)] = radius[best_i];
        }
    }
    return field;
}

void dump_field_csv(const RadialField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "j,k,theta,phi,value,occupancy\n";
    std::array<char, 64> buf;
    auto write_num = [&](double v) {
        auto [last, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                        std::chars_format::general, 17);
        (void)ec;
        out.write(buf.data(), last - buf.data());
    };
    for (int j = 0; j < field.grid.n_lat; ++j) {
        for (int k = 0; k < field.grid.n_lon; ++k) {
            out << j << ',' << k << ',';
            write_num(field.grid.theta(j));
            out << ',';
            write_num(field.grid.phi(k));
            out << ',';
            write_num(field.value(j, k));
            out << ',' << field.occupancy_at(j, k) << '\n';
        }
    }
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

}  // namespace lpf
