#ifndef LPF_SPHERE_GRID_HPP
#define LPF_SPHERE_GRID_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lpf/point_cloud.hpp"

namespace lpf {

/// Equiangular sampling grid on the sphere, Driscoll-Healy compatible:
/// n_lat = 2*(L+1) co-latitude rows, n_lon = 2*n_lat longitude columns,
/// theta_j = pi*j/n_lat, phi_k = 2*pi*k/n_lon.
struct GridSpec {
    int bandlimit = 0;
    int n_lat = 0;
    int n_lon = 0;

    double theta(int j) const;
    double phi(int k) const;
    std::size_t n_cells() const { return static_cast<std::size_t>(n_lat) * n_lon; }
    std::size_t cell_index(int j, int k) const { return static_cast<std::size_t>(j) * n_lon + k; }

    bool operator==(const GridSpec&) const = default;
};

inline constexpr int kMaxBandlimit = 512;

/// Grid for harmonic degree L, 1 <= L <= kMaxBandlimit.
/// Throws InvalidBandlimit.
GridSpec build_grid(int bandlimit);

/// The radial function f(theta, phi) sampled on a grid, plus the record of
/// which cloud points landed in which cell (needed for reconstruction).
///
/// values/occupancy are row-major n_lat x n_lon. The point assignment is
/// stored CSR-style: cell_start has n_cells+1 entries and assigned_points
/// lists point indices in ascending order within each cell.
///
/// A field produced by project() has non-negative values and occupancy
/// summing to the cloud size; a field synthesized by inverse_sht() may carry
/// negative values (reconstruction clamps them) and nominal occupancy.
struct RadialField {
    GridSpec grid;
    std::vector<double> values;
    std::vector<std::uint32_t> occupancy;
    std::vector<std::uint32_t> cell_start;
    std::vector<std::uint32_t> assigned_points;

    double value(int j, int k) const { return values[grid.cell_index(j, k)]; }
    std::uint32_t occupancy_at(int j, int k) const { return occupancy[grid.cell_index(j, k)]; }
    std::span<const std::uint32_t> assigned(int j, int k) const {
        const std::size_t c = grid.cell_index(j, k);
        return {assigned_points.data() + cell_start[c], assigned_points.data() + cell_start[c + 1]};
    }
    std::size_t occupied_cells() const;
};

/// Project a centered cloud onto the grid.
///
/// Each grid node takes the radius of the cloud point whose unit direction is
/// angularly nearest (greatest dot product, equivalently smallest great-circle
/// distance); node ties go to the lowest point index. Each cloud point is
/// assigned to its angularly nearest grid node; ties go to the
/// lexicographically smallest (j, k). Points at zero radius follow the
/// (theta=0, phi=0) convention for assignment and never win a node query
/// unless no positive-radius point exists.
///
/// Throws EmptyCloud, NotCentered (centroid norm > 1e-6 of bounding radius).
RadialField project(const PointCloud& cloud, const GridSpec& grid);

/// Debug dump, one row per cell: j,k,theta,phi,value,occupancy.
void dump_field_csv(const RadialField& field, const std::filesystem::path& path);

}  // namespace lpf

#endif
