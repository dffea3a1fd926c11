#ifndef LPF_FREQ_ANALYSIS_HPP
#define LPF_FREQ_ANALYSIS_HPP

#include <filesystem>
#include <span>
#include <vector>

#include "lpf/point_cloud.hpp"
#include "lpf/sht.hpp"

namespace lpf {

/// Per-coefficient average normalized dissimilarity between the harmonic
/// coefficients of original/adversarial cloud pairs:
///   dis(l,m) = (1/N) * sum_i |c_adv,i - c_org,i| / max(|c_org,i|, eps_i)
/// with eps_i = eps_rel * RMS of the i-th original's coefficients (an
/// absolute fallback of eps_rel applies when that RMS is zero).
struct DisCoefMap {
    int bandlimit = 0;
    std::vector<double> dis;  // same flat (l,m) layout as ShCoefficients
    std::size_t n_pairs = 0;
    double eps_rel = 0.0;

    double at(int l, int m) const;
};

inline constexpr double kDefaultDisCoefEps = 1e-8;

/// Compute the map from cloud pairs (index-aligned). Each cloud is centered,
/// projected at the given bandlimit, and transformed. Throws LengthMismatch,
/// EmptySet.
DisCoefMap dis_coef(std::span<const PointCloud> originals,
                    std::span<const PointCloud> adversarials, int bandlimit,
                    double eps_rel = kDefaultDisCoefEps);

/// Coefficient-level entry point (same statistic, transforms already done).
/// Throws LengthMismatch, EmptySet, BandlimitMismatch.
DisCoefMap dis_coef_from_coeffs(std::span<const ShCoefficients> originals,
                                std::span<const ShCoefficients> adversarials,
                                double eps_rel = kDefaultDisCoefEps);

/// Degree marginal of a coefficient difference: delta(l) = sum_m |a - b|.
/// Throws BandlimitMismatch.
std::vector<double> spectrum_delta(const ShCoefficients& a, const ShCoefficients& b);

/// Mean of dis(l, m) over m for each degree l.
std::vector<double> degree_marginal(const DisCoefMap& map);

/// CSV export, rows (l, m, dis) ordered by l then m, preceded by a header
/// comment with bandlimit, n_pairs and eps. Values round-trip exactly.
void export_triangle(const DisCoefMap& map, const std::filesystem::path& path);

/// CSV export of the degree marginal, rows (l, delta).
void export_degree_marginal(const DisCoefMap& map, const std::filesystem::path& path);

}  // namespace lpf

#endif
