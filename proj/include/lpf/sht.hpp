#ifndef LPF_SHT_HPP
#define LPF_SHT_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "lpf/sphere_grid.hpp"

namespace lpf {

/// Real spherical-harmonic coefficients c_l^m for 0 <= l <= L, |m| <= l,
/// stored flat with index l*l + l + m ((L+1)^2 entries).
///
/// Convention: orthonormal real harmonics,
///   Y_l^0      = Nbar_l^0(cos theta)
///   Y_l^m, m>0 = sqrt(2) * Nbar_l^m(cos theta) * cos(m phi)
///   Y_l^m, m<0 = sqrt(2) * Nbar_l^|m|(cos theta) * sin(|m| phi)
/// where Nbar_l^m = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!) * P_l^m, with P_l^m
/// the associated Legendre function without the Condon-Shortley phase.
struct ShCoefficients {
    int bandlimit = 0;
    std::vector<double> values;

    static std::size_t index(int l, int m) {
        return static_cast<std::size_t>(l) * l + l + m;
    }

    /// Bounds-checked access; throws InvalidDegreeOrder.
    double& at(int l, int m);
    double at(int l, int m) const;

    std::size_t size() const { return values.size(); }
};

ShCoefficients zero_coefficients(int bandlimit);

/// Per-degree power P(l) = sum_m (c_l^m)^2.
struct PowerSpectrum {
    std::vector<double> per_degree;

    double total() const;
};

/// Evaluate one real harmonic. Requires |m| <= l <= kMaxBandlimit;
/// throws InvalidDegreeOrder. Stable up to l = 512 (no factorial overflow).
double eval_ylm(int l, int m, double theta, double phi);

/// Analysis: grid samples -> coefficients, using Driscoll-Healy quadrature on
/// the field's equiangular grid. Exact (to roundoff) for functions
/// bandlimited at the grid's L. Throws GridMismatch.
ShCoefficients forward_sht(const RadialField& field);

/// Synthesis: coefficients -> grid samples,
/// f(theta_j, phi_k) = sum_{l,m} c_l^m Y_l^m(theta_j, phi_k).
/// The grid bandlimit must be >= the coefficient bandlimit (GridMismatch
/// otherwise). The result reports every cell as occupied once; pipelines that
/// need the original occupancy keep it from the paired projection.
RadialField inverse_sht(const ShCoefficients& coeffs, const GridSpec& grid);

PowerSpectrum power_spectrum(const ShCoefficients& coeffs);

/// Coefficient export, one row per (l, m): l,m,c.
void export_coefficients_csv(const ShCoefficients& coeffs, const std::filesystem::path& path);

namespace detail {

/// Driscoll-Healy co-latitude quadrature weights for an n_lat-row grid
/// (n_lat even). Satisfy sum_j w_j P_n(cos theta_j) = 2*delta_{n0} for
/// n = 0 .. n_lat-1.
std::vector<double> dh_quadrature_weights(int n_lat);

/// Normalized associated Legendre values Nbar_l^m(x) for all 0 <= m <= l <= L,
/// packed triangularly at index l*(l+1)/2 + m. out.size() must be
/// (L+1)*(L+2)/2. Standard three-term upward recurrence, normalized on the
/// fly so no factorial is ever formed.
void normalized_legendre(int max_degree, double x, std::span<double> out);

inline std::size_t tri_index(int l, int m) {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}

}  // namespace detail

}  // namespace lpf

#endif
