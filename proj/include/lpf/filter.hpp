#ifndef LPF_FILTER_HPP
#define LPF_FILTER_HPP

#include <string>
#include <vector>

#include "lpf/sht.hpp"

namespace lpf {

/// Degree-weight profile for low-pass filtering in the harmonic domain.
///
/// Gaussian: w_l = exp(-l^2 / (2 S^2)), so w_0 = 1 and weights decay with
/// degree; larger S keeps more high-frequency content.
/// Box: w_l = 1 for l <= cutoff, 0 above.
struct FilterSpec {
    enum class Kind { Gaussian, Box };

    Kind kind = Kind::Gaussian;
    double s = 0.0;
    int cutoff = 0;

    static FilterSpec gaussian(double s) { return {Kind::Gaussian, s, 0}; }
    static FilterSpec box(int cutoff) { return {Kind::Box, 0.0, cutoff}; }

    std::string describe() const;
};

/// Weights w_0..w_L. Throws InvalidFilterParam (Gaussian S <= 0 or Box
/// cutoff < 0).
std::vector<double> degree_weights(const FilterSpec& filter, int bandlimit);

/// Scale every c_l^m by w_l.
ShCoefficients apply_filter(const ShCoefficients& coeffs, const FilterSpec& filter);

}  // namespace lpf

#endif
