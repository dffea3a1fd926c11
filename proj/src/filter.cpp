#include "lpf/filter.hpp"

#include <cmath>

#include "lpf/errors.hpp"

namespace lpf {

std::string FilterSpec::describe() const {
    if (kind == Kind::Gaussian) {
        return "gaussian(S=" + std::to_string(s) + ")";
    }
    return "box(cutoff=" + std::to_string(cutoff) + ")";
}

std::vector<double> degree_weights(const FilterSpec& filter, int bandlimit) {
    if (bandlimit < 0) {
        throw InvalidFilterParam("negative bandlimit");
    }
    std::vector<double> w(static_cast<std::size_t>(bandlimit) + 1);
    if (filter.kind == FilterSpec::Kind::Gaussian) {
        if (!(filter.s > 0.0)) {
            throw InvalidFilterParam("Gaussian filter needs S > 0, got " +
                                     std::to_string(filter.s));
        }
        const double inv_two_s2 = 1.0 / (2.0 * filter.s * filter.s);
        for (int l = 0; l <= bandlimit; ++l) {
            w[l] = std::exp(-static_cast<double>(l) * l * inv_two_s2);
        }
    } else {
        if (filter.cutoff < 0) {
            throw InvalidFilterParam("Box filter needs cutoff >= 0, got " +
                                     std::to_string(filter.cutoff));
        }
        for (int l = 0; l <= bandlimit; ++l) {
            w[l] = l <= filter.cutoff ? 1.0 : 0.0;
        }
    }
    return w;
}

ShCoefficients apply_filter(const ShCoefficients& coeffs, const FilterSpec& filter) {
    const std::vector<double> w = degree_weights(filter, coeffs.bandlimit);
    ShCoefficients out = coeffs;
    for (int l = 0; l <= coeffs.bandlimit; ++l) {
        for (int m = -l; m <= l; ++m) {
            out.values[ShCoefficients::index(l, m)] *= w[l];
        }
    }
    return out;
}

}  // namespace lpf
