#include "lpf/sht.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "lpf/errors.hpp"

namespace lpf {

namespace {

constexpr double kInvSqrt4Pi = 0.28209479177387814;  // 1/sqrt(4*pi)
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_valid_grid(const GridSpec& g) {
    if (g.bandlimit < 1 || g.n_lat != 2 * (g.bandlimit + 1) || g.n_lon != 2 * g.n_lat) {
        throw GridMismatch("grid does not satisfy the equiangular layout for L=" +
                           std::to_string(g.bandlimit));
    }
}

/// cos(m*phi_k) and sin(m*phi_k) tables, m-major.
struct TrigTables {
    int n_lon;
    std::vector<double> cosm;
    std::vector<double> sinm;

    TrigTables(int max_order, const GridSpec& g) : n_lon(g.n_lon) {
        cosm.resize(static_cast<std::size_t>(max_order + 1) * n_lon);
        sinm.resize(cosm.size());
        for (int m = 0; m <= max_order; ++m) {
            for (int k = 0; k < n_lon; ++k) {
                const double a = m * g.phi(k);
                cosm[static_cast<std::size_t>(m) * n_lon + k] = std::cos(a);
                sinm[static_cast<std::size_t>(m) * n_lon + k] = std::sin(a);
            }
        }
    }

    const double* cos_row(int m) const { return cosm.data() + static_cast<std::size_t>(m) * n_lon; }
    const double* sin_row(int m) const { return sinm.data() + static_cast<std::size_t>(m) * n_lon; }
};

}  // namespace

double& ShCoefficients::at(int l, int m) {
    if (l < 0 || l > bandlimit || m < -l || m > l) {
        throw InvalidDegreeOrder("coefficient (" + std::to_string(l) + ", " + std::to_string(m) +
                                 ") out of range for L=" + std::to_string(bandlimit));
    }
    return values[index(l, m)];
}

double ShCoefficients::at(int l, int m) const {
    return const_cast<ShCoefficients*>(this)->at(l, m);
}

ShCoefficients zero_coefficients(int bandlimit) {
    if (bandlimit < 0 || bandlimit > kMaxBandlimit) {
        throw InvalidBandlimit("coefficient bandlimit out of range: " + std::to_string(bandlimit));
    }
    ShCoefficients c;
    c.bandlimit = bandlimit;
    c.values.assign(static_cast<std::size_t>(bandlimit + 1) * (bandlimit + 1), 0.0);
    return c;
}

double PowerSpectrum::total() const {
    double t = 0.0;
    for (double p : per_degree) {
        t += p;
    }
    return t;
}

namespace detail {

std::vector<double> dh_quadrature_weights(int n_lat) {
    const int half = n_lat / 2;
    std::vector<double> w(n_lat);
    for (int j = 0; j < n_lat; ++j) {
        const double theta = std::numbers::pi * j / n_lat;
        double s = 0.0;
        for (int p = 0; p < half; ++p) {
            s += std::sin((2 * p + 1) * theta) / (2 * p + 1);
        }
        w[j] = (4.0 / n_lat) * std::sin(theta) * s;
    }
    return w;
}

void normalized_legendre(int max_degree, double x, std::span<double> out) {
    const int L = max_degree;
    out[0] = kInvSqrt4Pi;
    if (L == 0) {
        return;
    }
    const double sx = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    for (int m = 1; m <= L; ++m) {
        out[tri_index(m, m)] =
            std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sx * out[tri_index(m - 1, m - 1)];
    }
    for (int m = 0; m < L; ++m) {
        out[tri_index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * out[tri_index(m, m)];
    }
    for (int m = 0; m <= L; ++m) {
        for (int l = m + 2; l <= L; ++l) {
            const double a =
                std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
            const double b = std::sqrt(
                ((static_cast<double>(l - 1)) * (l - 1) - static_cast<double>(m) * m) /
                (4.0 * (static_cast<double>(l - 1)) * (l - 1) - 1.0));
            out[tri_index(l, m)] = a * (x * out[tri_index(l - 1, m)] - b * out[tri_index(l - 2, m)]);
        }
    }
}

}  // namespace detail

double eval_ylm(int l, int m, double theta, double phi) {
    if (l < 0 || l > kMaxBandlimit || m < -l || m > l) {
        throw InvalidDegreeOrder("(l, m) = (" + std::to_string(l) + ", " + std::to_string(m) +
                                 ") is not a valid degree/order pair");
    }
    const int am = std::abs(m);
    const double x = std::cos(theta);
    const double sx = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));

    // diagonal term Nbar_am^am, then march up in degree along fixed order
    double p_mm = kInvSqrt4Pi;
    for (int mm = 1; mm <= am; ++mm) {
        p_mm *= std::sqrt((2.0 * mm + 1.0) / (2.0 * mm)) * sx;
    }
    double p = p_mm;
    if (l > am) {
        double p_prev = p_mm;
        double p_cur = std::sqrt(2.0 * am + 3.0) * x * p_mm;
        for (int ll = am + 2; ll <= l; ++ll) {
            const double a = std::sqrt((4.0 * ll * ll - 1.0) /
                                       (static_cast<double>(ll) * ll - static_cast<double>(am) * am));
            const double b =
                std::sqrt(((static_cast<double>(ll - 1)) * (ll - 1) - static_cast<double>(am) * am) /
                          (4.0 * (static_cast<double>(ll - 1)) * (ll - 1) - 1.0));
            const double p_next = a * (x * p_cur - b * p_prev);
            p_prev = p_cur;
            p_cur = p_next;
        }
        p = p_cur;
    }
    if (m == 0) {
        return p;
    }
    if (m > 0) {
        return kSqrt2 * p * std::cos(m * phi);
    }
    return kSqrt2 * p * std::sin(am * phi);
}

ShCoefficients forward_sht(const RadialField& field) {
    const GridSpec& g = field.grid;
    require_valid_grid(g);
    if (field.values.size() != g.n_cells()) {
        throw GridMismatch("field has " + std::to_string(field.values.size()) +
                           " samples, grid expects " + std::to_string(g.n_cells()));
    }
    const int L = g.bandlimit;
    const std::vector<double> q = detail::dh_quadrature_weights(g.n_lat);
    const double lon_weight = 2.0 * std::numbers::pi / g.n_lon;
    const TrigTables trig(L, g);

    // longitude reduction: Fc(j,m) = sum_k f(j,k) cos(m phi_k), same for sin
    const std::size_t orders = static_cast<std::size_t>(L) + 1;
    std::vector<double> fc(static_cast<std::size_t>(g.n_lat) * orders, 0.0);
    std::vector<double> fs(fc.size(), 0.0);
    for (int j = 0; j < g.n_lat; ++j) {
        const double* row = field.values.data() + g.cell_index(j, 0);
        for (int m = 0; m <= L; ++m) {
            const double* cm = trig.cos_row(m);
            const double* sm = trig.sin_row(m);
            double ac = 0.0, as = 0.0;
            for (int k = 0; k < g.n_lon; ++k) {
                ac += row[k] * cm[k];
                as += row[k] * sm[k];
            }
            fc[j * orders + m] = ac;
            fs[j * orders + m] = as;
        }
    }

    // co-latitude reduction against the Legendre rows, fixed row order
    ShCoefficients coeffs = zero_coefficients(L);
    std::vector<double> leg(detail::tri_index(L, L) + 1);
    for (int j = 0; j < g.n_lat; ++j) {
        detail::normalized_legendre(L, std::cos(g.theta(j)), leg);
        const double wj = q[j] * lon_weight;
        for (int m = 0; m <= L; ++m) {
            const double azim_c = (m == 0 ? 1.0 : kSqrt2) * fc[j * orders + m];
            const double azim_s = kSqrt2 * fs[j * orders + m];
            for (int l = m; l <= L; ++l) {
                const double wp = wj * leg[detail::tri_index(l, m)];
                coeffs.values[ShCoefficients::index(l, m)] += wp * azim_c;
                if (m > 0) {
                    coeffs.values[ShCoefficients::index(l, -m)] += wp * azim_s;
                }
            }
        }
    }
    return coeffs;
}

RadialField inverse_sht(const ShCoefficients& coeffs, const GridSpec& grid) {
    require_valid_grid(grid);
    const int L = coeffs.bandlimit;
    if (L < 0 || L > grid.bandlimit) {
        throw GridMismatch("coefficient bandlimit " + std::to_string(L) +
                           " exceeds grid bandlimit " + std::to_string(grid.bandlimit));
    }
    if (coeffs.values.size() != static_cast<std::size_t>(L + 1) * (L + 1)) {
        throw GridMismatch("coefficient array size does not match its bandlimit");
    }

    RadialField field;
    field.grid = grid;
    field.values.assign(grid.n_cells(), 0.0);
    field.occupancy.assign(grid.n_cells(), 1);
    field.cell_start.assign(grid.n_cells() + 1, 0);

    const TrigTables trig(L, grid);
    std::vector<double> leg(detail::tri_index(L, L) + 1);
    std::vector<double> gc(static_cast<std::size_t>(L) + 1);
    std::vector<double> gs(static_cast<std::size_t>(L) + 1);
    for (int j = 0; j < grid.n_lat; ++j) {
        detail::normalized_legendre(L, std::cos(grid.theta(j)), leg);
        for (int m = 0; m <= L; ++m) {
            double ac = 0.0, as = 0.0;
            for (int l = m; l <= L; ++l) {
                const double pv = leg[detail::tri_index(l, m)];
                ac += coeffs.values[ShCoefficients::index(l, m)] * pv;
                if (m > 0) {
                    as += coeffs.values[ShCoefficients::index(l, -m)] * pv;
                }
            }
            gc[m] = ac;
            gs[m] = as;
        }
        double* row = field.values.data() + grid.cell_index(j, 0);
        for (int k = 0; k < grid.n_lon; ++k) {
            double v = gc[0];
            for (int m = 1; m <= L; ++m) {
                v += kSqrt2 * (gc[m] * trig.cos_row(m)[k] + gs[m] * trig.sin_row(m)[k]);
            }
            row[k] = v;
        }
    }
    return field;
}

PowerSpectrum power_spectrum(const ShCoefficients& coeffs) {
    PowerSpectrum ps;
    ps.per_degree.assign(static_cast<std::size_t>(coeffs.bandlimit) + 1, 0.0);
    for (int l = 0; l <= coeffs.bandlimit; ++l) {
        double p = 0.0;
        for (int m = -l; m <= l; ++m) {
            const double c = coeffs.values[ShCoefficients::index(l, m)];
            p += c * c;
        }
        ps.per_degree[l] = p;
    }
    return ps;
}

void export_coefficients_csv(const ShCoefficients& coeffs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "l,m,c\n";
    std::array<char, 64> buf;
    for (int l = 0; l <= coeffs.bandlimit; ++l) {
        for (int m = -l; m <= l; ++m) {
            auto [last, ec] =
                std::to_chars(buf.data(), buf.data() + buf.size(),
                              coeffs.values[ShCoefficients::index(l, m)],
                              std::chars_format::general, 17);
            (void)ec;
            out << l << ',' << m << ',';
            out.write(buf.data(), last - buf.data());
            out << '\n';
        }
    }
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

}  // namespace lpf
