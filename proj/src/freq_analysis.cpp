#include "lpf/freq_analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include "lpf/errors.hpp"
#include "lpf/pipeline.hpp"

namespace lpf {

double DisCoefMap::at(int l, int m) const {
    if (l < 0 || l > bandlimit || m < -l || m > l) {
        throw InvalidDegreeOrder("dis entry (" + std::to_string(l) + ", " + std::to_string(m) +
                                 ") out of range for L=" + std::to_string(bandlimit));
    }
    return dis[ShCoefficients::index(l, m)];
}

namespace {

/// One pair's contribution: |c_adv - c_org| / max(|c_org|, eps_i), with the
/// per-pair guard eps_i = eps_rel * RMS(c_org) (falling back to eps_rel when
/// the original transform is identically zero).
void accumulate_pair(const ShCoefficients& org, const ShCoefficients& adv, double eps_rel,
                     std::vector<double>& sums) {
    double sq = 0.0;
    for (double c : org.values) {
        sq += c * c;
    }
    const double rms = std::sqrt(sq / static_cast<double>(org.values.size()));
    const double eps = rms > 0.0 ? eps_rel * rms : eps_rel;
    for (std::size_t i = 0; i < org.values.size(); ++i) {
        const double denom = std::max(std::abs(org.values[i]), eps);
        sums[i] += std::abs(adv.values[i] - org.values[i]) / denom;
    }
}

}  // namespace

DisCoefMap dis_coef_from_coeffs(std::span<const ShCoefficients> originals,
                                std::span<const ShCoefficients> adversarials, double eps_rel) {
    if (originals.size() != adversarials.size()) {
        throw LengthMismatch("coefficient sets differ in length: " +
                             std::to_string(originals.size()) + " vs " +
                             std::to_string(adversarials.size()));
    }
    if (originals.empty()) {
        throw EmptySet("dis_coef needs at least one pair");
    }
    const int L = originals.front().bandlimit;
    for (const auto& set : {originals, adversarials}) {
        for (const ShCoefficients& c : set) {
            if (c.bandlimit != L) {
                throw BandlimitMismatch("all coefficient sets must share one bandlimit");
            }
        }
    }
    DisCoefMap map;
    map.bandlimit = L;
    map.n_pairs = originals.size();
    map.eps_rel = eps_rel;
    map.dis.assign(static_cast<std::size_t>(L + 1) * (L + 1), 0.0);
    for (std::size_t i = 0; i < originals.size(); ++i) {  // fixed order, reproducible
        accumulate_pair(originals[i], adversarials[i], eps_rel, map.dis);
    }
    const double inv_n = 1.0 / static_cast<double>(map.n_pairs);
    for (double& d : map.dis) {
        d *= inv_n;
    }
    return map;
}

DisCoefMap dis_coef(std::span<const PointCloud> originals,
                    std::span<const PointCloud> adversarials, int bandlimit, double eps_rel) {
    if (originals.size() != adversarials.size()) {
        throw LengthMismatch("cloud sets differ in length: " + std::to_string(originals.size()) +
                             " vs " + std::to_string(adversarials.size()));
    }
    if (originals.empty()) {
        throw EmptySet("dis_coef needs at least one pair");
    }
    const GridSpec grid = build_grid(bandlimit);

    // transforms run in parallel; the averaging pass below stays index-ordered
    const std::size_t n = originals.size();
    std::vector<ShCoefficients> org_coeffs(n), adv_coeffs(n);
    auto transform = [&](const PointCloud& cloud) {
        return forward_sht(project(center(cloud).cloud, grid));
    };
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            org_coeffs[i] = transform(originals[i]);
            adv_coeffs[i] = transform(adversarials[i]);
        }
    } else {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= n) {
                    return;
                }
                org_coeffs[i] = transform(originals[i]);
                adv_coeffs[i] = transform(adversarials[i]);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    return dis_coef_from_coeffs(org_coeffs, adv_coeffs, eps_rel);
}

std::vector<double> spectrum_delta(const ShCoefficients& a, const ShCoefficients& b) {
    if (a.bandlimit != b.bandlimit) {
        throw BandlimitMismatch("spectrum_delta needs equal bandlimits, got " +
                                std::to_string(a.bandlimit) + " and " +
                                std::to_string(b.bandlimit));
    }
    std::vector<double> delta(static_cast<std::size_t>(a.bandlimit) + 1, 0.0);
    for (int l = 0; l <= a.bandlimit; ++l) {
        double d = 0.0;
        for (int m = -l; m <= l; ++m) {
            d += std::abs(a.values[ShCoefficients::index(l, m)] -
                          b.values[ShCoefficients::index(l, m)]);
        }
        delta[l] = d;
    }
    return delta;
}

std::vector<double> degree_marginal(const DisCoefMap& map) {
    std::vector<double> out(static_cast<std::size_t>(map.bandlimit) + 1, 0.0);
    for (int l = 0; l <= map.bandlimit; ++l) {
        double s = 0.0;
        for (int m = -l; m <= l; ++m) {
            s += map.dis[ShCoefficients::index(l, m)];
        }
        out[l] = s / (2.0 * l + 1.0);
    }
    return out;
}

namespace {

void write_value(std::ofstream& out, double v) {
    std::array<char, 64> buf;
    auto [last, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    (void)ec;
    out.write(buf.data(), last - buf.data());
}

}  // namespace

void export_triangle(const DisCoefMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "# bandlimit=" << map.bandlimit << ",n_pairs=" << map.n_pairs << ",eps_rel=";
    write_value(out, map.eps_rel);
    out << "\nl,m,dis\n";
    for (int l = 0; l <= map.bandlimit; ++l) {
        for (int m = -l; m <= l; ++m) {
            out << l << ',' << m << ',';
            write_value(out, map.dis[ShCoefficients::index(l, m)]);
            out << '\n';
        }
    }
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

void export_degree_marginal(const DisCoefMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    const std::vector<double> marginal = degree_marginal(map);
    out << "l,delta\n";
    for (int l = 0; l <= map.bandlimit; ++l) {
        out << l << ',';
        write_value(out, marginal[l]);
        out << '\n';
    }
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

}  // namespace lpf
