#include "lpf/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "lpf/digest.hpp"
#include "lpf/errors.hpp"
#include "lpf/rng.hpp"

namespace lpf {

PointCloud reconstruct(const RadialField& filtered, const RadialField& projection,
                       const Centroid& centroid) {
    if (filtered.grid != projection.grid) {
        throw GridMismatch("filtered field and projection use different grids");
    }
    const GridSpec& g = filtered.grid;
    PointCloud out;
    out.points.reserve(projection.occupied_cells());
    for (int j = 0; j < g.n_lat; ++j) {
        const double st = std::sin(g.theta(j));
        const double ct = std::cos(g.theta(j));
        for (int k = 0; k < g.n_lon; ++k) {
            if (projection.occupancy_at(j, k) == 0) {
                continue;
            }
            const double r = std::max(filtered.value(j, k), 0.0);
            out.points.push_back(centroid + Vec3{r * st * std::cos(g.phi(k)),
                                                 r * st * std::sin(g.phi(k)), r * ct});
        }
    }
    return out;
}

PointCloud resample(const PointCloud& cloud, std::size_t n_target, std::uint64_t seed) {
    if (cloud.empty()) {
        throw EmptyCloud("resample: cloud has no points");
    }
    if (n_target < cloud.size()) {
        throw ShrinkRequested("resample target " + std::to_string(n_target) +
                              " is below cloud size " + std::to_string(cloud.size()));
    }
    PointCloud out = cloud;
    out.points.reserve(n_target);
    SplitMix64 rng(seed);
    const std::uint64_t n = cloud.size();
    while (out.points.size() < n_target) {
        out.points.push_back(cloud.points[rng.next_below(n)]);
    }
    return out;
}

PointCloud lowpass_cloud(const PointCloud& cloud, const FilterSpec& filter, int bandlimit,
                         std::size_t n_target, std::uint64_t seed) {
    const CenteredCloud centered = center(cloud);
    const GridSpec grid = build_grid(bandlimit);
    const RadialField proj = project(centered.cloud, grid);
    const ShCoefficients coeffs = forward_sht(proj);
    const ShCoefficients damped = apply_filter(coeffs, filter);
    const RadialField synth = inverse_sht(damped, grid);
    PointCloud rebuilt = reconstruct(synth, proj, centered.centroid);
    PointCloud out = resample(rebuilt, n_target, seed);
    out.label = cloud.label;
    out.source_path = cloud.source_path;
    return out;
}

const char* defense_mode_name(DefenseMode mode) {
    return mode == DefenseMode::Lpf1 ? "lpf1" : "lpf2";
}

namespace {

bool has_cloud_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".xyz" || ext == ".ply" || ext == ".off" || ext == ".pclb";
}

nlohmann::ordered_json filter_json(const FilterSpec& f) {
    nlohmann::ordered_json j;
    if (f.kind == FilterSpec::Kind::Gaussian) {
        j["kind"] = "gaussian";
        j["s"] = f.s;
    } else {
        j["kind"] = "box";
        j["cutoff"] = f.cutoff;
    }
    return j;
}

std::filesystem::path with_suffix(const std::filesystem::path& rel, const char* suffix,
                                  const char* ext) {
    std::filesystem::path out = rel.parent_path();
    out /= rel.stem().string() + suffix + ext;
    return out;
}

struct FileResult {
    std::vector<ManifestEntry> outputs;
    std::vector<ManifestFailure> failures;
};

FileResult process_one(const DefenseDatasetJob& job, const std::filesystem::path& rel) {
    FileResult result;
    const std::string rel_str = rel.generic_string();
    try {
        const PointCloud original = load_cloud(job.input_root / rel);
        const std::uint64_t file_seed = job.seed ^ fnv1a64(rel_str);
        const PointCloud lowpassed =
            lowpass_cloud(original, job.filter, job.bandlimit, job.n_target, file_seed);

        const char* ext = format_extension(job.output_format);
        std::vector<std::pair<const PointCloud*, std::filesystem::path>> writes;
        std::filesystem::path lp_rel;
        if (job.mode == DefenseMode::Lpf1) {
            lp_rel = with_suffix(rel, "", ext);
        } else {
            lp_rel = with_suffix(rel, "_lp", ext);
            writes.emplace_back(&original, with_suffix(rel, "_orig", ext));
        }
        writes.emplace_back(&lowpassed, lp_rel);

        for (const auto& [cloud, dst_rel] : writes) {
            const std::filesystem::path dst = job.output_root / dst_rel;
            std::filesystem::create_directories(dst.parent_path());
            save_cloud(*cloud, dst, job.output_format);
            ManifestEntry entry;
            entry.src = rel_str;
            entry.dst = dst_rel.generic_string();
            entry.mode = cloud == &lowpassed ? "lp" : "orig";
            entry.digest = sha256_file(dst);
            entry.n_points = cloud->size();
            result.outputs.push_back(std::move(entry));
        }
    } catch (const std::exception& e) {
        result.failures.push_back({rel_str, e.what()});
    }
    return result;
}

}  // namespace

std::vector<std::filesystem::path> discover_clouds(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root)) {
        throw IoError("dataset root is not a directory: " + root.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && has_cloud_extension(entry.path())) {
            files.push_back(std::filesystem::relative(entry.path(), root));
        }
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });
    return files;
}

DatasetManifest make_defense_dataset(const DefenseDatasetJob& job) {
    const std::vector<std::filesystem::path> files = discover_clouds(job.input_root);
    std::error_code ec;
    std::filesystem::create_directories(job.output_root, ec);
    if (ec) {
        throw IoError("cannot create output root " + job.output_root.string() + ": " +
                      ec.message());
    }

    std::vector<FileResult> results(files.size());
    int threads = job.threads > 0 ? job.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, 64);
    if (files.size() < static_cast<std::size_t>(threads)) {
        threads = static_cast<int>(files.size());
    }

    if (threads <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) {
            results[i] = process_one(job, files[i]);
        }
    } else {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= files.size()) {
                    return;
                }
                results[i] = process_one(job, files[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    DatasetManifest manifest;
    manifest.job = job;
    for (FileResult& r : results) {  // results are file-ordered; no re-sort needed
        std::move(r.outputs.begin(), r.outputs.end(), std::back_inserter(manifest.outputs));
        std::move(r.failures.begin(), r.failures.end(), std::back_inserter(manifest.failures));
    }
    std::sort(manifest.outputs.begin(), manifest.outputs.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) {
                  return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
              });
    std::sort(manifest.failures.begin(), manifest.failures.end(),
              [](const ManifestFailure& a, const ManifestFailure& b) { return a.src < b.src; });

    manifest.write(job.output_root / "manifest.json");
    return manifest;
}

std::string DatasetManifest::to_json_string() const {
    nlohmann::ordered_json j;
    j["job"] = {{"mode", defense_mode_name(job.mode)},
                {"filter", filter_json(job.filter)},
                {"bandlimit", job.bandlimit},
                {"n_target", job.n_target},
                {"seed", job.seed},
                {"output_format", format_name(job.output_format)}};
    j["outputs"] = nlohmann::ordered_json::array();
    for (const ManifestEntry& e : outputs) {
        j["outputs"].push_back({{"src", e.src},
                                {"dst", e.dst},
                                {"mode", e.mode},
                                {"digest", e.digest},
                                {"n_points", e.n_points}});
    }
    j["failures"] = nlohmann::ordered_json::array();
    for (const ManifestFailure& f : failures) {
        j["failures"].push_back({{"src", f.src}, {"error", f.error}});
    }
    return j.dump(2) + "\n";
}

void DatasetManifest::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    const std::string body = to_json_string();
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

}  // namespace lpf
