#ifndef LPF_PIPELINE_HPP
#define LPF_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lpf/cloud_io.hpp"
#include "lpf/filter.hpp"
#include "lpf/point_cloud.hpp"
#include "lpf/sht.hpp"
#include "lpf/sphere_grid.hpp"

namespace lpf {

/// Spatial-domain reconstruction of a filtered field.
///
/// Emits exactly one point per cell that was occupied in the original
/// projection, at radius max(f_hat, 0) along the cell's node direction,
/// translated by the centroid. Cells are visited in row-major scan order.
/// Throws GridMismatch if the two fields disagree on the grid.
PointCloud reconstruct(const RadialField& filtered, const RadialField& projection,
                       const Centroid& centroid);

/// Pad a cloud up to n_target points by drawing existing points uniformly
/// with replacement (seeded, deterministic). The original points are kept in
/// order; draws are appended. Throws ShrinkRequested if n_target < size.
PointCloud resample(const PointCloud& cloud, std::size_t n_target, std::uint64_t seed);

/// The full low-pass transform of one cloud:
/// center -> project -> forward SHT -> degree weighting -> inverse SHT ->
/// reconstruct -> resample. Label and source path are carried through.
PointCloud lowpass_cloud(const PointCloud& cloud, const FilterSpec& filter, int bandlimit,
                         std::size_t n_target, std::uint64_t seed);

/// Dataset recipes: LPF1 writes the low-pass version of every cloud; LPF2
/// writes both the original and its low-pass version.
enum class DefenseMode { Lpf1, Lpf2 };

const char* defense_mode_name(DefenseMode mode);

struct DefenseDatasetJob {
    std::filesystem::path input_root;
    std::filesystem::path output_root;
    DefenseMode mode = DefenseMode::Lpf1;
    FilterSpec filter = FilterSpec::gaussian(20.0);
    int bandlimit = 100;
    std::size_t n_target = 1024;
    std::uint64_t seed = 0;
    CloudFormat output_format = CloudFormat::Pclb;
    /// Worker threads; 0 means hardware concurrency. Never affects output
    /// bytes: per-file RNG streams are split as seed ^ fnv1a64(relative path).
    int threads = 0;
};

struct ManifestEntry {
    std::string src;       // relative to input root
    std::string dst;       // relative to output root
    std::string mode;      // "lp" or "orig"
    std::string digest;    // SHA-256 of the output file bytes, hex
    std::size_t n_points = 0;
};

struct ManifestFailure {
    std::string src;
    std::string error;
};

struct DatasetManifest {
    DefenseDatasetJob job;
    std::vector<ManifestEntry> outputs;   // sorted by (src, dst)
    std::vector<ManifestFailure> failures;  // sorted by src

    std::string to_json_string() const;
    void write(const std::filesystem::path& path) const;
};

/// Run a dataset job: discover clouds under input_root (sorted by relative
/// path), push each through lowpass_cloud with its own seed stream, and
/// mirror the directory structure under output_root. Per-file failures are
/// recorded in the manifest and do not abort the job. Throws IoError only for
/// root-level problems (missing input root, unwritable output root).
DatasetManifest make_defense_dataset(const DefenseDatasetJob& job);

/// Cloud files recognized under a dataset root, sorted by relative path.
std::vector<std::filesystem::path> discover_clouds(const std::filesystem::path& root);

}  // namespace lpf

#endif
