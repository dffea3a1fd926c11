#ifndef LPF_CLOUD_IO_HPP
#define LPF_CLOUD_IO_HPP

#include <filesystem>
#include <string>

#include "lpf/point_cloud.hpp"

namespace lpf {

/// Supported on-disk formats.
///   Xyz      - one "x y z" per line, whitespace separated
///   PlyAscii - ASCII PLY, vertex elements only (faces ignored)
///   Off      - OFF vertices (faces ignored)
///   Pclb     - binary: magic "PCLB", u32 LE count, count x 3 f32 LE
///
/// Pclb is the internal interchange format: byte-exact round trips and fast
/// batch IO. Text writers emit 9 significant digits, enough to round-trip
/// 32-bit data; parsing and formatting are locale-independent.
enum class CloudFormat { Xyz, PlyAscii, Off, Pclb };

/// Map a file extension (".xyz", ".ply", ".off", ".pclb") to a format.
/// Throws InvalidSpec for anything else.
CloudFormat format_from_extension(const std::filesystem::path& path);

const char* format_extension(CloudFormat format);
const char* format_name(CloudFormat format);
CloudFormat format_from_name(const std::string& name);

/// Load a cloud. Points keep file order; label is taken from the parent
/// directory name (dataset trees are organized one directory per class).
/// Throws ParseError (with line number for text formats), IoError, EmptyCloud.
PointCloud load_cloud(const std::filesystem::path& path, CloudFormat format);

/// Load with the format inferred from the extension.
PointCloud load_cloud(const std::filesystem::path& path);

/// Save a cloud. Throws IoError.
void save_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format);

}  // namespace lpf

#endif
