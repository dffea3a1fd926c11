#ifndef LPF_DIGEST_HPP
#define LPF_DIGEST_HPP

#include <cstddef>
#include <filesystem>
#include <string>

namespace lpf {

/// SHA-256 of a byte buffer, lowercase hex.
std::string sha256_hex(const void* data, std::size_t size);

/// SHA-256 of a file's contents. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace lpf

#endif
