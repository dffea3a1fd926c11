#include "lpf/cloud_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <sstream>
#include <string_view>
#include <vector>

#include "lpf/errors.hpp"

namespace lpf {
namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

/// Parse leading whitespace-separated doubles from a line, at most `want`.
/// Returns how many were parsed; locale-independent.
std::size_t parse_doubles(std::string_view line, std::span<double> out, std::size_t want) {
    std::size_t got = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (got < want) {
        while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) {
            ++p;
        }
        if (p == end) {
            break;
        }
        double v = 0.0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) {
            return got;  // caller reports the malformed token
        }
        out[got++] = v;
        p = next;
    }
    return got;
}

void format_point_line(std::string& out, const Vec3& p) {
    std::array<char, 96> buf;
    for (int c = 0; c < 3; ++c) {
        const double v = c == 0 ? p.x : (c == 1 ? p.y : p.z);
        auto [last, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                        std::chars_format::general, 9);
        if (c > 0) {
            out.push_back(' ');
        }
        out.append(buf.data(), last);
        (void)ec;
    }
    out.push_back('\n');
}

void attach_provenance(PointCloud& cloud, const std::filesystem::path& path) {
    cloud.source_path = path.string();
    const std::string parent = path.parent_path().filename().string();
    if (!parent.empty()) {
        cloud.label = parent;
    }
}

PointCloud load_xyz(std::istream& in, const std::filesystem::path& path) {
    PointCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    std::array<double, 3> v{};
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (parse_doubles(t, v, 3) != 3) {
            parse_fail(path, line_no, "expected three coordinates");
        }
        cloud.points.push_back({v[0], v[1], v[2]});
    }
    return cloud;
}

PointCloud load_off(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    std::size_t line_no = 0;

    auto next_content_line = [&]() -> std::string_view {
        while (std::getline(in, line)) {
            ++line_no;
            const std::string_view t = trim(line);
            if (!t.empty() && t.front() != '#') {
                return t;
            }
        }
        parse_fail(path, line_no, "unexpected end of OFF file");
    };

    std::string_view header = next_content_line();
    if (!header.starts_with("OFF")) {
        parse_fail(path, line_no, "missing OFF header");
    }
    // counts may share the header line ("OFF 8 6 12") or follow on their own
    std::string_view counts_sv = trim(header.substr(3));
    if (counts_sv.empty()) {
        counts_sv = next_content_line();
    }
    std::array<double, 3> counts{};
    if (parse_doubles(counts_sv, counts, 3) != 3 || counts[0] < 0) {
        parse_fail(path, line_no, "malformed OFF count line");
    }
    const auto n_vertices = static_cast<std::size_t>(counts[0]);

    PointCloud cloud;
    cloud.points.reserve(n_vertices);
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < n_vertices; ++i) {
        const std::string_view t = next_content_line();
        if (parse_doubles(t, v, 3) != 3) {
            parse_fail(path, line_no, "expected vertex coordinates");
        }
        cloud.points.push_back({v[0], v[1], v[2]});
    }
    return cloud;  // faces ignored
}

PointCloud load_ply(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> std::string_view {
        if (!std::getline(in, line)) {
            parse_fail(path, line_no, "unexpected end of PLY header");
        }
        ++line_no;
        return trim(line);
    };

    if (next_line() != "ply") {
        parse_fail(path, line_no, "missing ply magic");
    }

    std::size_t n_vertices = 0;
    int x_idx = -1, y_idx = -1, z_idx = -1;
    int property_count = 0;
    bool in_vertex_element = false;
    bool saw_format = false;
    bool vertex_first = false;
    bool saw_any_element = false;

    for (;;) {
        const std::string_view t = next_line();
        if (t == "end_header") {
            break;
        }
        std::istringstream ts{std::string(t)};
        std::string keyword;
        ts >> keyword;
        if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) {
            continue;
        }
        if (keyword == "format") {
            std::string kind;
            ts >> kind;
            if (kind != "ascii") {
                parse_fail(path, line_no, "only ASCII PLY is supported");
            }
            saw_format = true;
        } else if (keyword == "element") {
            std::string name;
            std::size_t count = 0;
            ts >> name >> count;
            in_vertex_element = (name == "vertex");
            if (in_vertex_element) {
                n_vertices = count;
                vertex_first = !saw_any_element;
            }
            saw_any_element = true;
        } else if (keyword == "property" && in_vertex_element) {
            std::string type, name;
            ts >> type >> name;
            if (type == "list") {
                parse_fail(path, line_no, "list property in vertex element");
            }
            if (name == "x") {
                x_idx = property_count;
            } else if (name == "y") {
                y_idx = property_count;
            } else if (name == "z") {
                z_idx = property_count;
            }
            ++property_count;
        }
    }
    if (!saw_format) {
        parse_fail(path, line_no, "missing PLY format line");
    }
    if (x_idx < 0 || y_idx < 0 || z_idx < 0) {
        parse_fail(path, line_no, "vertex element lacks x/y/z properties");
    }
    if (!vertex_first) {
        // vertices must come first for a line-oriented reader; other element
        // data after them is skipped
        parse_fail(path, line_no, "vertex element is not the first element");
    }

    PointCloud cloud;
    cloud.points.reserve(n_vertices);
    std::vector<double> fields(static_cast<std::size_t>(property_count));
    for (std::size_t i = 0; i < n_vertices; ++i) {
        std::string_view t;
        do {
            if (!std::getline(in, line)) {
                parse_fail(path, line_no, "unexpected end of PLY vertex data");
            }
            ++line_no;
            t = trim(line);
        } while (t.empty());
        if (parse_doubles(t, fields, fields.size()) != fields.size()) {
            parse_fail(path, line_no, "malformed vertex record");
        }
        cloud.points.push_back({fields[x_idx], fields[y_idx], fields[z_idx]});
    }
    return cloud;
}

constexpr char kPclbMagic[4] = {'P', 'C', 'L', 'B'};

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void append_u32_le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void append_f32_le(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    append_u32_le(out, bits);
}

PointCloud load_pclb(std::istream& in, const std::filesystem::path& path) {
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kPclbMagic, 4) != 0) {
        parse_fail(path, 0, "missing PCLB magic");
    }
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint32_t count = read_u32_le(raw + 4);
    const std::size_t expected = 8 + static_cast<std::size_t>(count) * 12;
    if (bytes.size() != expected) {
        parse_fail(path, 0, "PCLB size mismatch: expected " + std::to_string(expected) +
                                " bytes, got " + std::to_string(bytes.size()));
    }
    PointCloud cloud;
    cloud.points.reserve(count);
    const unsigned char* p = raw + 8;
    for (std::uint32_t i = 0; i < count; ++i) {
        float c[3];
        for (float& f : c) {
            const std::uint32_t bits = read_u32_le(p);
            std::memcpy(&f, &bits, sizeof f);
            p += 4;
        }
        cloud.points.push_back({c[0], c[1], c[2]});
    }
    return cloud;
}

}  // namespace

CloudFormat format_from_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".xyz") {
        return CloudFormat::Xyz;
    }
    if (ext == ".ply") {
        return CloudFormat::PlyAscii;
    }
    if (ext == ".off") {
        return CloudFormat::Off;
    }
    if (ext == ".pclb") {
        return CloudFormat::Pclb;
    }
    throw InvalidSpec("unrecognized cloud extension: '" + ext + "' (" + path.string() + ")");
}

const char* format_extension(CloudFormat format) {
    switch (format) {
        case CloudFormat::Xyz:
            return ".xyz";
        case CloudFormat::PlyAscii:
            return ".ply";
        case CloudFormat::Off:
            return ".off";
        case CloudFormat::Pclb:
            return ".pclb";
    }
    return ".pclb";
}

const char* format_name(CloudFormat format) {
    switch (format) {
        case CloudFormat::Xyz:
            return "xyz";
        case CloudFormat::PlyAscii:
            return "ply";
        case CloudFormat::Off:
            return "off";
        case CloudFormat::Pclb:
            return "pclb";
    }
    return "pclb";
}

CloudFormat format_from_name(const std::string& name) {
    if (name == "xyz") {
        return CloudFormat::Xyz;
    }
    if (name == "ply") {
        return CloudFormat::PlyAscii;
    }
    if (name == "off") {
        return CloudFormat::Off;
    }
    if (name == "pclb") {
        return CloudFormat::Pclb;
    }
    throw InvalidSpec("unknown cloud format name: " + name);
}

PointCloud load_cloud(const std::filesystem::path& path, CloudFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    PointCloud cloud;
    switch (format) {
        case CloudFormat::Xyz:
            cloud = load_xyz(in, path);
            break;
        case CloudFormat::PlyAscii:
            cloud = load_ply(in, path);
            break;
        case CloudFormat::Off:
            cloud = load_off(in, path);
            break;
        case CloudFormat::Pclb:
            cloud = load_pclb(in, path);
            break;
    }
    if (cloud.empty()) {
        throw EmptyCloud("no points in " + path.string());
    }
    for (const Vec3& p : cloud.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
            throw ParseError("non-finite coordinate in " + path.string());
        }
    }
    attach_provenance(cloud, path);
    return cloud;
}

PointCloud load_cloud(const std::filesystem::path& path) {
    return load_cloud(path, format_from_extension(path));
}

void save_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFormat format) {
    if (cloud.empty()) {
        throw EmptyCloud("refusing to save an empty cloud to " + path.string());
    }
    std::string body;
    switch (format) {
        case CloudFormat::Xyz: {
            for (const Vec3& p : cloud.points) {
                format_point_line(body, p);
            }
            break;
        }
        case CloudFormat::PlyAscii: {
            body = "ply\nformat ascii 1.0\nelement vertex " + std::to_string(cloud.size()) +
                   "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
            for (const Vec3& p : cloud.points) {
                format_point_line(body, p);
            }
            break;
        }
        case CloudFormat::Off: {
            body = "OFF\n" + std::to_string(cloud.size()) + " 0 0\n";
            for (const Vec3& p : cloud.points) {
                format_point_line(body, p);
            }
            break;
        }
        case CloudFormat::Pclb: {
            body.reserve(8 + cloud.size() * 12);
            body.append(kPclbMagic, 4);
            append_u32_le(body, static_cast<std::uint32_t>(cloud.size()));
            for (const Vec3& p : cloud.points) {
                append_f32_le(body, static_cast<float>(p.x));
                append_f32_le(body, static_cast<float>(p.y));
                append_f32_le(body, static_cast<float>(p.z));
            }
            break;
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

}  // namespace lpf
