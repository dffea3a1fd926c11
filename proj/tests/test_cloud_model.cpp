#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "lpf/cloud_io.hpp"
#include "lpf/errors.hpp"
#include "lpf/point_cloud.hpp"
#include "test_util.hpp"

using namespace lpf;
using lpf::test::TempDir;

namespace {

void write_text(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    out << body;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("xyz parsing") {
    TempDir tmp("xyz");
    const auto path = tmp.path() / "pts.xyz";
    write_text(path, "0 0 1\n1 0 0\n");
    const PointCloud c = load_cloud(path, CloudFormat::Xyz);
    REQUIRE(c.size() == 2);
    CHECK(c.points[0].z == 1.0);
    CHECK(c.points[1].x == 1.0);

    SUBCASE("blank lines and extra columns tolerated") {
        write_text(path, "\n1 2 3 0.5 0.5\n\n4 5 6\n");
        const PointCloud c2 = load_cloud(path, CloudFormat::Xyz);
        REQUIRE(c2.size() == 2);
        CHECK(c2.points[0].y == 2.0);
    }
    SUBCASE("malformed line reported with its number") {
        write_text(path, "0 0 1\n1 bogus 0\n");
        try {
            load_cloud(path, CloudFormat::Xyz);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_cloud(tmp.path() / "nope.xyz", CloudFormat::Xyz), IoError);
    }
    SUBCASE("empty file") {
        write_text(path, "");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::Xyz), EmptyCloud);
    }
}

TEST_CASE("off parsing ignores faces") {
    TempDir tmp("off");
    const auto path = tmp.path() / "tri.off";
    write_text(path, "OFF\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    const PointCloud c = load_cloud(path, CloudFormat::Off);
    REQUIRE(c.size() == 3);
    CHECK(c.points[2].y == 1.0);

    SUBCASE("counts on the header line") {
        write_text(path, "OFF 3 0 0\n0 0 0\n1 0 0\n0 1 0\n");
        CHECK(load_cloud(path, CloudFormat::Off).size() == 3);
    }
    SUBCASE("bad header") {
        write_text(path, "NOFF\n3 0 0\n0 0 0\n1 0 0\n0 1 0\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::Off), ParseError);
    }
}

TEST_CASE("ply parsing reads vertex element only") {
    TempDir tmp("ply");
    const auto path = tmp.path() / "mesh.ply";
    write_text(path,
               "ply\nformat ascii 1.0\ncomment made by hand\n"
               "element vertex 2\nproperty float x\nproperty float y\nproperty float z\n"
               "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
               "0 0 1\n0.5 -1 2\n3 0 1 0\n");
    const PointCloud c = load_cloud(path, CloudFormat::PlyAscii);
    REQUIRE(c.size() == 2);
    CHECK(c.points[1].x == 0.5);
    CHECK(c.points[1].y == -1.0);

    SUBCASE("extra vertex properties are skipped by position") {
        write_text(path,
                   "ply\nformat ascii 1.0\nelement vertex 1\n"
                   "property float nx\nproperty float x\nproperty float y\nproperty float z\n"
                   "end_header\n9 1 2 3\n");
        const PointCloud c2 = load_cloud(path, CloudFormat::PlyAscii);
        REQUIRE(c2.size() == 1);
        CHECK(c2.points[0].x == 1.0);
        CHECK(c2.points[0].z == 3.0);
    }
    SUBCASE("binary ply rejected") {
        write_text(path,
                   "ply\nformat binary_little_endian 1.0\nelement vertex 1\n"
                   "property float x\nproperty float y\nproperty float z\nend_header\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::PlyAscii), ParseError);
    }
}

TEST_CASE("pclb byte roundtrip") {
    TempDir tmp("pclb");
    const auto path = tmp.path() / "c.pclb";
    const PointCloud c = lpf::test::random_float_cloud(1024, 11);
    save_cloud(c, path, CloudFormat::Pclb);

    // size arithmetic from the format definition
    CHECK(std::filesystem::file_size(path) == 8 + 1024 * 12);

    const PointCloud back = load_cloud(path, CloudFormat::Pclb);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back.points[i].x == c.points[i].x);
        CHECK(back.points[i].y == c.points[i].y);
        CHECK(back.points[i].z == c.points[i].z);
    }

    SUBCASE("load-save identity on the byte stream") {
        const std::string first = read_bytes(path);
        save_cloud(back, path, CloudFormat::Pclb);
        CHECK(read_bytes(path) == first);
    }
    SUBCASE("bad magic") {
        write_text(path, "XCLB\x01\x00\x00\x00");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::Pclb), ParseError);
    }
    SUBCASE("size mismatch") {
        std::string bytes = read_bytes(path);
        bytes.pop_back();
        write_text(path, bytes);
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::Pclb), ParseError);
    }
}

TEST_CASE("text formats round-trip to 9 significant digits") {
    TempDir tmp("txt");
    const PointCloud c = lpf::test::random_float_cloud(64, 3);
    for (CloudFormat fmt : {CloudFormat::Xyz, CloudFormat::PlyAscii, CloudFormat::Off}) {
        const auto path = tmp.path() / (std::string("c") + format_extension(fmt));
        save_cloud(c, path, fmt);
        const PointCloud back = load_cloud(path, fmt);
        REQUIRE(back.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Vec3& a = c.points[i];
            const Vec3& b = back.points[i];
            // 9 significant digits: exact as float32, < 1e-8 relative as double
            CHECK(static_cast<float>(b.x) == static_cast<float>(a.x));
            CHECK(static_cast<float>(b.y) == static_cast<float>(a.y));
            CHECK(static_cast<float>(b.z) == static_cast<float>(a.z));
            CHECK((b - a).norm() <= 1e-8 * std::max(1.0, a.norm()));
        }
    }
}

TEST_CASE("save errors") {
    const PointCloud c = lpf::test::random_float_cloud(4, 5);
    CHECK_THROWS_AS(save_cloud(c, "", CloudFormat::Xyz), IoError);
    CHECK_THROWS_AS(save_cloud(PointCloud{}, "/tmp/x.xyz", CloudFormat::Xyz), EmptyCloud);
}

TEST_CASE("label comes from the parent directory") {
    TempDir tmp("label");
    std::filesystem::create_directories(tmp.path() / "airplane");
    const auto path = tmp.path() / "airplane" / "a1.xyz";
    write_text(path, "1 2 3\n");
    const PointCloud c = load_cloud(path);
    REQUIRE(c.label.has_value());
    CHECK(*c.label == "airplane");
    CHECK(c.source_path.has_value());
}

TEST_CASE("center") {
    SUBCASE("already centered pair is unchanged") {
        PointCloud c;
        c.points = {{1, 0, 0}, {-1, 0, 0}};
        const CenteredCloud cc = center(c);
        CHECK(cc.centroid.norm() == 0.0);
        CHECK(cc.cloud.points[0].x == 1.0);
    }
    SUBCASE("single point moves to the origin") {
        PointCloud c;
        c.points = {{2, 2, 2}};
        const CenteredCloud cc = center(c);
        CHECK(cc.cloud.points[0].norm() == 0.0);
        CHECK(cc.centroid.x == 2.0);
        CHECK(cc.centroid.y == 2.0);
        CHECK(cc.centroid.z == 2.0);
    }
    SUBCASE("random cloud: recomputed mean vanishes") {
        const PointCloud c = lpf::test::random_cloud(100, 17);
        const CenteredCloud cc = center(c);
        Vec3 mean{};
        for (const Vec3& p : cc.cloud.points) {
            mean = mean + p;
        }
        mean = mean * (1.0 / 100.0);
        CHECK(mean.norm() < 1e-12);
        // the centroid restores the original
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK((cc.cloud.points[i] + cc.centroid - c.points[i]).norm() < 1e-12);
        }
    }
    SUBCASE("idempotent") {
        const PointCloud c = lpf::test::random_cloud(50, 23);
        const PointCloud once = center(c).cloud;
        const PointCloud twice = center(once).cloud;
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK((once.points[i] - twice.points[i]).norm() < 1e-12);
        }
    }
    SUBCASE("empty cloud") { CHECK_THROWS_AS(center(PointCloud{}), EmptyCloud); }
}

TEST_CASE("to_spherical axis cases") {
    const Vec3 origin{0, 0, 0};
    const double pi = std::numbers::pi;

    SphericalCoord s = to_spherical({0, 0, 1}, origin);
    CHECK(s.r == doctest::Approx(1.0));
    CHECK(s.theta == doctest::Approx(0.0));
    CHECK(s.phi == doctest::Approx(0.0));

    s = to_spherical({1, 0, 0}, origin);
    CHECK(s.r == doctest::Approx(1.0));
    CHECK(s.theta == doctest::Approx(pi / 2));
    CHECK(s.phi == doctest::Approx(0.0));

    s = to_spherical({0, -1, 0}, origin);
    CHECK(s.r == doctest::Approx(1.0));
    CHECK(s.theta == doctest::Approx(pi / 2));
    CHECK(s.phi == doctest::Approx(3 * pi / 2));

    s = to_spherical({0, 0, 0}, origin);
    CHECK(s.r == 0.0);
    CHECK(s.theta == 0.0);
    CHECK(s.phi == 0.0);

    // offset origin
    s = to_spherical({2, 2, 3}, {2, 2, 2});
    CHECK(s.r == doctest::Approx(1.0));
    CHECK(s.theta == doctest::Approx(0.0));
}

TEST_CASE("spherical round trip over random clouds") {
    const PointCloud c = lpf::test::random_cloud(500, 29);
    const Vec3 origin{0.1, -0.2, 0.05};
    for (const Vec3& p : c.points) {
        const SphericalCoord s = to_spherical(p, origin);
        CHECK(s.theta >= 0.0);
        CHECK(s.theta <= std::numbers::pi);
        CHECK(s.phi >= 0.0);
        CHECK(s.phi < 2 * std::numbers::pi);
        const Vec3 back = to_cartesian(s, origin);
        const double scale = std::max(1.0, (p - origin).norm());
        CHECK((back - p).norm() / scale < 1e-10);
    }
}
