#include "harmconv/convolve.hpp"
#include "harmconv/errors.hpp"
#include "harmconv/geom.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace harmconv;
using oracle::kPi;

namespace {

ImageGrid unit_square_grid()
{
    ImageGrid g;
    g.polylines = {{{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 1.0}, {0.0, 1.0}}};
    return g;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("harmconv_test_" + name);
}

}  // namespace

TEST_SUITE("geom")
{
    TEST_CASE("identity map reproduces the source grid")
    {
        const HarmonicMap id = make_series({0.0, 1.0}, {});
        const ImageGrid g = image_grid(id, 3, 4, 16, 0.9);
        REQUIRE(g.polylines.size() == 7);
        for (int k = 0; k < 3; ++k) {
            const double r = 0.9 * (k + 1) / 3.0;
            for (int j = 0; j <= 16; ++j) {
                const Cx z = std::polar(r, 2.0 * kPi * j / 16);
                CHECK(std::abs(g.polylines[k][j].x - z.real()) < 1e-15);
                CHECK(std::abs(g.polylines[k][j].y - z.imag()) < 1e-15);
            }
        }
        const auto& ray = g.polylines[3];
        CHECK(ray.front().x == 0.0);
        CHECK(ray.back().x == doctest::Approx(0.9));
        CHECK(g.radii.size() == 3);
        CHECK(g.ray_angles.size() == 4);
        CHECK_THROWS_AS(image_grid(id, 0, 0, 16, 0.9), ParameterError);
        CHECK_THROWS_AS(image_grid(id, 1, 1, 16, 1.0), ParameterError);
    }

    TEST_CASE("half-plane image stays right of Re w = -1/2")
    {
        const ImageGrid g = image_grid(make_half_plane(0.0), 12, 24, 256, 0.99);
        for (const auto& line : g.polylines) {
            for (const Point& p : line) {
                CHECK(p.x > -0.5 - 1e-6);
            }
        }
    }

    TEST_CASE("strip image stays inside the strip")
    {
        const HarmonicMap f = make_strip(kPi / 2.0, DilatationSpec::rotated_power(0.0, 1), truncation_for_radius(0.99));
        const ImageGrid g = image_grid(f, 12, 24, 256, 0.99);
        double widest = 0.0;
        for (const auto& line : g.polylines) {
            for (const Point& p : line) {
                widest = std::max(widest, std::abs(p.x));
            }
        }
        // Re(h + g) = Re arctan z, bounded by π/4; the outer ring gets close.
        CHECK(widest < kPi / 4.0);
        CHECK(widest > 0.7);
        double boundary = 0.0;
        for (int j = 0; j < 256; ++j) {
            boundary = std::max(boundary, std::abs(strip_sum(kPi / 2.0, std::polar(0.99, 2.0 * kPi * j / 256)).real()));
        }
        CHECK(widest <= boundary + 1e-9);
    }

    TEST_CASE("images shrink to the origin")
    {
        const HarmonicMap f = convolved_map({0.3, 1.0, 0.5, 1}, 256);
        const ImageGrid g = image_grid(f, 1, 0, 64, 0.01);
        for (const Point& p : g.polylines[0]) {
            CHECK(std::hypot(p.x, p.y) < 2.0 * 0.01);
        }
    }

    TEST_CASE("crossing count on synthetic curves")
    {
        // Square: two crossings at every interior level.
        const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        const CidResult s = cid_real_check(square, 16);
        CHECK(s.passed);
        CHECK(s.crossings == 2);

        // U shape: levels through the arms meet the boundary four times.
        const std::vector<Point> u{{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
        const CidResult r = cid_real_check(u, 64);
        CHECK_FALSE(r.passed);
        CHECK(r.crossings == 4);
        CHECK(r.worst_line > 1.0);

        // A vertex exactly on a level and the curve touching it from one side.
        const std::vector<Point> touch{{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}, {2, -1}};
        CHECK(cid_real_check(touch, 3).crossings >= 2);

        const std::vector<Point> point{{0, 0}, {0, 0}, {0, 0}};
        CHECK_THROWS_AS(cid_real_check(point, 4), ParameterError);
    }

    TEST_CASE("crescent series map fails the check")
    {
        // h = z, g = 0.4 z^3: the image of |z| = 0.99 is a rounded triangle with an inward dent,
        // so some horizontal levels cross it four times.
        const HarmonicMap f = make_series({0.0, 1.0}, {0.0, 0.0, 0.0, 0.4});
        const CidResult r = cid_real_check(f, 0.99, 64, 4096);
        CHECK_FALSE(r.passed);
        CHECK(r.crossings >= 4);
    }

    TEST_CASE("maps known to be convex in the real direction pass")
    {
        CHECK(cid_real_check(make_half_plane(0.0), 0.99, 64, 4096).passed);
        const HarmonicMap f = convolved_map({0.0, 3.0 * kPi / 4.0, 0.0, 1}, truncation_for_radius(0.99));
        CHECK(cid_real_check(f, 0.99, 64, 4096).passed);
    }

    TEST_CASE("svg output")
    {
        const ImageGrid g = unit_square_grid();
        CHECK(svg_viewbox(g) == "-0.05 -0.05 1.1 1.1");
        const std::string svg = to_svg(g);
        CHECK(svg.find("viewBox=\"-0.05 -0.05 1.1 1.1\"") != std::string::npos);
        std::size_t paths = 0;
        for (std::size_t pos = svg.find("<path"); pos != std::string::npos; pos = svg.find("<path", pos + 1)) {
            ++paths;
        }
        CHECK(paths == g.polylines.size());
        CHECK(svg.find("stroke-width=\"0.0055") != std::string::npos);
    }

    TEST_CASE("csv output round-trips")
    {
        const HarmonicMap f = convolved_map({0.3, 2.0, 0.0, 1}, 512);
        const ImageGrid g = image_grid(f, 3, 5, 40, 0.9);
        const std::string csv = to_csv(g);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "polyline_id,x,y");
        std::size_t rows = 0;
        std::size_t expected_rows = 0;
        for (const auto& pl : g.polylines) {
            expected_rows += pl.size();
        }
        std::vector<std::size_t> seen(g.polylines.size(), 0);
        while (std::getline(in, line)) {
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const std::size_t id = std::stoul(line.substr(0, c1));
            double x = 0.0, y = 0.0;
            std::from_chars(line.data() + c1 + 1, line.data() + c2, x);
            std::from_chars(line.data() + c2 + 1, line.data() + line.size(), y);
            const Point& p = g.polylines.at(id).at(seen[id]++);
            CHECK(x == p.x);
            CHECK(y == p.y);
            ++rows;
        }
        CHECK(rows == expected_rows);
    }

    TEST_CASE("render writes files and reports the path on failure")
    {
        const ImageGrid g = unit_square_grid();
        const auto path = temp_file("square.svg");
        render(g, RenderFormat::svg, path.string());
        CHECK(std::filesystem::file_size(path) > 0);
        std::filesystem::remove(path);

        const std::string bad = "/nonexistent-dir/x.csv";
        try {
            render(g, RenderFormat::csv, bad);
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find(bad) != std::string::npos);
        }
    }
}
