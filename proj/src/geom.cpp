#include "harmconv/geom.hpp"

#include "harmconv/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace harmconv {
namespace {

constexpr double kSignDeadband = 1e-12;

std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string digits17(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Point to_point(Cx w) { return {w.real(), w.imag()}; }

struct Bounds {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

Bounds bounds_of(const ImageGrid& grid)
{
    Bounds b{INFINITY, -INFINITY, INFINITY, -INFINITY};
    for (const auto& line : grid.polylines) {
        for (const Point& p : line) {
            b.xmin = std::min(b.xmin, p.x);
            b.xmax = std::max(b.xmax, p.x);
            b.ymin = std::min(b.ymin, p.y);
            b.ymax = std::max(b.ymax, p.y);
        }
    }
    if (!(b.xmin <= b.xmax)) {
        throw ParameterError("image grid has no points");
    }
    return b;
}

// Crossings of y = level along the closed sampled curve; a tangential touch counts once.
int crossings_at(std::span<const Point> curve, double level)
{
    const std::size_t m = curve.size();
    auto sign_at = [&](std::size_t i) {
        const double d = curve[i % m].y - level;
        return d > kSignDeadband ? 1 : (d < -kSignDeadband ? -1 : 0);
    };
    std::size_t start = 0;
    while (start < m && sign_at(start) == 0) {
        ++start;
    }
    if (start == m) {
        return 0;
    }
    int count = 0;
    int last = sign_at(start);
    bool touched = false;
    for (std::size_t k = 1; k <= m; ++k) {
        const int s = sign_at(start + k);
        if (s == 0) {
            touched = true;
            continue;
        }
        if (s != last) {
            ++count;
        } else if (touched) {
            ++count;
        }
        touched = false;
        last = s;
    }
    return count;
}

}  // namespace

ImageGrid image_grid(const HarmonicMap& f, int rings, int rays, int samples, double rmax)
{
    if (!(rmax > 0.0 && rmax < 1.0)) {
        throw ParameterError("rmax must lie in (0, 1)");
    }
    if (rings < 0 || rays < 0 || samples < 2 || rings + rays == 0) {
        throw ParameterError("image grid needs samples >= 2 and at least one ring or ray");
    }
    ImageGrid grid;
    grid.description = f.describe();
    for (int k = 1; k <= rings; ++k) {
        const double r = rmax * k / rings;
        grid.radii.push_back(r);
        std::vector<Point> line;
        line.reserve(static_cast<std::size_t>(samples) + 1);
        for (int j = 0; j <= samples; ++j) {
            line.push_back(to_point(eval_map(f, std::polar(r, 2.0 * std::numbers::pi * j / samples))));
        }
        grid.polylines.push_back(std::move(line));
    }
    for (int j = 0; j < rays; ++j) {
        const double t = 2.0 * std::numbers::pi * j / rays;
        grid.ray_angles.push_back(t);
        std::vector<Point> line;
        line.reserve(static_cast<std::size_t>(samples) + 1);
        for (int i = 0; i <= samples; ++i) {
            line.push_back(to_point(eval_map(f, std::polar(rmax * i / samples, t))));
        }
        grid.polylines.push_back(std::move(line));
    }
    return grid;
}

CidResult cid_real_check(std::span<const Point> curve, int lines)
{
    if (lines < 1 || curve.size() < 3) {
        throw ParameterError("crossing check needs at least one level and three samples");
    }
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const Point& p : curve) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    if (std::hypot(xmax - xmin, ymax - ymin) < 1e-9) {
        throw ParameterError("degenerate curve");
    }
    const double margin = 1e-3 * (ymax - ymin);
    const double lo = ymin + margin;
    const double hi = ymax - margin;
    CidResult res;
    for (int k = 0; k < lines; ++k) {
        const double level = lines == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (lines - 1);
        const int c = crossings_at(curve, level);
        if (c > res.crossings) {
            res.crossings = c;
            res.worst_line = level;
        }
    }
    res.passed = res.crossings <= 2;
    return res;
}

CidResult cid_real_check(const HarmonicMap& f, double r, int lines, int samples)
{
    if (!(r > 0.0 && r < 1.0)) {
        throw ParameterError("radius must lie in (0, 1)");
    }
    if (samples < 3) {
        throw ParameterError("crossing check needs at least three samples");
    }
    std::vector<Point> curve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        curve[j] = to_point(eval_map(f, std::polar(r, 2.0 * std::numbers::pi * j / samples)));
    }
    return cid_real_check(curve, lines);
}

std::string svg_viewbox(const ImageGrid& grid)
{
    const Bounds b = bounds_of(grid);
    const double w = std::max(b.xmax - b.xmin, 1e-12);
    const double h = std::max(b.ymax - b.ymin, 1e-12);
    return shortest(b.xmin - 0.05 * w) + " " + shortest(b.ymin - 0.05 * h) + " " + shortest(1.1 * w) + " "
           + shortest(1.1 * h);
}

std::string to_svg(const ImageGrid& grid)
{
    const Bounds b = bounds_of(grid);
    const double view = 1.1 * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << svg_viewbox(grid) << "\">\n";
    if (!grid.description.empty()) {
        os << "<title>" << grid.description << "</title>\n";
    }
    for (const auto& line : grid.polylines) {
        os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << shortest(0.005 * view) << "\" d=\"";
        for (std::size_t i = 0; i < line.size(); ++i) {
            os << (i == 0 ? "M" : " L") << shortest(line[i].x) << ' ' << shortest(line[i].y);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string to_csv(const ImageGrid& grid)
{
    std::string out = "polyline_id,x,y\n";
    for (std::size_t id = 0; id < grid.polylines.size(); ++id) {
        for (const Point& p : grid.polylines[id]) {
            out += std::to_string(id);
            out += ',';
            out += digits17(p.x);
            out += ',';
            out += digits17(p.y);
            out += '\n';
        }
    }
    return out;
}

void render(const ImageGrid& grid, RenderFormat format, const std::string& path)
{
    const std::string body = format == RenderFormat::svg ? to_svg(grid) : to_csv(grid);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << body;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace harmconv
