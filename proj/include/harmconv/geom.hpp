#pragma once

// Image-plane sampling of harmonic maps, a sampled test for convexity in the horizontal
// direction, and SVG/CSV output.

#include "harmconv/harmonic.hpp"

#include <span>
#include <string>
#include <vector>

namespace harmconv {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct ImageGrid {
    std::vector<std::vector<Point>> polylines;
    std::string description;
    std::vector<double> radii;
    std::vector<double> ray_angles;
};

// Images of the circles r_k = k rmax / rings (k = 1..rings) and of `rays` radial segments,
// each sampled at `samples` (+1 closing) points.
ImageGrid image_grid(const HarmonicMap& f, int rings, int rays, int samples, double rmax);

struct CidResult {
    bool passed = false;
    double worst_line = 0.0;  // level with the most crossings
    int crossings = 0;        // crossings at that level
};

// Necessary-condition sampler, not a proof: counts how often the closed curve
// t -> f(r e^{it}) crosses each of `lines` horizontal levels spread over its imaginary range
// (a 1e-3 relative margin is left at both extremes). Passes when no level is crossed more
// than twice.
CidResult cid_real_check(const HarmonicMap& f, double r, int lines, int samples);
CidResult cid_real_check(std::span<const Point> closed_curve, int lines);

enum class RenderFormat { svg, csv };

std::string svg_viewbox(const ImageGrid& grid);
std::string to_svg(const ImageGrid& grid);
std::string to_csv(const ImageGrid& grid);

// Throws IoError naming the path when the file cannot be written.
void render(const ImageGrid& grid, RenderFormat format, const std::string& path);

}  // namespace harmconv
