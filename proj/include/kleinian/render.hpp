#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kleinian/limit_set.hpp"

namespace kleinian {

/// A real 2-plane slice of an affine chart z_chart = 1.
struct ChartSlice {
  int chart = 2;           // 0-based index of the coordinate set to 1
  int axis[2] = {0, 2};    // real coordinates: 2*index for Re z_index, 2*index + 1 for Im
  double window = 3.0;     // the slice square is [-window, window]^2
  int px = 256;
};

/// Parses "z1".."z3" and "re1,im2"-style axis selectors. Throws BadChart.
ChartSlice parse_chart_slice(const std::string& chart, const std::string& axes, double window, int px);

/// Binary PPM (P6). Each line is drawn where its complex zero set meets the
/// slice (a dot, or a real line in degenerate position); isolated points are
/// drawn at their projection onto the slice.
std::vector<std::uint8_t> render_ppm(std::span<const ProjLine> lines, std::span<const ProjPoint> points,
                                     const ChartSlice& slice);

/// CSV with header re1,im1,re2,im2,re3,im3 of canonical coordinates.
std::string cloud_csv(std::span<const ProjPoint> cloud);

}  // namespace kleinian
