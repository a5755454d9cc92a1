#pragma once

#include <cmath>
#include <vector>

#include "a3kit/math.hpp"

namespace a3kit {

// Minimum-area enclosing rectangle of a planar point set.
// half_extents is ordered (long, short); angle is the direction of the long
// edge versus +x, folded into [0, pi). Point sets of rank < 2 set `degenerate`
// and report a zero short half-extent.
struct Rect2D {
  Vec2 center = Vec2::Zero();
  Vec2 half_extents = Vec2::Zero();
  double angle = 0.0;
  bool degenerate = false;

  Vec2 long_dir() const { return {std::cos(angle), std::sin(angle)}; }
  Vec2 short_dir() const { return {-std::sin(angle), std::cos(angle)}; }
};

// Counterclockwise convex hull with collinear points removed. Returns 1 or 2
// points for rank-deficient inputs.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Throws a domain error on empty input. Area ties between candidate
// orientations are broken toward the smallest angle.
Rect2D min_area_rect(const std::vector<Vec2>& points);

}  // namespace a3kit
