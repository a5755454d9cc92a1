#include <doctest.h>

#include <cmath>
#include <vector>

#include "a3kit/error.hpp"
#include "a3kit/math.hpp"
#include "a3kit/min_rect.hpp"

using namespace a3kit;

namespace {

Vec2 rotated(const Vec2& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

// Brute force reference: scan orientations on a fine grid and keep the
// smallest enclosing area.
double sweep_min_area(const std::vector<Vec2>& points, double step_deg) {
  double best = std::numeric_limits<double>::infinity();
  for (double deg = 0.0; deg < 90.0; deg += step_deg) {
    const double a = deg_to_rad(deg);
    const Vec2 dir(std::cos(a), std::sin(a));
    const Vec2 perp(-dir.y(), dir.x());
    double lo_u = 1e300, hi_u = -1e300, lo_v = 1e300, hi_v = -1e300;
    for (const Vec2& p : points) {
      lo_u = std::min(lo_u, p.dot(dir));
      hi_u = std::max(hi_u, p.dot(dir));
      lo_v = std::min(lo_v, p.dot(perp));
      hi_v = std::max(hi_v, p.dot(perp));
    }
    best = std::min(best, (hi_u - lo_u) * (hi_v - lo_v));
  }
  return best;
}

bool rect_contains(const Rect2D& rect, const Vec2& p, double slack) {
  const Vec2 d = p - rect.center;
  return std::abs(d.dot(rect.long_dir())) <= rect.half_extents.x() + slack &&
         std::abs(d.dot(rect.short_dir())) <= rect.half_extents.y() + slack;
}

}  // namespace

TEST_CASE("axis-aligned rectangle is recovered exactly") {
  const std::vector<Vec2> pts = {{0, 0}, {4, 0}, {4, 1}, {0, 1}, {2, 0.5}, {1, 1}};
  const Rect2D rect = min_area_rect(pts);
  CHECK(!rect.degenerate);
  CHECK(rect.center.isApprox(Vec2(2.0, 0.5), 1e-12));
  CHECK(rect.half_extents.x() == doctest::Approx(2.0));
  CHECK(rect.half_extents.y() == doctest::Approx(0.5));
  CHECK(rect.angle == doctest::Approx(0.0));
}

TEST_CASE("rotated rectangles report the long-edge angle folded into [0, pi)") {
  const std::vector<Vec2> corners = {{-3, -1}, {3, -1}, {3, 1}, {-3, 1}};
  for (double theta : {0.3, 1.1, 2.0, 2.9}) {
    std::vector<Vec2> pts;
    for (const Vec2& c : corners) pts.push_back(rotated(c, theta) + Vec2(5, -2));
    const Rect2D rect = min_area_rect(pts);
    const double expected = std::fmod(theta, kPi);
    CHECK(rect.angle == doctest::Approx(expected).epsilon(1e-9));
    CHECK(rect.half_extents.x() == doctest::Approx(3.0));
    CHECK(rect.half_extents.y() == doctest::Approx(1.0));
    CHECK(rect.center.isApprox(Vec2(5, -2), 1e-9));
    CHECK(rect.angle >= 0.0);
    CHECK(rect.angle < kPi);
  }
}

TEST_CASE("area ties break toward the smallest angle") {
  // Axis-aligned square: all four edge orientations tie, 0 wins.
  const Rect2D square =
      min_area_rect({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(square.angle == doctest::Approx(0.0));
  CHECK(square.half_extents.x() == doctest::Approx(0.5));
  CHECK(square.half_extents.y() == doctest::Approx(0.5));

  // Diamond: edges at pi/4 and 3pi/4 tie, pi/4 wins.
  const Rect2D diamond =
      min_area_rect({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(diamond.angle == doctest::Approx(kPi / 4));
  CHECK(diamond.half_extents.x() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("rank-deficient inputs are flagged degenerate") {
  const Rect2D point = min_area_rect({{2, 3}, {2, 3}});
  CHECK(point.degenerate);
  CHECK(point.center.isApprox(Vec2(2, 3)));
  CHECK(point.half_extents.x() == doctest::Approx(0.0));

  const Rect2D segment = min_area_rect({{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}});
  CHECK(segment.degenerate);
  CHECK(segment.center.isApprox(Vec2(1, 1), 1e-12));
  CHECK(segment.half_extents.x() == doctest::Approx(std::sqrt(2.0)));
  CHECK(segment.half_extents.y() == doctest::Approx(0.0));
  CHECK(segment.angle == doctest::Approx(kPi / 4));
}

TEST_CASE("empty input raises a domain error") {
  try {
    min_area_rect({});
    FAIL_CHECK("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("random point sets: containment and near-optimal area") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec2> pts;
    const int n = 20 + static_cast<int>(rng.index(80));
    for (int i = 0; i < n; ++i) {
      pts.emplace_back(rng.uniform(-2, 2), rng.uniform(-1, 3));
    }
    const Rect2D rect = min_area_rect(pts);
    for (const Vec2& p : pts) {
      CHECK(rect_contains(rect, p, 1e-9));
    }
    const double area =
        4.0 * rect.half_extents.x() * rect.half_extents.y();
    const double reference = sweep_min_area(pts, 0.1);
    // The sweep cannot beat the exact rotating scan by more than its grid
    // resolution allows.
    CHECK(area <= reference * (1.0 + 1e-9));
    CHECK(area >= reference * (1.0 - 0.002));
  }
}

TEST_CASE("convex_hull is counterclockwise with collinear points dropped") {
  const std::vector<Vec2> hull = convex_hull(
      {{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}, {0, 1}});
  REQUIRE(hull.size() == 4);
  double twice_area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % hull.size()];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  CHECK(twice_area == doctest::Approx(8.0));  // CCW means positive area

  CHECK(convex_hull({{1, 1}}).size() == 1);
  CHECK(convex_hull({{0, 0}, {1, 0}, {2, 0}}).size() == 2);
  CHECK(convex_hull({{3, 4}, {3, 4}, {3, 4}}).size() == 1);
}
