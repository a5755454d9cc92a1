#include "a3kit/min_rect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double fold_angle(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

}  // namespace

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2& a, const Vec2& b) {
                             return a.x() == b.x() && a.y() == b.y();
                           }),
               points.end());
  const std::size_t n = points.size();
  if (n < 3) return points;

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0.0)
      --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

Rect2D min_area_rect(const std::vector<Vec2>& points) {
  if (points.empty()) {
    throw Error(ErrorKind::domain, "min_area_rect: empty point set");
  }
  const std::vector<Vec2> hull = convex_hull(points);

  Rect2D rect;
  if (hull.size() == 1) {
    rect.center = hull[0];
    rect.degenerate = true;
    return rect;
  }
  if (hull.size() == 2) {
    const Vec2 d = hull[1] - hull[0];
    rect.center = 0.5 * (hull[0] + hull[1]);
    rect.half_extents = Vec2(0.5 * d.norm(), 0.0);
    rect.angle = fold_angle(std::atan2(d.y(), d.x()));
    rect.degenerate = true;
    return rect;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  double best_area = kInf;
  double best_angle = kInf;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 edge = hull[(i + 1) % hull.size()] - hull[i];
    const double edge_len = edge.norm();
    if (edge_len < 1e-15) continue;
    const Vec2 dir = edge / edge_len;
    const Vec2 perp(-dir.y(), dir.x());

    double lo_u = kInf, hi_u = -kInf, lo_v = kInf, hi_v = -kInf;
    for (const Vec2& p : hull) {
      const double u = p.dot(dir);
      const double v = p.dot(perp);
      lo_u = std::min(lo_u, u);
      hi_u = std::max(hi_u, u);
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
    const double du = hi_u - lo_u;
    const double dv = hi_v - lo_v;
    const double area = du * dv;

    const Vec2 long_dir = du >= dv ? dir : perp;
    const double angle = fold_angle(std::atan2(long_dir.y(), long_dir.x()));

    const bool smaller = area < best_area * (1.0 - 1e-9);
    const bool tied =
        area <= best_area * (1.0 + 1e-9) && angle < best_angle - 1e-12;
    if (smaller || tied) {
      best_area = area;
      best_angle = angle;
      rect.center = 0.5 * (lo_u + hi_u) * dir + 0.5 * (lo_v + hi_v) * perp;
      rect.half_extents = Vec2(0.5 * std::max(du, dv), 0.5 * std::min(du, dv));
      rect.angle = angle;
    }
  }
  return rect;
}

}  // namespace a3kit
