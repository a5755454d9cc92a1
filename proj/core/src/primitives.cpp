#include "a3kit/primitives.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

std::string lower_words(const std::string& name) {
  std::string out;
  out.reserve(name.size() + 2);
  out.push_back(' ');
  for (char c : name) {
    if (c == '_' || c == '-') {
      out.push_back(' ');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  out.push_back(' ');
  return out;
}

bool contains_phrase(const std::string& padded_words, const char* phrase) {
  return padded_words.find(" " + std::string(phrase) + " ") != std::string::npos;
}

// Distance from a point to the infinite line through the axis segment.
double line_distance(const AxisSegment& axis, const Vec3& p) {
  Vec3 dir = axis.direction();
  Vec3 rel = p - axis.p0;
  return (rel - dir * dir.dot(rel)).norm();
}

}  // namespace

const char* primitive_kind_name(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::rotate: return "Rotate";
    case PrimitiveKind::slide: return "Slide";
    case PrimitiveKind::scroll: return "Scroll";
  }
  return "?";
}

const char* motion_direction_name(MotionDirection direction) {
  return direction == MotionDirection::forward ? "forward" : "backward";
}

PrimitiveKind select_primitive(const SemanticLabel& label) {
  if (label.joint_kind == ArticulationKind::prismatic) return PrimitiveKind::slide;
  static const char* kScrollTokens[] = {"cap", "bottle cap", "scroll button", "knob"};
  std::string words = lower_words(label.link_name);
  for (const char* token : kScrollTokens) {
    if (contains_phrase(words, token)) return PrimitiveKind::scroll;
  }
  return PrimitiveKind::rotate;
}

Vec3 choose_contact(const OrientedBox3D& box,
                    const std::vector<Vec3>& surface_world, PrimitiveKind kind,
                    const AxisSegment& axis, std::uint64_t seed,
                    double box_inflate) {
  std::vector<std::size_t> inside;
  inside.reserve(surface_world.size());
  for (std::size_t i = 0; i < surface_world.size(); ++i) {
    Vec3 rel = surface_world[i] - box.center;
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(box.axes[static_cast<std::size_t>(k)].dot(rel)) >
          box.half_extents[k] + box_inflate) {
        ok = false;
        break;
      }
    }
    if (ok) inside.push_back(i);
  }
  if (inside.empty()) {
    throw Error(ErrorKind::contact,
                "no surface point inside the predicted box (inflated by " +
                    std::to_string(box_inflate) + ")");
  }
  if (kind == PrimitiveKind::scroll) {
    std::size_t best = inside.front();
    double best_d = line_distance(axis, surface_world[best]);
    for (std::size_t idx : inside) {
      double d = line_distance(axis, surface_world[idx]);
      if (d < best_d) {
        best_d = d;
        best = idx;
      }
    }
    return surface_world[best];
  }
  Rng rng(seed);
  return surface_world[inside[rng.index(inside.size())]];
}

Trajectory plan_trajectory(PrimitiveKind kind, const Vec3& contact,
                           const AxisSegment& axis,
                           const TrajectoryParams& params,
                           MotionDirection direction) {
  if (params.waypoint_count < 2) {
    throw Error(ErrorKind::validation, "a trajectory needs at least 2 waypoints");
  }
  Vec3 dir = axis.direction();
  // normalized() passes a zero vector through unchanged, so test the length.
  if (!dir.allFinite() || dir.squaredNorm() < 0.5) {
    throw Error(ErrorKind::degenerate, "axis segment has zero length");
  }
  double sign = direction == MotionDirection::forward ? 1.0 : -1.0;
  int n = params.waypoint_count;

  Trajectory traj;
  traj.kind = kind;
  traj.direction = direction;
  traj.contact = contact;
  traj.waypoints.resize(static_cast<std::size_t>(n));

  if (kind == PrimitiveKind::slide) {
    for (int i = 0; i < n; ++i) {
      double t = static_cast<double>(i) / static_cast<double>(n - 1);
      traj.waypoints[static_cast<std::size_t>(i)].position =
          contact + sign * params.slide_m * t * dir;
      traj.waypoints[static_cast<std::size_t>(i)].orientation = Quat::Identity();
    }
    return traj;
  }

  // Rotate / Scroll share the sweep; they differ in whether the position
  // follows the arc or stays put.
  Vec3 foot = axis.p0 + dir * dir.dot(contact - axis.p0);
  Vec3 radial = contact - foot;
  if (kind == PrimitiveKind::rotate && radial.norm() < 1e-9) {
    throw Error(ErrorKind::degenerate,
                "Rotate contact lies on the axis line; use Scroll");
  }
  double arc = deg_to_rad(params.arc_deg);
  for (int i = 0; i < n; ++i) {
    double theta = sign * arc * static_cast<double>(i) / static_cast<double>(n - 1);
    Mat3 rot = rotation_about_axis(dir, theta);
    Waypoint& wp = traj.waypoints[static_cast<std::size_t>(i)];
    wp.position = kind == PrimitiveKind::rotate ? Vec3(foot + rot * radial) : contact;
    wp.orientation = Quat(rot);
  }
  return traj;
}

}  // namespace a3kit
