#pragma once

#include <cstdint>
#include <vector>

#include "a3kit/annotation.hpp"

namespace a3kit {

enum class PrimitiveKind { rotate, slide, scroll };

const char* primitive_kind_name(PrimitiveKind kind);

enum class MotionDirection { forward, backward };

const char* motion_direction_name(MotionDirection direction);

struct Waypoint {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();
};

struct Trajectory {
  PrimitiveKind kind = PrimitiveKind::rotate;
  MotionDirection direction = MotionDirection::forward;
  Vec3 contact = Vec3::Zero();
  std::vector<Waypoint> waypoints;
};

struct TrajectoryParams {
  double arc_deg = 30.0;    // Rotate / Scroll sweep
  double slide_m = 0.1;     // Slide travel
  int waypoint_count = 16;
};

// Prismatic parts slide. Revolute parts rotate about the axis line, except
// parts whose name contains a twist-cap style token ("cap", "bottle cap",
// "scroll button", "knob"), which spin in place.
PrimitiveKind select_primitive(const SemanticLabel& label);

// Picks a contact among the surface points that fall inside the box inflated
// by `box_inflate` on every half extent. Rotate and Slide draw a seeded
// uniform choice; Scroll takes the admissible point closest to the axis line
// (ties resolved by input order). Throws Error(contact) when no point
// qualifies.
Vec3 choose_contact(const OrientedBox3D& box,
                    const std::vector<Vec3>& surface_world, PrimitiveKind kind,
                    const AxisSegment& axis, std::uint64_t seed,
                    double box_inflate = 0.02);

// Waypoint 0 is the contact itself. Slide translates along the axis
// direction; Rotate sweeps a circular arc about the axis line; Scroll keeps
// the position and spins the orientation about the axis. Orientations start
// at identity and rotate rigidly with the motion. Throws Error(degenerate)
// when a Rotate contact lies on the axis line (use Scroll instead) and
// Error(validation) when fewer than two waypoints are requested.
Trajectory plan_trajectory(PrimitiveKind kind, const Vec3& contact,
                           const AxisSegment& axis,
                           const TrajectoryParams& params,
                           MotionDirection direction);

}  // namespace a3kit
