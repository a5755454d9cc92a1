#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "a3kit/camera.hpp"
#include "a3kit/math.hpp"
#include "a3kit/skills.hpp"
#include "a3kit/urdf.hpp"

namespace a3kit {

// Articulation axis segment in world frame. For revolute joints it lies on
// the joint's rotation axis; for prismatic joints it points along the motion
// direction and passes through the link centroid. Both segments are centered
// at the projection of the link centroid onto the axis line.
struct AxisSegment {
  Vec3 p0 = Vec3::Zero();
  Vec3 p1 = Vec3::Zero();
  ArticulationKind kind = ArticulationKind::revolute;

  Vec3 direction() const { return (p1 - p0).normalized(); }
};

// World-frame oriented box. axes[0]/axes[1] are the long/short edges of the
// minimal rectangle of the link points projected perpendicular to the
// articulation axis; axes[2] is the axis direction. Vertex sign order over
// (x,y,z): (---),(+--),(++-),(-+-),(--+),(+-+),(+++),(-++).
struct OrientedBox3D {
  Vec3 center = Vec3::Zero();
  std::array<Vec3, 3> axes = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  Vec3 half_extents = Vec3::Zero();
  std::array<Vec3, 8> vertices;
};

// Rebuilds the 8 vertices from center/axes/half_extents in the fixed order.
std::array<Vec3, 8> box_vertices(const Vec3& center,
                                 const std::array<Vec3, 3>& axes,
                                 const Vec3& half_extents);

struct SemanticLabel {
  ArticulationKind joint_kind = ArticulationKind::revolute;
  std::string link_name;
  std::vector<std::string> actions;
};

// One per-view annotation: normalized box vertices and axis endpoints plus
// the semantic label. World-frame counterparts are carried for planning and
// fixture checks.
struct Triad {
  std::array<NormalizedPoint3, 8> box_norm;
  std::array<NormalizedPoint3, 2> axis_norm;
  SemanticLabel label;
  std::string link;
  double visibility = 0.0;
  OrientedBox3D box_world;
  AxisSegment axis_world;
};

struct VisibilityConfig {
  int buffer_size = 240;
  int splat_radius = 2;  // minimum; grows with the sample footprint
  double z_tol = 0.005;
  double v_min = 0.25;
};

// World-frame surface points of one link plus the surface area they cover.
// The area sizes each splat so that sparsely sampled large surfaces still
// occlude without holes; area 0 falls back to the fixed splat radius.
struct VisibilitySurface {
  std::vector<Vec3> points;
  double area = 0.0;
};

struct AnnotateParams {
  int samples_per_link = 2048;
  std::uint64_t seed = 0;
  double extent_floor = 1e-4;
  VisibilityConfig visibility;
  Transform base_pose = Transform::Identity();  // rigid offset of the object
};

struct ViewAnnotation {
  std::vector<Triad> triads;
  DepthRange depth_range;
};

// Axis construction for a movable link. centroid_world is the link's surface
// centroid; the segment spans 2*half_length. Throws Error(not_movable) for
// fixed or root links.
AxisSegment compute_axis(const KinematicTree& tree, const LinkTransforms& fk,
                         const std::string& link, const Vec3& centroid_world,
                         double half_length);

// Box fit around world-frame link points: z along the axis, x/y from the
// minimal projected rectangle, center at the point centroid, half extents
// from the farthest point along each axis (floored at extent_floor).
OrientedBox3D compute_box(const std::vector<Vec3>& points_world,
                          const AxisSegment& axis,
                          double extent_floor = 1e-4);

// Fraction of each movable link's sample points that survive a point-splat
// z-buffer test against the whole object and fall inside the image. Returns
// (link, visibility) for links at or above cfg.v_min, in tree order.
// surfaces maps every link with geometry to its world-frame points.
std::vector<std::pair<std::string, double>> visible_movable_links(
    const KinematicTree& tree,
    const std::map<std::string, VisibilitySurface>& surfaces,
    const CameraIntrinsics& intr, const CameraPose& pose,
    const VisibilityConfig& cfg);

// Full per-view annotation: samples every link, derives the depth range from
// all object points, and emits one Triad per visible movable link. The box
// x/y axes are sign-canonicalized in the camera frame so equal scenes yield
// equal vertex orderings.
ViewAnnotation annotate_view(const KinematicTree& tree,
                             const JointConfig& config,
                             const CameraIntrinsics& intr,
                             const CameraPose& pose,
                             const SkillRuleTable& rules,
                             const std::string& category,
                             const AnnotateParams& params);

}  // namespace a3kit
