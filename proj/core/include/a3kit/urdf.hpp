#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a3kit/math.hpp"
#include "a3kit/mesh.hpp"

namespace a3kit {

enum class JointKind { revolute, prismatic, continuous, fixed };

const char* joint_kind_name(JointKind kind);

struct JointLimits {
  double lower = 0.0;
  double upper = 0.0;
};

struct JointSpec {
  std::string name;
  JointKind kind = JointKind::fixed;
  Vec3 axis_local = Vec3::UnitX();      // unit vector, joint (= child) frame
  Transform origin = Transform::Identity();  // parent link frame -> joint frame
  std::optional<JointLimits> limits;
  std::string parent_link;
  std::string child_link;

  bool is_movable() const;  // revolute/prismatic/continuous with nonzero travel
};

struct GeometryRef {
  std::string mesh_path;                 // empty for tessellated primitives
  Vec3 scale = Vec3::Ones();
  Transform local = Transform::Identity();  // geometry frame -> link frame
  std::optional<TriangleMesh> inline_mesh;  // box/cylinder tessellation
};

struct LinkSpec {
  std::string name;
  std::vector<GeometryRef> geometry;
};

struct KinematicTree {
  std::string name;
  std::vector<LinkSpec> links;
  std::vector<JointSpec> joints;
  std::string root;
  std::vector<std::string> warnings;  // skipped URDF elements
  std::filesystem::path base_dir;     // mesh paths resolve against this

  const LinkSpec* find_link(const std::string& link_name) const;
  const JointSpec* find_joint(const std::string& joint_name) const;
  const JointSpec* parent_joint_of(const std::string& link_name) const;
  std::vector<std::string> movable_links() const;
};

struct JointConfig {
  std::map<std::string, double> values;  // joint name -> radians or meters
};

struct SurfacePoints {
  std::string link;
  std::vector<Vec3> points_local;
  double area = 0.0;  // summed surface area of the sampled meshes
  std::uint64_t seed = 0;
};

using LinkTransforms = std::map<std::string, Transform>;

// Parses the URDF dialect subset: links with mesh/box/cylinder geometry and
// revolute/prismatic/continuous/fixed joints. Unsupported elements (mimic,
// transmission, sphere primitives, materials) are recorded as warnings.
// Throws Error(parse) with line/column on malformed XML, Error(structure) on
// a non-tree joint graph and Error(validation) on invariant violations.
KinematicTree parse_urdf(const std::string& document_text,
                         const std::filesystem::path& base_dir = {});
KinematicTree parse_urdf_file(const std::filesystem::path& path);

// World transform per link; root is identity. Each child transform is
// parent * joint.origin * motion(kind, axis_local, value). `config` must
// cover every non-fixed joint (Error(config) otherwise). Limits are not
// enforced here; callers own clamping.
LinkTransforms forward_kinematics(const KinematicTree& tree,
                                  const JointConfig& config);

// Area-weighted uniform samples over the union of the link's meshes, in
// link frame. Deterministic per (link geometry, count, seed).
SurfacePoints sample_link_points(const KinematicTree& tree,
                                 const std::string& link, int count,
                                 std::uint64_t seed);

// (lower+upper)/2 for limited joints, 0 for continuous joints.
JointConfig middle_joint_values(const KinematicTree& tree);

// Effective travel range for simulation: joint limits when present,
// (-pi, pi) for continuous joints.
JointLimits effective_limits(const JointSpec& joint);

}  // namespace a3kit
