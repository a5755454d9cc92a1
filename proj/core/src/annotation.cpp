#include "a3kit/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "a3kit/error.hpp"
#include "a3kit/min_rect.hpp"

namespace a3kit {

namespace {

constexpr int kVertexSigns[8][3] = {
    {-1, -1, -1}, {+1, -1, -1}, {+1, +1, -1}, {-1, +1, -1},
    {-1, -1, +1}, {+1, -1, +1}, {+1, +1, +1}, {-1, +1, +1},
};

Transform joint_world_frame(const LinkTransforms& fk, const JointSpec& joint) {
  auto it = fk.find(joint.parent_link);
  if (it == fk.end()) {
    throw Error(ErrorKind::lookup,
                "no transform for link '" + joint.parent_link + "'");
  }
  return it->second * joint.origin;
}

// World axis least aligned with z, for a deterministic projection basis.
Vec3 plane_basis_seed(const Vec3& z) {
  int best = 0;
  double best_abs = std::abs(z.x());
  if (std::abs(z.y()) < best_abs) {
    best = 1;
    best_abs = std::abs(z.y());
  }
  if (std::abs(z.z()) < best_abs) best = 2;
  return Vec3::Unit(best);
}

NormalizedPoint3 normalize_world_point(const CameraIntrinsics& intr,
                                       const CameraPose& pose,
                                       const DepthRange& range,
                                       const Vec3& p_world) {
  const Vec3 pc = pose.to_camera(p_world);
  const double safe_z = std::max(pc.z(), 1e-9);
  const double u_px = intr.fx * pc.x() / safe_z + intr.cx;
  const double v_px = intr.fy * pc.y() / safe_z + intr.cy;
  return normalize_point(intr, range, u_px, v_px, pc.z());
}

}  // namespace

std::array<Vec3, 8> box_vertices(const Vec3& center,
                                 const std::array<Vec3, 3>& axes,
                                 const Vec3& half_extents) {
  std::array<Vec3, 8> out;
  for (int i = 0; i < 8; ++i) {
    out[i] = center;
    for (int k = 0; k < 3; ++k) {
      out[i] += kVertexSigns[i][k] * half_extents[k] * axes[k];
    }
  }
  return out;
}

AxisSegment compute_axis(const KinematicTree& tree, const LinkTransforms& fk,
                         const std::string& link, const Vec3& centroid_world,
                         double half_length) {
  const JointSpec* joint = tree.parent_joint_of(link);
  if (joint == nullptr || joint->kind == JointKind::fixed) {
    throw Error(ErrorKind::not_movable,
                "link '" + link + "' has no movable parent joint");
  }
  if (!(half_length > 0.0)) {
    throw Error(ErrorKind::geometry, "axis half_length must be positive");
  }

  const Transform frame = joint_world_frame(fk, *joint);
  const Vec3 dir = (frame.linear() * joint->axis_local).normalized();
  const Vec3 anchor = joint->kind == JointKind::prismatic
                          ? centroid_world
                          : Vec3(frame.translation());
  const Vec3 center = anchor + dir * dir.dot(centroid_world - anchor);

  AxisSegment seg;
  seg.p0 = center - half_length * dir;
  seg.p1 = center + half_length * dir;
  seg.kind = joint->kind == JointKind::prismatic ? ArticulationKind::prismatic
                                                 : ArticulationKind::revolute;
  return seg;
}

OrientedBox3D compute_box(const std::vector<Vec3>& points_world,
                          const AxisSegment& axis, double extent_floor) {
  if (points_world.empty()) {
    throw Error(ErrorKind::domain, "compute_box: empty point set");
  }

  Vec3 center = Vec3::Zero();
  for (const Vec3& p : points_world) center += p;
  center /= static_cast<double>(points_world.size());

  const Vec3 z = axis.direction();
  const Vec3 seed = plane_basis_seed(z);
  const Vec3 e1 = (seed - z * z.dot(seed)).normalized();
  const Vec3 e2 = z.cross(e1);

  std::vector<Vec2> projected;
  projected.reserve(points_world.size());
  for (const Vec3& p : points_world) {
    const Vec3 d = p - center;
    projected.emplace_back(d.dot(e1), d.dot(e2));
  }
  const Rect2D rect = min_area_rect(projected);

  OrientedBox3D box;
  box.center = center;
  const Vec2 lx = rect.long_dir();
  box.axes[2] = z;
  box.axes[0] = (lx.x() * e1 + lx.y() * e2).normalized();
  box.axes[1] = z.cross(box.axes[0]);

  for (int k = 0; k < 3; ++k) {
    double extent = 0.0;
    for (const Vec3& p : points_world) {
      extent = std::max(extent, std::abs((p - center).dot(box.axes[k])));
    }
    box.half_extents[k] = std::max(extent, extent_floor);
  }
  box.vertices = box_vertices(box.center, box.axes, box.half_extents);
  return box;
}

std::vector<std::pair<std::string, double>> visible_movable_links(
    const KinematicTree& tree,
    const std::map<std::string, VisibilitySurface>& surfaces,
    const CameraIntrinsics& intr, const CameraPose& pose,
    const VisibilityConfig& cfg) {
  const int buf = cfg.buffer_size;
  std::vector<double> zbuf(static_cast<std::size_t>(buf) * buf,
                           std::numeric_limits<double>::infinity());

  const double cell_px =
      std::max(static_cast<double>(intr.width) / buf,
               static_cast<double>(intr.height) / buf);
  const double focal = std::max(intr.fx, intr.fy);

  // Side length of the patch one sample stands in for. A splat must cover
  // its whole patch on screen or a sparsely sampled surface (a large shell
  // around a small part) turns into a sieve.
  auto footprint_of = [](const VisibilitySurface& surface) {
    if (surface.area <= 0.0 || surface.points.empty()) return 0.0;
    return std::sqrt(surface.area / static_cast<double>(surface.points.size()));
  };
  auto splat_radius_at = [&](double footprint, double z) {
    if (footprint <= 0.0) return cfg.splat_radius;
    const int cells =
        static_cast<int>(std::ceil(footprint * focal / (z * cell_px)));
    return std::clamp(cells, cfg.splat_radius, buf / 4);
  };

  auto cell_of = [&](double u_px, double v_px, int& cu, int& cv) {
    cu = static_cast<int>(std::floor(u_px / intr.width * buf));
    cv = static_cast<int>(std::floor(v_px / intr.height * buf));
  };

  for (const auto& [link, surface] : surfaces) {
    const double footprint = footprint_of(surface);
    for (const Vec3& p : surface.points) {
      const Vec3 pc = pose.to_camera(p);
      if (pc.z() <= 1e-9) continue;
      const double u_px = intr.fx * pc.x() / pc.z() + intr.cx;
      const double v_px = intr.fy * pc.y() / pc.z() + intr.cy;
      int cu = 0, cv = 0;
      cell_of(u_px, v_px, cu, cv);
      const int radius = splat_radius_at(footprint, pc.z());
      for (int dv = -radius; dv <= radius; ++dv) {
        for (int du = -radius; du <= radius; ++du) {
          const int iu = cu + du;
          const int iv = cv + dv;
          if (iu < 0 || iu >= buf || iv < 0 || iv >= buf) continue;
          double& slot = zbuf[static_cast<std::size_t>(iv) * buf + iu];
          slot = std::min(slot, pc.z());
        }
      }
    }
  }

  std::vector<std::pair<std::string, double>> out;
  for (const LinkSpec& link : tree.links) {
    const JointSpec* joint = tree.parent_joint_of(link.name);
    if (joint == nullptr || !joint->is_movable()) continue;
    auto it = surfaces.find(link.name);
    if (it == surfaces.end() || it->second.points.empty()) continue;

    const double footprint = footprint_of(it->second);
    std::size_t visible = 0;
    for (const Vec3& p : it->second.points) {
      const Vec3 pc = pose.to_camera(p);
      if (pc.z() <= 1e-9) continue;
      const double u_px = intr.fx * pc.x() / pc.z() + intr.cx;
      const double v_px = intr.fy * pc.y() / pc.z() + intr.cy;
      if (u_px < 0.0 || u_px > intr.width || v_px < 0.0 || v_px > intr.height)
        continue;
      int cu = 0, cv = 0;
      cell_of(u_px, v_px, cu, cv);
      cu = std::clamp(cu, 0, buf - 1);
      cv = std::clamp(cv, 0, buf - 1);
      // The buffer keeps the nearest splat per cell, which on an oblique
      // surface can sit well in front of a sample a couple of cells away.
      // Accept the sample if any cell of its own splat window agrees with
      // its depth; a surface hidden behind another stays rejected because
      // the whole window then holds the occluder's depth.
      const int radius = splat_radius_at(footprint, pc.z());
      bool seen = false;
      for (int dv = -radius; dv <= radius && !seen; ++dv) {
        for (int du = -radius; du <= radius; ++du) {
          const int iu = cu + du;
          const int iv = cv + dv;
          if (iu < 0 || iu >= buf || iv < 0 || iv >= buf) continue;
          const double depth = zbuf[static_cast<std::size_t>(iv) * buf + iu];
          if (std::isfinite(depth) && pc.z() <= depth + cfg.z_tol) {
            seen = true;
            break;
          }
        }
      }
      if (seen) ++visible;
    }
    const double fraction =
        static_cast<double>(visible) /
        static_cast<double>(it->second.points.size());
    if (fraction >= cfg.v_min) out.emplace_back(link.name, fraction);
  }
  return out;
}

ViewAnnotation annotate_view(const KinematicTree& tree,
                             const JointConfig& config,
                             const CameraIntrinsics& intr,
                             const CameraPose& pose,
                             const SkillRuleTable& rules,
                             const std::string& category,
                             const AnnotateParams& params) {
  LinkTransforms fk = forward_kinematics(tree, config);
  for (auto& [name, transform] : fk) transform = params.base_pose * transform;

  std::map<std::string, VisibilitySurface> samples_world;
  for (const LinkSpec& link : tree.links) {
    if (link.geometry.empty()) continue;
    const SurfacePoints local = sample_link_points(
        tree, link.name, params.samples_per_link,
        derive_seed(params.seed, {fnv1a64("samples"), fnv1a64(link.name)}));
    const Transform& world = fk.at(link.name);
    VisibilitySurface surface;
    surface.area = local.area;
    surface.points.reserve(local.points_local.size());
    for (const Vec3& p : local.points_local) surface.points.push_back(world * p);
    samples_world.emplace(link.name, std::move(surface));
  }

  DepthRange range;
  range.z_min = std::numeric_limits<double>::infinity();
  range.z_max = -std::numeric_limits<double>::infinity();
  for (const auto& [link, surface] : samples_world) {
    for (const Vec3& p : surface.points) {
      const double z = pose.to_camera(p).z();
      if (z <= 1e-9) continue;
      range.z_min = std::min(range.z_min, z);
      range.z_max = std::max(range.z_max, z);
    }
  }
  if (!(range.z_min < range.z_max)) {
    if (std::isfinite(range.z_min)) {
      range.z_max = range.z_min + 1e-6;
    } else {
      throw Error(ErrorKind::geometry,
                  "annotate_view: no object points in front of the camera");
    }
  }

  ViewAnnotation view;
  view.depth_range = range;

  const auto visible =
      visible_movable_links(tree, samples_world, intr, pose, params.visibility);
  for (const auto& [link_name, visibility] : visible) {
    const std::vector<Vec3>& pts = samples_world.at(link_name).points;
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());

    const JointSpec* joint = tree.parent_joint_of(link_name);
    const Transform frame = joint_world_frame(fk, *joint);
    const Vec3 dir = (frame.linear() * joint->axis_local).normalized();
    double half_length = 0.0;
    for (const Vec3& p : pts) {
      half_length = std::max(half_length, std::abs((p - centroid).dot(dir)));
    }
    half_length = std::max(half_length, params.extent_floor);

    Triad triad;
    triad.axis_world = compute_axis(tree, fk, link_name, centroid, half_length);
    triad.box_world =
        compute_box(pts, triad.axis_world, params.extent_floor);

    // Canonicalize the in-plane axis signs in the camera frame so the vertex
    // ordering does not depend on the world basis.
    const Vec3 x_cam = pose.rotation * triad.box_world.axes[0];
    int imax = 0;
    for (int i = 1; i < 3; ++i) {
      if (std::abs(x_cam[i]) > std::abs(x_cam[imax])) imax = i;
    }
    if (x_cam[imax] < 0.0) {
      triad.box_world.axes[0] = -triad.box_world.axes[0];
      triad.box_world.axes[1] = -triad.box_world.axes[1];
      triad.box_world.vertices =
          box_vertices(triad.box_world.center, triad.box_world.axes,
                       triad.box_world.half_extents);
    }

    const double q = config.values.count(joint->name)
                         ? config.values.at(joint->name)
                         : 0.0;
    const JointLimits limits = effective_limits(*joint);
    triad.label.joint_kind = triad.axis_world.kind;
    triad.label.link_name = link_name;
    triad.label.actions =
        select_actions(rules, category, link_name, triad.label.joint_kind,
                       joint_state_name(q, limits.lower, limits.upper));
    triad.link = link_name;
    triad.visibility = visibility;

    for (int i = 0; i < 8; ++i) {
      triad.box_norm[i] =
          normalize_world_point(intr, pose, range, triad.box_world.vertices[i]);
    }
    triad.axis_norm[0] =
        normalize_world_point(intr, pose, range, triad.axis_world.p0);
    triad.axis_norm[1] =
        normalize_world_point(intr, pose, range, triad.axis_world.p1);

    view.triads.push_back(std::move(triad));
  }
  return view;
}

}  // namespace a3kit
