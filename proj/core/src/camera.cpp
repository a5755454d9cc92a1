#include "a3kit/camera.hpp"

#include <algorithm>
#include <cmath>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {
constexpr double kBehindEps = 1e-9;
}

CameraPose look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 view = target - eye;
  if (view.norm() < 1e-12) {
    throw Error(ErrorKind::geometry, "look_at: eye coincides with target");
  }
  const Vec3 forward = view.normalized();
  Vec3 right = forward.cross(up);
  if (right.norm() < 1e-9) {
    throw Error(ErrorKind::geometry,
                "look_at: up vector is parallel to the view direction");
  }
  right.normalize();
  const Vec3 down = forward.cross(right).normalized();

  CameraPose pose;
  pose.rotation.row(0) = right;
  pose.rotation.row(1) = down;
  pose.rotation.row(2) = forward;
  pose.translation = -(pose.rotation * eye);
  return pose;
}

CameraPose transformed_camera(const CameraPose& pose, const Transform& world) {
  CameraPose out;
  out.rotation = pose.rotation * world.linear().transpose();
  out.translation = pose.translation - out.rotation * world.translation();
  return out;
}

ProjectedPoint project_point(const CameraIntrinsics& intr,
                             const CameraPose& pose, const Vec3& p_world) {
  const Vec3 pc = pose.to_camera(p_world);
  ProjectedPoint out;
  out.depth = pc.z();
  if (pc.z() <= kBehindEps) {
    out.behind_camera = true;
    return out;
  }
  out.u = intr.fx * pc.x() / pc.z() + intr.cx;
  out.v = intr.fy * pc.y() / pc.z() + intr.cy;
  return out;
}

std::vector<ProjectedPoint> project_points(const CameraIntrinsics& intr,
                                           const CameraPose& pose,
                                           const std::vector<Vec3>& pts_world) {
  std::vector<ProjectedPoint> out;
  out.reserve(pts_world.size());
  for (const auto& p : pts_world) out.push_back(project_point(intr, pose, p));
  return out;
}

Vec3 unproject(const CameraIntrinsics& intr, const CameraPose& pose,
               double u_px, double v_px, double depth_m) {
  const Vec3 pc((u_px - intr.cx) * depth_m / intr.fx,
                (v_px - intr.cy) * depth_m / intr.fy, depth_m);
  return pose.to_world(pc);
}

NormalizedPoint3 normalize_point(const CameraIntrinsics& intr,
                                 const DepthRange& range, double u_px,
                                 double v_px, double depth_m) {
  if (!(range.z_max > range.z_min)) {
    throw Error(ErrorKind::domain, "normalize_point: degenerate depth range");
  }
  auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
  NormalizedPoint3 out;
  out.u = clamp01(u_px / intr.width);
  out.v = clamp01(v_px / intr.height);
  out.z = clamp01((depth_m - range.z_min) / (range.z_max - range.z_min));
  return out;
}

double denormalize_depth(const DepthRange& range, double z_norm) {
  if (z_norm < 0.0 || z_norm > 1.0) {
    throw Error(ErrorKind::domain, "denormalize_depth: z outside [0,1]");
  }
  return range.z_min + z_norm * (range.z_max - range.z_min);
}

}  // namespace a3kit
