#pragma once

#include <vector>

#include "a3kit/math.hpp"

namespace a3kit {

// Defaults match the simulation render setup: 960x960, 1000 px focal length.
struct CameraIntrinsics {
  int width = 960;
  int height = 960;
  double fx = 1000.0;
  double fy = 1000.0;
  double cx = 480.0;
  double cy = 480.0;
};

// World -> camera. Right-handed, +z into the scene, image +u right, +v down.
struct CameraPose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 to_camera(const Vec3& p_world) const {
    return rotation * p_world + translation;
  }
  Vec3 to_world(const Vec3& p_camera) const {
    return rotation.transpose() * (p_camera - translation);
  }
};

struct DepthRange {
  double z_min = 0.0;
  double z_max = 0.0;
};

// Pixel coordinates divided by image size, depth mapped through the view's
// depth range; every component clamped to [0,1].
struct NormalizedPoint3 {
  double u = 0.0;
  double v = 0.0;
  double z = 0.0;
};

struct ProjectedPoint {
  double u = 0.0;      // pixels
  double v = 0.0;      // pixels
  double depth = 0.0;  // camera-frame z, meters
  bool behind_camera = false;
};

// Orients the camera +z axis from eye toward target. Throws Error(geometry)
// when eye == target or up is parallel to the view direction.
CameraPose look_at(const Vec3& eye, const Vec3& target, const Vec3& up);

// Camera that sees the world rigidly moved by `world` exactly as `pose` sees
// the unmoved world: result.to_camera(world * p) == pose.to_camera(p).
CameraPose transformed_camera(const CameraPose& pose, const Transform& world);

ProjectedPoint project_point(const CameraIntrinsics& intr,
                             const CameraPose& pose, const Vec3& p_world);
std::vector<ProjectedPoint> project_points(const CameraIntrinsics& intr,
                                           const CameraPose& pose,
                                           const std::vector<Vec3>& pts_world);

// Inverse of projection: pixel + metric depth back to a world point.
Vec3 unproject(const CameraIntrinsics& intr, const CameraPose& pose,
               double u_px, double v_px, double depth_m);

NormalizedPoint3 normalize_point(const CameraIntrinsics& intr,
                                 const DepthRange& range, double u_px,
                                 double v_px, double depth_m);

// Exact inverse of normalize_point's z mapping. Throws Error(domain) for
// z_norm outside [0,1].
double denormalize_depth(const DepthRange& range, double z_norm);

}  // namespace a3kit
