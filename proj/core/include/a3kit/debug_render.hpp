#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "a3kit/annotation.hpp"

namespace a3kit {

// Inputs for one debug view: the camera, world-frame sample points per link,
// and the triads to overlay.
struct DebugScene {
  CameraIntrinsics intrinsics;
  CameraPose pose;
  std::map<std::string, std::vector<Vec3>> samples_world;
  std::vector<Triad> triads;
};

// SVG overlay: projected sample points (one color per link, subsampled),
// the oriented box wireframes, and the articulation axis segments.
void write_debug_svg(const std::filesystem::path& path, const DebugScene& scene);

// ASCII PLY point cloud of the world-frame samples, colored per link.
void write_debug_ply(const std::filesystem::path& path,
                     const std::map<std::string, std::vector<Vec3>>& samples_world);

}  // namespace a3kit
