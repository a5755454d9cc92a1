#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "a3kit/annotation.hpp"
#include "a3kit/grammar.hpp"

namespace a3kit {

struct ObjectBounds {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

// Bounding sphere of the object's sampled surface at `config`: center of the
// axis-aligned bounds, radius to the farthest sample. Throws Error(geometry)
// for objects without geometry.
ObjectBounds object_bounds(const KinematicTree& tree, const JointConfig& config,
                           int samples_per_link, std::uint64_t seed);

// One camera draw: distance uniform in [1.5, 3] object radii, elevation
// uniform in [-15, 60] degrees, azimuth uniform, looking at the object
// center with world +z up. azimuth_offset shifts the drawn azimuth; view
// retry loops use it to sweep around the object instead of redrawing
// blind.
CameraPose sample_camera(const Vec3& center, double radius, Rng& rng,
                         double azimuth_offset = 0.0);

// Lighting is recorded in the scene manifest only; no shading happens here.
struct LightingSpec {
  Vec3 direction = Vec3(0.0, 0.0, -1.0);
  double intensity = 1.0;
  double ambient = 0.2;
};

struct ViewSpec {
  int index = 0;
  CameraPose pose;
  Vec3 eye = Vec3::Zero();
  JointConfig joints;               // uniform draw within effective limits
  LightingSpec lighting;
  std::uint64_t seed = 0;           // per-view derivation seed
  std::string image_ref;            // "<object>/view_0007.png"
  std::string augmented_image_ref;  // "<object>/view_0007_axis.png"
};

struct ViewSampleParams {
  int views = 40;
  std::uint64_t seed = 0;
  int samples_per_link = 2048;
  CameraIntrinsics intrinsics;
};

std::vector<ViewSpec> sample_views(const KinematicTree& tree,
                                   const ViewSampleParams& params);

struct InstructionSample {
  TaskKind task = TaskKind::detection;
  std::string image;
  std::string augmented_image;
  std::string prompt;
  std::string answer;
  std::vector<std::string> links;
};

// Samples for one annotated view: one Detection over all visible parts, one
// REC-Link and one REG-Joint per part (the REG-Joint prompt references the
// part by box or by name, chosen by seed), and one REC-Action per
// (part, action). A view without visible parts yields no samples.
std::vector<InstructionSample> build_samples(const ViewAnnotation& ann,
                                             const ViewSpec& view,
                                             std::uint64_t seed);

// 1 + 2L + sum of action counts for L visible parts; 0 when L == 0.
std::size_t expected_sample_count(const ViewAnnotation& ann);

// One JSON object per line, keys sorted; byte-identical for equal inputs.
std::string to_jsonl_line(const InstructionSample& sample);
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<InstructionSample>& samples);

// Scene manifest for one view: object, camera, joints, lighting, depth
// range, and the full per-part annotations. Pretty-printed JSON.
std::string scene_manifest_json(const KinematicTree& tree,
                                const std::string& category,
                                const ViewSpec& view,
                                const ViewAnnotation& ann);

// The same record as a single compact JSON line, for per-view JSONL files.
std::string view_annotation_jsonl(const KinematicTree& tree,
                                  const std::string& category,
                                  const ViewSpec& view,
                                  const ViewAnnotation& ann);

struct DatasetParams {
  ViewSampleParams views;
  AnnotateParams annotate;
  SkillRuleTable rules = default_skill_rules();
  std::string category;
};

struct DatasetResult {
  std::vector<ViewSpec> views;             // only views that produced parts
  std::vector<ViewAnnotation> annotations; // parallel to views
  std::vector<InstructionSample> samples;
  int skipped_views = 0;
};

// Views, annotations, and instruction samples for one object. Fully
// deterministic in (tree, params).
DatasetResult build_dataset(const KinematicTree& tree,
                            const DatasetParams& params);

}  // namespace a3kit
