#include "a3kit/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

using nlohmann::json;

std::string view_tag(const std::string& object, int index, const char* suffix) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "/view_%04d%s.png", index, suffix);
  return object + buf;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json mat_json(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
  }
  return rows;
}

json norm_points_json(const NormalizedPoint3* points, std::size_t count) {
  json out = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(json::array({points[i].u, points[i].v, points[i].z}));
  }
  return out;
}

}  // namespace

ObjectBounds object_bounds(const KinematicTree& tree, const JointConfig& config,
                           int samples_per_link, std::uint64_t seed) {
  LinkTransforms fk = forward_kinematics(tree, config);
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  std::vector<Vec3> points;
  for (const LinkSpec& link : tree.links) {
    if (link.geometry.empty()) continue;
    SurfacePoints sp = sample_link_points(
        tree, link.name, samples_per_link,
        derive_seed(seed, {fnv1a64("bounds"), fnv1a64(link.name)}));
    const Transform& world = fk.at(link.name);
    for (const Vec3& p : sp.points_local) {
      Vec3 w = world * p;
      lo = lo.cwiseMin(w);
      hi = hi.cwiseMax(w);
      points.push_back(w);
    }
  }
  if (points.empty()) {
    throw Error(ErrorKind::geometry, "object has no surface geometry");
  }
  ObjectBounds bounds;
  bounds.center = 0.5 * (lo + hi);
  bounds.radius = 0.0;
  for (const Vec3& p : points) {
    bounds.radius = std::max(bounds.radius, (p - bounds.center).norm());
  }
  bounds.radius = std::max(bounds.radius, 1e-3);
  return bounds;
}

CameraPose sample_camera(const Vec3& center, double radius, Rng& rng,
                         double azimuth_offset) {
  double r = rng.uniform(1.5, 3.0) * std::max(radius, 1e-3);
  double elevation = deg_to_rad(rng.uniform(-15.0, 60.0));
  double azimuth = rng.uniform(0.0, 2.0 * kPi) + azimuth_offset;
  Vec3 eye = center + r * Vec3(std::cos(elevation) * std::cos(azimuth),
                               std::cos(elevation) * std::sin(azimuth),
                               std::sin(elevation));
  return look_at(eye, center, Vec3::UnitZ());
}

std::vector<ViewSpec> sample_views(const KinematicTree& tree,
                                   const ViewSampleParams& params) {
  if (params.views < 0) {
    throw Error(ErrorKind::domain, "view count must be non-negative");
  }
  JointConfig middle = middle_joint_values(tree);
  ObjectBounds bounds =
      object_bounds(tree, middle, params.samples_per_link,
                    derive_seed(params.seed, {fnv1a64(tree.name)}));

  std::vector<ViewSpec> views;
  views.reserve(static_cast<std::size_t>(params.views));
  for (int i = 0; i < params.views; ++i) {
    ViewSpec view;
    view.index = i;
    view.seed = derive_seed(params.seed,
                            {fnv1a64(tree.name), fnv1a64("view"),
                             static_cast<std::uint64_t>(i)});
    Rng cam_rng(derive_seed(view.seed, {fnv1a64("camera")}));
    view.pose = sample_camera(bounds.center, bounds.radius, cam_rng);
    view.eye = view.pose.to_world(Vec3::Zero());

    Rng joint_rng(derive_seed(view.seed, {fnv1a64("joints")}));
    for (const JointSpec& joint : tree.joints) {
      if (joint.kind == JointKind::fixed) continue;
      JointLimits eff = effective_limits(joint);
      view.joints.values[joint.name] = joint_rng.uniform(eff.lower, eff.upper);
    }

    Rng light_rng(derive_seed(view.seed, {fnv1a64("lighting")}));
    double l_az = light_rng.uniform(0.0, 2.0 * kPi);
    double l_el = light_rng.uniform(deg_to_rad(20.0), deg_to_rad(80.0));
    view.lighting.direction = -Vec3(std::cos(l_el) * std::cos(l_az),
                                    std::cos(l_el) * std::sin(l_az),
                                    std::sin(l_el));
    view.lighting.intensity = light_rng.uniform(0.6, 1.4);
    view.lighting.ambient = light_rng.uniform(0.1, 0.3);

    view.image_ref = view_tag(tree.name, i, "");
    view.augmented_image_ref = view_tag(tree.name, i, "_axis");
    views.push_back(std::move(view));
  }
  return views;
}

std::vector<InstructionSample> build_samples(const ViewAnnotation& ann,
                                             const ViewSpec& view,
                                             std::uint64_t seed) {
  std::vector<InstructionSample> samples;
  if (ann.triads.empty()) return samples;
  samples.reserve(expected_sample_count(ann));

  InstructionSample detection;
  detection.task = TaskKind::detection;
  detection.image = view.image_ref;
  detection.augmented_image = view.augmented_image_ref;
  detection.prompt = detection_prompt();
  detection.answer = detection_answer(ann.triads);
  for (const Triad& triad : ann.triads) detection.links.push_back(triad.link);
  samples.push_back(std::move(detection));

  for (const Triad& triad : ann.triads) {
    InstructionSample rec_link;
    rec_link.task = TaskKind::rec_link;
    rec_link.image = view.image_ref;
    rec_link.augmented_image = view.augmented_image_ref;
    rec_link.prompt = rec_link_prompt(triad.link);
    rec_link.answer = rec_link_answer(triad);
    rec_link.links = {triad.link};
    samples.push_back(std::move(rec_link));

    Rng prompt_rng(
        derive_seed(seed, {fnv1a64("reg_prompt"), fnv1a64(triad.link)}));
    InstructionSample reg_joint;
    reg_joint.task = TaskKind::reg_joint;
    reg_joint.image = view.image_ref;
    reg_joint.augmented_image = view.augmented_image_ref;
    reg_joint.prompt = prompt_rng.uniform01() < 0.5
                           ? reg_joint_prompt_with_box(triad)
                           : reg_joint_prompt_with_name(triad.link);
    reg_joint.answer = reg_joint_answer(triad);
    reg_joint.links = {triad.link};
    samples.push_back(std::move(reg_joint));

    for (const std::string& action : triad.label.actions) {
      InstructionSample rec_action;
      rec_action.task = TaskKind::rec_action;
      rec_action.image = view.image_ref;
      rec_action.augmented_image = view.augmented_image_ref;
      rec_action.prompt =
          rec_action_prompt(action_instruction(action, triad.link));
      rec_action.answer = rec_action_answer(triad, action);
      rec_action.links = {triad.link};
      samples.push_back(std::move(rec_action));
    }
  }
  return samples;
}

std::size_t expected_sample_count(const ViewAnnotation& ann) {
  if (ann.triads.empty()) return 0;
  std::size_t count = 1 + 2 * ann.triads.size();
  for (const Triad& triad : ann.triads) count += triad.label.actions.size();
  return count;
}

std::string to_jsonl_line(const InstructionSample& sample) {
  json record;
  record["task"] = task_name(sample.task);
  record["image"] = sample.image;
  record["augmented_image"] = sample.augmented_image;
  record["prompt"] = sample.prompt;
  record["answer"] = sample.answer;
  record["links"] = sample.links;
  return record.dump();
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<InstructionSample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  }
  for (const InstructionSample& sample : samples) {
    out << to_jsonl_line(sample) << '\n';
  }
  if (!out) {
    throw Error(ErrorKind::io, "failed writing " + path.string());
  }
}

namespace {

json manifest_object(const KinematicTree& tree, const std::string& category,
                     const ViewSpec& view, const ViewAnnotation& ann) {
  CameraIntrinsics intr;  // manifests record the fixed pinhole model
  json manifest;
  manifest["object"] = tree.name;
  manifest["category"] = category;
  manifest["view"] = view.index;
  manifest["image"] = view.image_ref;
  manifest["augmented_image"] = view.augmented_image_ref;
  manifest["grammar"] = kAnswerGrammarVersion;
  manifest["camera"] = {
      {"width", intr.width},       {"height", intr.height},
      {"fx", intr.fx},             {"fy", intr.fy},
      {"cx", intr.cx},             {"cy", intr.cy},
      {"rotation", mat_json(view.pose.rotation)},
      {"translation", vec_json(view.pose.translation)},
      {"eye", vec_json(view.eye)},
  };
  json joints = json::object();
  for (const auto& [name, value] : view.joints.values) joints[name] = value;
  manifest["joints"] = joints;
  manifest["lighting"] = {
      {"direction", vec_json(view.lighting.direction)},
      {"intensity", view.lighting.intensity},
      {"ambient", view.lighting.ambient},
  };
  manifest["depth_range"] = {{"min", ann.depth_range.z_min},
                             {"max", ann.depth_range.z_max}};
  json parts = json::array();
  for (const Triad& triad : ann.triads) {
    json part;
    part["link"] = triad.link;
    part["joint"] = articulation_kind_name(triad.label.joint_kind);
    part["actions"] = triad.label.actions;
    part["visibility"] = triad.visibility;
    part["bbox_norm"] = norm_points_json(triad.box_norm.data(), 8);
    part["axis_norm"] = norm_points_json(triad.axis_norm.data(), 2);
    json axes = json::array();
    for (const Vec3& a : triad.box_world.axes) axes.push_back(vec_json(a));
    part["bbox_world"] = {
        {"center", vec_json(triad.box_world.center)},
        {"axes", axes},
        {"half_extents", vec_json(triad.box_world.half_extents)},
    };
    part["axis_world"] = {{"p0", vec_json(triad.axis_world.p0)},
                          {"p1", vec_json(triad.axis_world.p1)}};
    parts.push_back(std::move(part));
  }
  manifest["parts"] = parts;
  return manifest;
}

}  // namespace

std::string scene_manifest_json(const KinematicTree& tree,
                                const std::string& category,
                                const ViewSpec& view,
                                const ViewAnnotation& ann) {
  return manifest_object(tree, category, view, ann).dump(2) + "\n";
}

std::string view_annotation_jsonl(const KinematicTree& tree,
                                  const std::string& category,
                                  const ViewSpec& view,
                                  const ViewAnnotation& ann) {
  return manifest_object(tree, category, view, ann).dump();
}

DatasetResult build_dataset(const KinematicTree& tree,
                            const DatasetParams& params) {
  DatasetResult result;
  std::vector<ViewSpec> views = sample_views(tree, params.views);
  for (const ViewSpec& view : views) {
    AnnotateParams ann_params = params.annotate;
    ann_params.seed = view.seed;
    ann_params.samples_per_link = params.views.samples_per_link;
    ViewAnnotation ann =
        annotate_view(tree, view.joints, params.views.intrinsics, view.pose,
                      params.rules, params.category, ann_params);
    if (ann.triads.empty()) {
      ++result.skipped_views;
      continue;
    }
    std::vector<InstructionSample> samples = build_samples(
        ann, view, derive_seed(view.seed, {fnv1a64("samples_text")}));
    result.samples.insert(result.samples.end(),
                          std::make_move_iterator(samples.begin()),
                          std::make_move_iterator(samples.end()));
    result.views.push_back(view);
    result.annotations.push_back(std::move(ann));
  }
  return result;
}

}  // namespace a3kit
