// Command line front end: annotate, build-dataset, plan, eval, render-debug.
// Usage problems exit with 2, pipeline failures with 1.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "a3kit/dataset.hpp"
#include "a3kit/debug_render.hpp"
#include "a3kit/error.hpp"
#include "a3kit/fixtures.hpp"
#include "a3kit/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace a3kit;

namespace {

struct CommonOptions {
  std::string urdf;
  std::string category = "Object";
  int views = 40;
  std::uint64_t seed = 0;
  int samples = 2048;
  std::string out;
};

std::string object_name(const KinematicTree& tree, const fs::path& urdf_path) {
  if (!tree.name.empty()) return tree.name;
  return urdf_path.stem().string();
}

fs::path resolve_corpus(const std::string& corpus) {
  if (corpus == "fixtures") return default_fixtures_dir();
  return fs::path(corpus);
}

std::string view_file_stem(const std::string& object, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_view_%04d", index);
  return object + buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

int run_annotate(const CommonOptions& opt) {
  KinematicTree tree = parse_urdf_file(opt.urdf);
  std::string name = object_name(tree, opt.urdf);
  fs::create_directories(opt.out);

  ViewSampleParams view_params;
  view_params.views = opt.views;
  view_params.seed = opt.seed;
  view_params.samples_per_link = opt.samples;
  std::vector<ViewSpec> views = sample_views(tree, view_params);

  SkillRuleTable rules = default_skill_rules();
  std::ofstream jsonl(fs::path(opt.out) / (name + "_annotations.jsonl"),
                      std::ios::binary);
  if (!jsonl) throw Error(ErrorKind::io, "cannot open annotation output");
  int with_parts = 0;
  for (const ViewSpec& view : views) {
    AnnotateParams params;
    params.samples_per_link = opt.samples;
    params.seed = view.seed;
    ViewAnnotation ann = annotate_view(tree, view.joints, view_params.intrinsics,
                                       view.pose, rules, opt.category, params);
    with_parts += ann.triads.empty() ? 0 : 1;
    jsonl << view_annotation_jsonl(tree, opt.category, view, ann) << '\n';
    write_text(fs::path(opt.out) / (view_file_stem(name, view.index) + ".json"),
               scene_manifest_json(tree, opt.category, view, ann));
  }
  std::cout << "annotated " << views.size() << " views of " << name << " ("
            << with_parts << " with visible parts) -> " << opt.out << "\n";
  return 0;
}

int run_build_dataset(const CommonOptions& opt,
                      const std::vector<std::string>& urdfs,
                      const std::string& corpus, bool manifests) {
  struct Source {
    KinematicTree tree;
    std::string category;
  };
  std::vector<Source> sources;
  if (!corpus.empty()) {
    for (auto& [tree, fixture] : load_all_fixtures(resolve_corpus(corpus))) {
      sources.push_back({std::move(tree), fixture.category});
    }
  }
  for (const std::string& urdf : urdfs) {
    sources.push_back({parse_urdf_file(urdf), opt.category});
  }
  if (sources.empty()) {
    throw Error(ErrorKind::config, "no input objects (use --urdf or --corpus)");
  }

  fs::create_directories(opt.out);
  std::vector<InstructionSample> all_samples;
  json summary;
  summary["objects"] = json::array();
  std::map<std::string, std::size_t> by_task;
  for (const Source& source : sources) {
    DatasetParams params;
    params.views.views = opt.views;
    params.views.seed = derive_seed(opt.seed, {fnv1a64(source.tree.name)});
    params.views.samples_per_link = opt.samples;
    params.annotate.samples_per_link = opt.samples;
    params.category = source.category;
    DatasetResult result = build_dataset(source.tree, params);
    for (const InstructionSample& sample : result.samples) {
      by_task[task_name(sample.task)] += 1;
    }
    if (manifests) {
      fs::path dir = fs::path(opt.out) / "manifests" / source.tree.name;
      fs::create_directories(dir);
      for (std::size_t i = 0; i < result.views.size(); ++i) {
        write_text(dir / (view_file_stem(source.tree.name,
                                         result.views[i].index) + ".json"),
                   scene_manifest_json(source.tree, source.category,
                                       result.views[i], result.annotations[i]));
      }
    }
    json obj;
    obj["object"] = source.tree.name;
    obj["category"] = source.category;
    obj["views_kept"] = result.views.size();
    obj["views_skipped"] = result.skipped_views;
    obj["samples"] = result.samples.size();
    summary["objects"].push_back(obj);
    all_samples.insert(all_samples.end(),
                       std::make_move_iterator(result.samples.begin()),
                       std::make_move_iterator(result.samples.end()));
  }
  write_jsonl(fs::path(opt.out) / "samples.jsonl", all_samples);
  summary["total_samples"] = all_samples.size();
  summary["by_task"] = by_task;
  summary["grammar"] = kAnswerGrammarVersion;
  write_text(fs::path(opt.out) / "dataset_summary.json", summary.dump(2) + "\n");
  std::cout << "wrote " << all_samples.size() << " samples from "
            << sources.size() << " objects -> " << opt.out << "/samples.jsonl\n";
  return 0;
}

int run_plan(const CommonOptions& opt, const std::string& link,
             const std::string& direction) {
  KinematicTree tree = parse_urdf_file(opt.urdf);
  JointConfig middle = middle_joint_values(tree);
  LinkTransforms fk = forward_kinematics(tree, middle);

  SurfacePoints surface = sample_link_points(
      tree, link, opt.samples, derive_seed(opt.seed, {fnv1a64(link)}));
  const Transform& world = fk.at(link);
  std::vector<Vec3> surface_world;
  surface_world.reserve(surface.points_local.size());
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : surface.points_local) {
    surface_world.push_back(world * p);
    centroid += surface_world.back();
  }
  centroid /= static_cast<double>(surface_world.size());

  const JointSpec* joint = tree.parent_joint_of(link);
  if (joint == nullptr || !joint->is_movable()) {
    throw Error(ErrorKind::not_movable, "link '" + link + "' is not movable");
  }
  Vec3 dir_probe = Vec3::Zero();
  double half_length = 0.0;
  {
    // Half extent of the link along the axis direction, for the segment.
    Transform frame = fk.at(joint->parent_link) * joint->origin;
    dir_probe = (frame.linear() * joint->axis_local).normalized();
    for (const Vec3& p : surface_world) {
      half_length = std::max(half_length, std::abs(dir_probe.dot(p - centroid)));
    }
  }
  AxisSegment axis = compute_axis(tree, fk, link, centroid, half_length);
  OrientedBox3D box = compute_box(surface_world, axis);

  std::string state;
  {
    JointLimits eff = effective_limits(*joint);
    state = joint_state_name(middle.values.at(joint->name), eff.lower, eff.upper);
  }
  SkillRuleTable rules = default_skill_rules();
  SemanticLabel label;
  label.joint_kind = axis.kind;
  label.link_name = link;
  label.actions = select_actions(rules, opt.category, link, axis.kind, state);
  PrimitiveKind primitive = select_primitive(label);

  Vec3 contact = choose_contact(box, surface_world, primitive, axis,
                                derive_seed(opt.seed, {fnv1a64("contact")}));
  TrajectoryParams traj_params;
  std::vector<MotionDirection> directions;
  if (direction == "forward") {
    directions = {MotionDirection::forward};
  } else if (direction == "backward") {
    directions = {MotionDirection::backward};
  } else {
    directions = {MotionDirection::forward, MotionDirection::backward};
  }

  json doc;
  doc["object"] = object_name(tree, opt.urdf);
  doc["link"] = link;
  doc["joint"] = articulation_kind_name(axis.kind);
  doc["primitive"] = primitive_kind_name(primitive);
  doc["actions"] = label.actions;
  doc["contact"] = {contact.x(), contact.y(), contact.z()};
  doc["axis"] = {{"p0", {axis.p0.x(), axis.p0.y(), axis.p0.z()}},
                 {"p1", {axis.p1.x(), axis.p1.y(), axis.p1.z()}}};
  doc["trajectories"] = json::array();
  for (MotionDirection dir : directions) {
    Trajectory traj = plan_trajectory(primitive, contact, axis, traj_params, dir);
    json jt;
    jt["direction"] = motion_direction_name(dir);
    // Waypoints as 4x4 row-major pose matrices.
    jt["waypoints"] = json::array();
    for (const Waypoint& wp : traj.waypoints) {
      Mat3 rot = wp.orientation.toRotationMatrix();
      json pose = json::array();
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) pose.push_back(rot(r, c));
        pose.push_back(wp.position[r]);
      }
      for (double v : {0.0, 0.0, 0.0, 1.0}) pose.push_back(v);
      jt["waypoints"].push_back(pose);
    }
    doc["trajectories"].push_back(jt);
  }
  std::string text = doc.dump(2) + "\n";
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text;
  } else {
    write_text(opt.out, text);
    std::cout << "wrote trajectory plan -> " << opt.out << "\n";
  }
  return 0;
}

int run_eval(const std::string& corpus, const std::string& predictor,
             double noise_std, const std::string& endpoint, std::uint64_t seed,
             int episodes, double sigma, int attempts, int samples,
             const std::string& out, const std::string& csv) {
  std::vector<EvalCase> cases;
  for (auto& [tree, fixture] : load_all_fixtures(resolve_corpus(corpus))) {
    cases.push_back({fixture.name, fixture.category, std::move(tree)});
  }

  PredictionSource source;
  if (predictor == "ground-truth") {
    source = PredictionSource::ground_truth();
  } else if (predictor == "perturbed") {
    source = PredictionSource::perturbed(noise_std, seed);
  } else if (predictor == "remote") {
    if (endpoint.empty()) {
      throw Error(ErrorKind::config, "--endpoint is required with --predictor remote");
    }
    source = PredictionSource::remote(endpoint);
  } else {
    throw Error(ErrorKind::config, "unknown predictor '" + predictor + "'");
  }

  EvalRunConfig cfg;
  cfg.seed = seed;
  cfg.episodes_per_case = episodes;
  cfg.sim.sigma = sigma;
  cfg.sim.attempts = attempts;
  cfg.samples_per_link = samples;
  EvalReport report = evaluate(cases, source, cfg);

  std::printf("%-20s %9s %9s %6s\n", "category", "episodes", "success", "rate");
  for (const CategoryStats& stats : report.categories) {
    std::printf("%-20s %9d %9d %6.2f\n", stats.category.c_str(),
                stats.episodes, stats.successes, stats.rate);
  }
  std::printf("average success rate %.2f\n", report.average);

  if (!out.empty()) {
    json doc;
    doc["average"] = report.average;
    doc["seed"] = seed;
    doc["config"] = {{"predictor", predictor}, {"noise_std", noise_std},
                     {"sigma", sigma},         {"attempts", attempts},
                     {"episodes_per_object", episodes}};
    doc["per_category"] = json::object();
    for (const CategoryStats& stats : report.categories) {
      doc["per_category"][stats.category] = {{"n", stats.episodes},
                                             {"successes", stats.successes},
                                             {"rate", stats.rate}};
    }
    doc["episodes"] = json::array();
    for (const EpisodeRow& row : report.rows) {
      doc["episodes"].push_back({{"object", row.object},
                                 {"category", row.category},
                                 {"episode", row.episode},
                                 {"link", row.link},
                                 {"primitive", row.primitive},
                                 {"displacement", row.displacement},
                                 {"success", row.success},
                                 {"failure", row.failure}});
    }
    write_text(out, doc.dump(2) + "\n");
  }
  if (!csv.empty()) {
    std::string text = "object,category,episode,link,primitive,displacement,success,failure\n";
    for (const EpisodeRow& row : report.rows) {
      text += row.object + "," + row.category + "," + std::to_string(row.episode) +
              "," + row.link + "," + row.primitive + "," +
              std::to_string(row.displacement) + "," +
              (row.success ? "1" : "0") + "," + row.failure + "\n";
    }
    write_text(csv, text);
  }
  return 0;
}

int run_render_debug(const CommonOptions& opt) {
  KinematicTree tree = parse_urdf_file(opt.urdf);
  std::string name = object_name(tree, opt.urdf);
  fs::create_directories(opt.out);

  ViewSampleParams view_params;
  view_params.views = opt.views;
  view_params.seed = opt.seed;
  view_params.samples_per_link = opt.samples;
  std::vector<ViewSpec> views = sample_views(tree, view_params);
  SkillRuleTable rules = default_skill_rules();

  for (const ViewSpec& view : views) {
    AnnotateParams params;
    params.samples_per_link = opt.samples;
    params.seed = view.seed;
    ViewAnnotation ann = annotate_view(tree, view.joints, view_params.intrinsics,
                                       view.pose, rules, opt.category, params);
    LinkTransforms fk = forward_kinematics(tree, view.joints);
    DebugScene scene;
    scene.intrinsics = view_params.intrinsics;
    scene.pose = view.pose;
    scene.triads = ann.triads;
    for (const LinkSpec& link : tree.links) {
      if (link.geometry.empty()) continue;
      SurfacePoints sp = sample_link_points(
          tree, link.name, opt.samples,
          derive_seed(view.seed, {fnv1a64("samples"), fnv1a64(link.name)}));
      const Transform& world = fk.at(link.name);
      std::vector<Vec3>& dst = scene.samples_world[link.name];
      dst.reserve(sp.points_local.size());
      for (const Vec3& p : sp.points_local) dst.push_back(world * p);
    }
    std::string stem = view_file_stem(name, view.index);
    write_debug_svg(fs::path(opt.out) / (stem + ".svg"), scene);
    write_debug_ply(fs::path(opt.out) / (stem + ".ply"), scene.samples_world);
  }
  std::cout << "rendered " << views.size() << " debug views -> " << opt.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"articulated-object annotation, dataset, planning and evaluation"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::vector<std::string> urdfs;
  std::string corpus;
  std::string link;
  std::string direction = "both";
  bool manifests = false;
  std::string predictor = "ground-truth";
  double noise_std = 0.0;
  std::string endpoint;
  int episodes = 10;
  double sigma = 0.01;
  int attempts = 2;
  std::string report_out;
  std::string csv_out;

  CLI::App* annotate = app.add_subcommand("annotate", "per-view triads and scene manifests");
  annotate->add_option("--urdf", opt.urdf, "URDF file")->required();
  annotate->add_option("--category", opt.category, "object category");
  annotate->add_option("--views", opt.views, "number of views");
  annotate->add_option("--seed", opt.seed, "master seed");
  annotate->add_option("--samples", opt.samples, "surface samples per link");
  annotate->add_option("-o,--out", opt.out, "output directory")->required();

  CLI::App* build = app.add_subcommand("build-dataset", "instruction-following JSONL dataset");
  build->add_option("--urdf", urdfs, "URDF file(s)");
  build->add_option("--corpus", corpus, "fixture corpus directory or 'fixtures'");
  build->add_option("--category", opt.category, "category for --urdf objects");
  build->add_option("--views", opt.views, "views per object");
  build->add_option("--seed", opt.seed, "master seed");
  build->add_option("--samples", opt.samples, "surface samples per link");
  build->add_flag("--manifests", manifests, "also write scene manifests");
  build->add_option("-o,--out", opt.out, "output directory")->required();

  CLI::App* plan = app.add_subcommand("plan", "trajectory for one link at the middle configuration");
  plan->add_option("--urdf", opt.urdf, "URDF file")->required();
  plan->add_option("--link", link, "link name")->required();
  plan->add_option("--category", opt.category, "object category");
  plan->add_option("--direction", direction, "forward, backward or both")
      ->check(CLI::IsMember({"forward", "backward", "both"}));
  plan->add_option("--seed", opt.seed, "contact selection seed");
  plan->add_option("--samples", opt.samples, "surface samples per link");
  plan->add_option("-o,--out", opt.out, "output file ('-' for stdout)");

  CLI::App* eval = app.add_subcommand("eval", "closed-loop evaluation over a corpus");
  eval->add_option("--corpus", corpus, "fixture corpus directory or 'fixtures'")
      ->required();
  eval->add_option("--predictor", predictor, "ground-truth, perturbed or remote");
  eval->add_option("--noise-std", noise_std, "perturbed predictor noise std");
  eval->add_option("--endpoint", endpoint, "remote predictor host:port[/path]");
  eval->add_option("--seed", opt.seed, "evaluation seed");
  eval->add_option("--episodes", episodes, "episodes per object");
  eval->add_option("--sigma", sigma, "success threshold on joint displacement");
  eval->add_option("--attempts", attempts, "trajectories per episode");
  eval->add_option("--samples", opt.samples, "surface samples per link");
  eval->add_option("-o,--out", report_out, "write a JSON report");
  eval->add_option("--csv", csv_out, "write per-episode rows as CSV");

  CLI::App* render = app.add_subcommand("render-debug", "SVG overlays and PLY point clouds");
  render->add_option("--urdf", opt.urdf, "URDF file")->required();
  render->add_option("--category", opt.category, "object category");
  render->add_option("--views", opt.views, "number of views");
  render->add_option("--seed", opt.seed, "master seed");
  render->add_option("--samples", opt.samples, "surface samples per link");
  render->add_option("-o,--out", opt.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (annotate->parsed()) return run_annotate(opt);
    if (build->parsed()) return run_build_dataset(opt, urdfs, corpus, manifests);
    if (plan->parsed()) return run_plan(opt, link, direction);
    if (eval->parsed()) {
      return run_eval(corpus, predictor, noise_std, endpoint, opt.seed,
                      episodes, sigma, attempts, opt.samples, report_out,
                      csv_out);
    }
    if (render->parsed()) return run_render_debug(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
