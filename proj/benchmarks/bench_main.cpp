#include <benchmark/benchmark.h>

#include "a3kit/dataset.hpp"
#include "a3kit/fixtures.hpp"
#include "a3kit/min_rect.hpp"
#include "a3kit/sim.hpp"

namespace {

using namespace a3kit;

std::pair<KinematicTree, FixtureObject> door() {
  static auto fixture = load_fixture("door", A3KIT_FIXTURES);
  return fixture;
}

void BM_ParseUrdfAndFk(benchmark::State& state) {
  auto [tree, obj] = door();
  for (auto _ : state) {
    KinematicTree parsed = parse_urdf_file(obj.urdf_path);
    LinkTransforms fk = forward_kinematics(parsed, middle_joint_values(parsed));
    benchmark::DoNotOptimize(fk);
  }
}
BENCHMARK(BM_ParseUrdfAndFk)->Unit(benchmark::kMicrosecond);

void BM_SampleSurface(benchmark::State& state) {
  auto [tree, obj] = door();
  std::string link = tree.movable_links().front();
  for (auto _ : state) {
    SurfacePoints sp = sample_link_points(tree, link, 2048, 7);
    benchmark::DoNotOptimize(sp);
  }
}
BENCHMARK(BM_SampleSurface)->Unit(benchmark::kMicrosecond);

void BM_MinAreaRect(benchmark::State& state) {
  Rng rng(3);
  std::vector<Vec2> points;
  for (int i = 0; i < 256; ++i) {
    points.emplace_back(rng.uniform(-1, 1), rng.uniform(-0.4, 0.4));
  }
  for (auto _ : state) {
    Rect2D rect = min_area_rect(points);
    benchmark::DoNotOptimize(rect);
  }
}
BENCHMARK(BM_MinAreaRect)->Unit(benchmark::kMicrosecond);

void BM_AnnotateView(benchmark::State& state) {
  auto [tree, obj] = door();
  JointConfig middle = middle_joint_values(tree);
  ViewSampleParams params;
  params.views = 1;
  params.seed = 11;
  std::vector<ViewSpec> views = sample_views(tree, params);
  SkillRuleTable rules = default_skill_rules();
  AnnotateParams ann_params;
  ann_params.seed = views[0].seed;
  for (auto _ : state) {
    ViewAnnotation ann = annotate_view(tree, middle, params.intrinsics,
                                       views[0].pose, rules, obj.category,
                                       ann_params);
    benchmark::DoNotOptimize(ann);
  }
}
BENCHMARK(BM_AnnotateView)->Unit(benchmark::kMicrosecond);

void BM_SimEpisode(benchmark::State& state) {
  auto [tree, obj] = door();
  std::string link = tree.movable_links().front();
  JointConfig middle = middle_joint_values(tree);
  LinkTransforms fk = forward_kinematics(tree, middle);
  SurfacePoints surface = sample_link_points(tree, link, 2048, 7);
  const Transform& world = fk.at(link);
  std::vector<Vec3> surface_world;
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : surface.points_local) {
    surface_world.push_back(world * p);
    centroid += surface_world.back();
  }
  centroid /= static_cast<double>(surface_world.size());
  double half_length = 0.1;
  AxisSegment axis = compute_axis(tree, fk, link, centroid, half_length);
  OrientedBox3D box = compute_box(surface_world, axis);
  Vec3 contact = choose_contact(box, surface_world, PrimitiveKind::rotate, axis, 5);
  TrajectoryParams traj_params;
  std::vector<Trajectory> trajectories = {
      plan_trajectory(PrimitiveKind::rotate, contact, axis, traj_params,
                      MotionDirection::forward),
      plan_trajectory(PrimitiveKind::rotate, contact, axis, traj_params,
                      MotionDirection::backward)};
  EvalConfig cfg;
  for (auto _ : state) {
    EpisodeResult result =
        run_episode(tree, link, trajectories, surface.points_local, cfg);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SimEpisode)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
