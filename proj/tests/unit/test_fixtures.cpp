#include <doctest.h>

#include <cstdlib>
#include <set>

#include "a3kit/annotation.hpp"
#include "a3kit/dataset.hpp"
#include "a3kit/error.hpp"
#include "a3kit/fixtures.hpp"
#include "a3kit/primitives.hpp"

using namespace a3kit;

namespace {

const std::filesystem::path kFixturesDir = A3KIT_FIXTURES;
constexpr int kSamples = 1 << 20;

std::vector<Vec3> world_surface(const KinematicTree& tree,
                               const LinkTransforms& fk,
                               const std::string& link, int count) {
  const auto local = sample_link_points(tree, link, count, 2024).points_local;
  std::vector<Vec3> world;
  world.reserve(local.size());
  const Transform& frame = fk.at(link);
  for (const Vec3& p : local) world.push_back(frame * p);
  return world;
}

Vec3 mean_of(const std::vector<Vec3>& points) {
  Vec3 sum = Vec3::Zero();
  for (const Vec3& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

double line_distance(const Vec3& point, const Vec3& origin, const Vec3& dir) {
  const Vec3 v = point - origin;
  return (v - dir * dir.dot(v)).norm();
}

}  // namespace

TEST_CASE("the bundled corpus matches its analytic sidecars") {
  for (const std::string& name : fixture_names()) {
    const auto [tree, fixture] = load_fixture(name, kFixturesDir);
    CAPTURE(name);
    CHECK(fixture.name == name);
    CHECK(!fixture.category.empty());
    REQUIRE(!fixture.expected.empty());

    for (std::size_t ci = 0; ci < fixture.expected.size(); ++ci) {
      const ExpectedConfigCase& config_case = fixture.expected[ci];
      CAPTURE(ci);
      const LinkTransforms fk = forward_kinematics(tree, config_case.joints);

      for (const ExpectedLinkTriad& expected : config_case.links) {
        CAPTURE(expected.link);
        const std::vector<Vec3> points =
            world_surface(tree, fk, expected.link, kSamples);
        const Vec3 centroid = mean_of(points);
        CHECK((centroid - expected.centroid).norm() <= 1e-3);

        const double half_axis = std::max(expected.half_extents.z(), 0.05);
        const AxisSegment axis =
            compute_axis(tree, fk, expected.link, centroid, half_axis);
        CHECK(axis.kind == expected.kind);

        const Vec3 dir = (axis.p1 - axis.p0).normalized();
        CHECK(dir.dot(expected.axis_dir.normalized()) >= 1.0 - 1e-9);
        const double axis_tol =
            expected.kind == ArticulationKind::prismatic ? 1e-3 : 1e-6;
        CHECK(line_distance(expected.axis_point, axis.p0, dir) <= axis_tol);

        const OrientedBox3D box = compute_box(points, axis);
        CHECK(box.axes[2].dot(dir) >= 1.0 - 1e-12);
        CHECK(std::abs(box.axes[0].dot(expected.box_x.normalized())) >=
              1.0 - 1e-4);
        CHECK((box.center - expected.centroid).norm() <= 1e-3);
        for (int i = 0; i < 3; ++i) {
          CHECK(std::abs(box.half_extents[i] - expected.half_extents[i]) <=
                1e-3);
        }
      }
    }
  }
}

TEST_CASE("the bottle cap scrolls and grips next to its axis") {
  const auto [tree, fixture] = load_fixture("bottle_cap", kFixturesDir);
  const ExpectedConfigCase& config_case = fixture.expected[0];
  const ExpectedLinkTriad& expected = config_case.links[0];
  const LinkTransforms fk = forward_kinematics(tree, config_case.joints);
  const std::vector<Vec3> points =
      world_surface(tree, fk, expected.link, 1 << 16);

  SemanticLabel label;
  label.joint_kind = ArticulationKind::revolute;
  label.link_name = expected.link;
  REQUIRE(select_primitive(label) == PrimitiveKind::scroll);

  const Vec3 centroid = mean_of(points);
  const AxisSegment axis =
      compute_axis(tree, fk, expected.link, centroid, expected.half_extents.z());
  const OrientedBox3D box = compute_box(points, axis);
  const Vec3 dir = (axis.p1 - axis.p0).normalized();

  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Vec3 contact =
        choose_contact(box, points, PrimitiveKind::scroll, axis, seed);
    CHECK(line_distance(contact, axis.p0, dir) <= 1e-3);
  }
}

TEST_CASE("the hidden drawer stays out of every annotation") {
  const auto [tree, fixture] = load_fixture("cabinet_hidden", kFixturesDir);
  const JointConfig config = middle_joint_values(tree);
  const ObjectBounds bounds = object_bounds(tree, config, 2048, 11);
  const CameraIntrinsics intr;

  AnnotateParams params;
  params.seed = 29;

  std::set<std::string> seen;
  Rng rng(41);
  for (int k = 0; k < 6; ++k) {
    const CameraPose pose =
        sample_camera(bounds.center, bounds.radius, rng, k * 1.1);
    const ViewAnnotation ann = annotate_view(
        tree, config, intr, pose, default_skill_rules(), fixture.category,
        params);
    for (const Triad& triad : ann.triads) seen.insert(triad.link);
  }
  CHECK(seen.count("hidden_drawer") == 0);
  CHECK(seen.count("door") == 1);
}

TEST_CASE("fixture loading reports unknown names and honors the env override") {
  try {
    load_fixture("no_such_fixture", kFixturesDir);
    FAIL_CHECK("expected a lookup error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::lookup);
  }

  const auto all = load_all_fixtures(kFixturesDir);
  REQUIRE(all.size() == fixture_names().size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].second.name == fixture_names()[i]);
    CHECK(std::filesystem::exists(all[i].second.urdf_path));
  }

  ::setenv("A3KIT_FIXTURES_DIR", "/tmp/a3kit_override", 1);
  CHECK(default_fixtures_dir() == std::filesystem::path("/tmp/a3kit_override"));
  ::unsetenv("A3KIT_FIXTURES_DIR");
  CHECK(default_fixtures_dir() != std::filesystem::path("/tmp/a3kit_override"));
}
