#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "a3kit/skills.hpp"
#include "a3kit/urdf.hpp"

namespace a3kit {

// Analytically derived reference values for one movable link at one joint
// configuration, all in world frame. box_x is defined up to sign;
// half_extents are ordered (long, short, along-axis).
struct ExpectedLinkTriad {
  std::string link;
  ArticulationKind kind = ArticulationKind::revolute;
  Vec3 axis_point = Vec3::Zero();
  Vec3 axis_dir = Vec3::UnitZ();
  Vec3 centroid = Vec3::Zero();
  Vec3 box_x = Vec3::UnitX();
  Vec3 half_extents = Vec3::Zero();
};

struct ExpectedConfigCase {
  JointConfig joints;
  std::vector<ExpectedLinkTriad> links;
};

struct FixtureObject {
  std::string name;
  std::string category;
  std::filesystem::path urdf_path;
  std::vector<ExpectedConfigCase> expected;
};

// Names of the bundled corpus, in canonical order.
const std::vector<std::string>& fixture_names();

// A3KIT_FIXTURES_DIR when set, otherwise the directory baked in at build
// time.
std::filesystem::path default_fixtures_dir();

// Loads <dir>/<name>/<name>.urdf plus its expected.json sidecar. Throws
// Error(lookup) for unknown names and Error(io)/Error(parse) for unreadable
// or malformed fixture data.
std::pair<KinematicTree, FixtureObject> load_fixture(
    const std::string& name,
    const std::filesystem::path& dir = default_fixtures_dir());

// Every fixture under `dir`: the bundled names when present, otherwise any
// subdirectory carrying an expected.json.
std::vector<std::pair<KinematicTree, FixtureObject>> load_all_fixtures(
    const std::filesystem::path& dir = default_fixtures_dir());

}  // namespace a3kit
