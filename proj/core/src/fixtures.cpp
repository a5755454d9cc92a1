#include "a3kit/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

using nlohmann::json;

Vec3 vec_from(const json& arr, const char* what) {
  if (!arr.is_array() || arr.size() != 3) {
    throw Error(ErrorKind::parse, std::string(what) + " must be a 3-array");
  }
  return Vec3(arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>());
}

FixtureObject parse_expected(const std::filesystem::path& fixture_dir,
                             const json& doc) {
  FixtureObject obj;
  obj.name = doc.at("name").get<std::string>();
  obj.category = doc.at("category").get<std::string>();
  obj.urdf_path = fixture_dir / doc.at("urdf").get<std::string>();
  for (const json& config : doc.at("configs")) {
    ExpectedConfigCase cc;
    for (const auto& [joint, value] : config.at("joints").items()) {
      cc.joints.values[joint] = value.get<double>();
    }
    for (const json& link : config.at("links")) {
      ExpectedLinkTriad t;
      t.link = link.at("link").get<std::string>();
      std::string kind = link.at("kind").get<std::string>();
      if (kind == "prismatic") {
        t.kind = ArticulationKind::prismatic;
      } else if (kind == "revolute") {
        t.kind = ArticulationKind::revolute;
      } else {
        throw Error(ErrorKind::parse, "unknown joint kind '" + kind + "'");
      }
      t.axis_point = vec_from(link.at("axis_point"), "axis_point");
      t.axis_dir = vec_from(link.at("axis_dir"), "axis_dir").normalized();
      t.centroid = vec_from(link.at("centroid"), "centroid");
      t.box_x = vec_from(link.at("box_x"), "box_x").normalized();
      t.half_extents = vec_from(link.at("half_extents"), "half_extents");
      cc.links.push_back(std::move(t));
    }
    obj.expected.push_back(std::move(cc));
  }
  return obj;
}

std::pair<KinematicTree, FixtureObject> load_fixture_dir(
    const std::filesystem::path& fixture_dir) {
  std::filesystem::path sidecar = fixture_dir / "expected.json";
  std::ifstream in(sidecar, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot read " + sidecar.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, sidecar.string() + ": " + e.what());
  }
  try {
    FixtureObject obj = parse_expected(fixture_dir, doc);
    KinematicTree tree = parse_urdf_file(obj.urdf_path);
    return {std::move(tree), std::move(obj)};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, sidecar.string() + ": " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> kNames = {
      "door",        "drawer_cabinet", "laptop",   "bottle_cap",
      "faucet",      "scissors",       "microwave", "cabinet_hidden",
      "storage_box",
  };
  return kNames;
}

std::filesystem::path default_fixtures_dir() {
  if (const char* env = std::getenv("A3KIT_FIXTURES_DIR")) {
    if (*env != '\0') return std::filesystem::path(env);
  }
#ifdef A3KIT_DEFAULT_FIXTURES_DIR
  return std::filesystem::path(A3KIT_DEFAULT_FIXTURES_DIR);
#else
  return std::filesystem::path("fixtures");
#endif
}

std::pair<KinematicTree, FixtureObject> load_fixture(
    const std::string& name, const std::filesystem::path& dir) {
  const std::vector<std::string>& names = fixture_names();
  std::filesystem::path fixture_dir = dir / name;
  bool known = std::find(names.begin(), names.end(), name) != names.end();
  if (!known && !std::filesystem::exists(fixture_dir / "expected.json")) {
    throw Error(ErrorKind::lookup, "unknown fixture '" + name + "'");
  }
  return load_fixture_dir(fixture_dir);
}

std::vector<std::pair<KinematicTree, FixtureObject>> load_all_fixtures(
    const std::filesystem::path& dir) {
  std::vector<std::pair<KinematicTree, FixtureObject>> out;
  std::vector<std::string> names;
  for (const std::string& name : fixture_names()) {
    if (std::filesystem::exists(dir / name / "expected.json")) {
      names.push_back(name);
    }
  }
  if (names.empty() && std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_directory() &&
          std::filesystem::exists(entry.path() / "expected.json")) {
        names.push_back(entry.path().filename().string());
      }
    }
    std::sort(names.begin(), names.end());
  }
  if (names.empty()) {
    throw Error(ErrorKind::lookup,
                "no fixtures found under " + dir.string());
  }
  out.reserve(names.size());
  for (const std::string& name : names) {
    out.push_back(load_fixture_dir(dir / name));
  }
  return out;
}

}  // namespace a3kit
