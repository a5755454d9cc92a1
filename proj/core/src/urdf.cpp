#include "a3kit/urdf.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "a3kit/error.hpp"
#include "a3kit/xml.hpp"

namespace a3kit {

const char* joint_kind_name(JointKind kind) {
  switch (kind) {
    case JointKind::revolute: return "revolute";
    case JointKind::prismatic: return "prismatic";
    case JointKind::continuous: return "continuous";
    case JointKind::fixed: return "fixed";
  }
  return "unknown";
}

bool JointSpec::is_movable() const {
  switch (kind) {
    case JointKind::continuous:
      return true;
    case JointKind::revolute:
    case JointKind::prismatic:
      return limits && limits->upper > limits->lower;
    case JointKind::fixed:
      return false;
  }
  return false;
}

const LinkSpec* KinematicTree::find_link(const std::string& link_name) const {
  for (const auto& l : links)
    if (l.name == link_name) return &l;
  return nullptr;
}

const JointSpec* KinematicTree::find_joint(const std::string& joint_name) const {
  for (const auto& j : joints)
    if (j.name == joint_name) return &j;
  return nullptr;
}

const JointSpec* KinematicTree::parent_joint_of(
    const std::string& link_name) const {
  for (const auto& j : joints)
    if (j.child_link == link_name) return &j;
  return nullptr;
}

std::vector<std::string> KinematicTree::movable_links() const {
  std::vector<std::string> out;
  for (const auto& j : joints)
    if (j.is_movable()) out.push_back(j.child_link);
  return out;
}

namespace {

Vec3 parse_vec3(const std::string& text, const XmlNode& node,
                const char* what) {
  std::istringstream in(text);
  Vec3 v;
  if (!(in >> v.x() >> v.y() >> v.z())) {
    throw Error(ErrorKind::validation,
                std::string("bad ") + what + " at line " +
                    std::to_string(node.line) + ": '" + text + "'");
  }
  return v;
}

Transform parse_origin(const XmlNode& element) {
  Transform t = Transform::Identity();
  const XmlNode* origin = element.child("origin");
  if (!origin) return t;
  if (const std::string* xyz = origin->attribute("xyz")) {
    t.translation() = parse_vec3(*xyz, *origin, "origin xyz");
  }
  if (const std::string* rpy = origin->attribute("rpy")) {
    const Vec3 v = parse_vec3(*rpy, *origin, "origin rpy");
    t.linear() = rotation_from_rpy(v.x(), v.y(), v.z());
  }
  return t;
}

double parse_double_attr(const XmlNode& node, const std::string& key,
                         double fallback) {
  const std::string* s = node.attribute(key);
  if (!s) return fallback;
  try {
    return std::stod(*s);
  } catch (const std::exception&) {
    throw Error(ErrorKind::validation,
                "bad numeric attribute '" + key + "' at line " +
                    std::to_string(node.line));
  }
}

void parse_link_geometry(const XmlNode& link_xml, LinkSpec& link,
                         std::vector<std::string>& warnings) {
  // Visual geometry when present, collision geometry otherwise.
  std::vector<const XmlNode*> shapes = link_xml.children_named("visual");
  if (shapes.empty()) shapes = link_xml.children_named("collision");
  for (const XmlNode* shape : shapes) {
    const XmlNode* geom = shape->child("geometry");
    if (!geom) continue;
    GeometryRef ref;
    ref.local = parse_origin(*shape);
    if (const XmlNode* mesh = geom->child("mesh")) {
      const std::string* filename = mesh->attribute("filename");
      if (!filename) {
        throw Error(ErrorKind::validation,
                    "mesh without filename at line " +
                        std::to_string(mesh->line));
      }
      ref.mesh_path = *filename;
      if (const std::string* scale = mesh->attribute("scale")) {
        ref.scale = parse_vec3(*scale, *mesh, "mesh scale");
      }
      link.geometry.push_back(std::move(ref));
    } else if (const XmlNode* box = geom->child("box")) {
      const std::string* size = box->attribute("size");
      if (!size) {
        throw Error(ErrorKind::validation,
                    "box without size at line " + std::to_string(box->line));
      }
      ref.inline_mesh = make_box_mesh(parse_vec3(*size, *box, "box size"));
      link.geometry.push_back(std::move(ref));
    } else if (const XmlNode* cyl = geom->child("cylinder")) {
      const double radius = parse_double_attr(*cyl, "radius", 0.0);
      const double length = parse_double_attr(*cyl, "length", 0.0);
      if (radius <= 0.0 || length <= 0.0) {
        throw Error(ErrorKind::validation,
                    "cylinder with non-positive size at line " +
                        std::to_string(cyl->line));
      }
      ref.inline_mesh = make_cylinder_mesh(radius, length);
      link.geometry.push_back(std::move(ref));
    } else if (!geom->children.empty()) {
      warnings.push_back("link '" + link.name + "': unsupported geometry <" +
                         geom->children.front().name + "> skipped");
    }
  }
}

JointKind parse_joint_kind(const std::string& type, const XmlNode& node) {
  if (type == "revolute") return JointKind::revolute;
  if (type == "prismatic") return JointKind::prismatic;
  if (type == "continuous") return JointKind::continuous;
  if (type == "fixed") return JointKind::fixed;
  throw Error(ErrorKind::validation, "unsupported joint type '" + type +
                                         "' at line " +
                                         std::to_string(node.line));
}

void validate_tree_structure(KinematicTree& tree) {
  std::set<std::string> link_names;
  for (const auto& l : tree.links) {
    if (!link_names.insert(l.name).second) {
      throw Error(ErrorKind::validation, "duplicate link name '" + l.name + "'");
    }
  }
  std::map<std::string, int> parent_count;
  for (const auto& j : tree.joints) {
    if (!link_names.count(j.parent_link)) {
      throw Error(ErrorKind::structure, "joint '" + j.name +
                                            "' references undefined parent link '" +
                                            j.parent_link + "'");
    }
    if (!link_names.count(j.child_link)) {
      throw Error(ErrorKind::structure, "joint '" + j.name +
                                            "' references undefined child link '" +
                                            j.child_link + "'");
    }
    if (++parent_count[j.child_link] > 1) {
      throw Error(ErrorKind::structure,
                  "link '" + j.child_link + "' has more than one parent joint");
    }
  }

  std::vector<std::string> roots;
  for (const auto& l : tree.links) {
    if (!parent_count.count(l.name)) roots.push_back(l.name);
  }
  if (roots.empty()) {
    throw Error(ErrorKind::structure, "joint graph has a cycle (no root link)");
  }
  if (roots.size() > 1) {
    throw Error(ErrorKind::structure,
                "joint graph has multiple roots ('" + roots[0] + "', '" +
                    roots[1] + "', ...)");
  }
  tree.root = roots[0];

  // Every link must be reachable from the root; an unreachable ring of
  // links is a cycle even though each member has exactly one parent.
  std::set<std::string> reachable{tree.root};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& j : tree.joints) {
      if (reachable.count(j.parent_link) && !reachable.count(j.child_link)) {
        reachable.insert(j.child_link);
        grew = true;
      }
    }
  }
  if (reachable.size() != tree.links.size()) {
    throw Error(ErrorKind::structure,
                "joint graph has links unreachable from the root (cycle)");
  }
}

}  // namespace

KinematicTree parse_urdf(const std::string& document_text,
                         const std::filesystem::path& base_dir) {
  const XmlNode doc = parse_xml(document_text);
  if (doc.name != "robot") {
    throw Error(ErrorKind::parse,
                "expected <robot> root element, got <" + doc.name + ">");
  }
  KinematicTree tree;
  tree.base_dir = base_dir;
  if (const std::string* name = doc.attribute("name")) tree.name = *name;

  for (const auto& node : doc.children) {
    if (node.name == "link") {
      LinkSpec link;
      const std::string* name = node.attribute("name");
      if (!name) {
        throw Error(ErrorKind::validation,
                    "link without name at line " + std::to_string(node.line));
      }
      link.name = *name;
      parse_link_geometry(node, link, tree.warnings);
      tree.links.push_back(std::move(link));
    } else if (node.name == "joint") {
      JointSpec joint;
      const std::string* name = node.attribute("name");
      const std::string* type = node.attribute("type");
      if (!name || !type) {
        throw Error(ErrorKind::validation,
                    "joint without name/type at line " +
                        std::to_string(node.line));
      }
      joint.name = *name;
      joint.kind = parse_joint_kind(*type, node);
      joint.origin = parse_origin(node);

      const XmlNode* parent = node.child("parent");
      const XmlNode* child = node.child("child");
      if (!parent || !parent->attribute("link") || !child ||
          !child->attribute("link")) {
        throw Error(ErrorKind::validation,
                    "joint '" + joint.name + "' missing parent/child link");
      }
      joint.parent_link = *parent->attribute("link");
      joint.child_link = *child->attribute("link");

      if (const XmlNode* axis = node.child("axis")) {
        const std::string* xyz = axis->attribute("xyz");
        if (xyz) joint.axis_local = parse_vec3(*xyz, *axis, "axis xyz");
      }
      if (joint.kind != JointKind::fixed) {
        const double norm = joint.axis_local.norm();
        if (norm < 1e-12) {
          throw Error(ErrorKind::validation,
                      "joint '" + joint.name + "' has a zero axis");
        }
        joint.axis_local /= norm;
      }

      if (const XmlNode* limit = node.child("limit")) {
        JointLimits limits;
        limits.lower = parse_double_attr(*limit, "lower", 0.0);
        limits.upper = parse_double_attr(*limit, "upper", 0.0);
        if (limits.lower > limits.upper) {
          throw Error(ErrorKind::validation,
                      "joint '" + joint.name + "' has lower > upper limit");
        }
        if (joint.kind == JointKind::continuous) {
          tree.warnings.push_back("joint '" + joint.name +
                                  "': limits on a continuous joint ignored");
        } else {
          joint.limits = limits;
        }
      }
      if ((joint.kind == JointKind::revolute ||
           joint.kind == JointKind::prismatic) &&
          !joint.limits) {
        throw Error(ErrorKind::validation,
                    "joint '" + joint.name + "' (" + *type +
                        ") requires <limit lower= upper=>");
      }
      if (node.child("mimic")) {
        tree.warnings.push_back("joint '" + joint.name + "': <mimic> ignored");
      }
      tree.joints.push_back(std::move(joint));
    } else if (node.name == "transmission" || node.name == "material" ||
               node.name == "gazebo") {
      tree.warnings.push_back("<" + node.name + "> element ignored");
    }
  }

  if (tree.links.empty()) {
    throw Error(ErrorKind::validation, "URDF defines no links");
  }
  validate_tree_structure(tree);
  return tree;
}

KinematicTree parse_urdf_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open URDF file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  KinematicTree tree = parse_urdf(buf.str(), path.parent_path());
  if (tree.name.empty()) tree.name = path.stem().string();
  return tree;
}

namespace {

Transform joint_motion(const JointSpec& joint, double value) {
  Transform t = Transform::Identity();
  switch (joint.kind) {
    case JointKind::revolute:
    case JointKind::continuous:
      t.linear() = rotation_about_axis(joint.axis_local, value);
      break;
    case JointKind::prismatic:
      t.translation() = value * joint.axis_local;
      break;
    case JointKind::fixed:
      break;
  }
  return t;
}

}  // namespace

LinkTransforms forward_kinematics(const KinematicTree& tree,
                                  const JointConfig& config) {
  LinkTransforms out;
  out[tree.root] = Transform::Identity();

  // Joints are a tree; iterate until all children are placed.
  std::size_t placed = 1;
  bool grew = true;
  while (grew && placed < tree.links.size()) {
    grew = false;
    for (const auto& joint : tree.joints) {
      if (out.count(joint.child_link) || !out.count(joint.parent_link)) continue;
      double value = 0.0;
      if (joint.kind != JointKind::fixed) {
        const auto it = config.values.find(joint.name);
        if (it == config.values.end()) {
          throw Error(ErrorKind::config,
                      "missing value for joint '" + joint.name + "'");
        }
        value = it->second;
      }
      out[joint.child_link] =
          out[joint.parent_link] * joint.origin * joint_motion(joint, value);
      ++placed;
      grew = true;
    }
  }
  return out;
}

SurfacePoints sample_link_points(const KinematicTree& tree,
                                 const std::string& link, int count,
                                 std::uint64_t seed) {
  const LinkSpec* spec = tree.find_link(link);
  if (!spec) {
    throw Error(ErrorKind::lookup, "unknown link '" + link + "'");
  }
  // Merge all geometry into one link-frame mesh so that area weighting
  // spans the union of surfaces.
  TriangleMesh merged;
  for (const auto& geo : spec->geometry) {
    TriangleMesh part;
    if (geo.inline_mesh) {
      part = *geo.inline_mesh;
    } else {
      std::filesystem::path p = geo.mesh_path;
      // package:// and relative paths resolve against the URDF directory.
      const std::string prefix = "package://";
      std::string s = geo.mesh_path;
      if (s.rfind(prefix, 0) == 0) s = s.substr(prefix.size());
      p = std::filesystem::path(s);
      if (p.is_relative()) p = tree.base_dir / p;
      part = load_mesh_file(p);
    }
    const int base = static_cast<int>(merged.vertices.size());
    for (const auto& v : part.vertices) {
      merged.vertices.push_back(geo.local * v.cwiseProduct(geo.scale).eval());
    }
    for (const auto& t : part.triangles) {
      merged.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    }
  }
  if (merged.triangles.empty()) {
    throw Error(ErrorKind::geometry, "link '" + link + "' has no geometry");
  }
  SurfacePoints out;
  out.link = link;
  out.seed = seed;
  out.area = merged.surface_area();
  out.points_local = sample_mesh_surface(merged, count, seed);
  return out;
}

JointConfig middle_joint_values(const KinematicTree& tree) {
  JointConfig config;
  for (const auto& joint : tree.joints) {
    switch (joint.kind) {
      case JointKind::revolute:
      case JointKind::prismatic:
        config.values[joint.name] =
            joint.limits ? 0.5 * (joint.limits->lower + joint.limits->upper)
                         : 0.0;
        break;
      case JointKind::continuous:
        config.values[joint.name] = 0.0;
        break;
      case JointKind::fixed:
        break;
    }
  }
  return config;
}

JointLimits effective_limits(const JointSpec& joint) {
  if (joint.limits) return *joint.limits;
  return JointLimits{-kPi, kPi};
}

}  // namespace a3kit
