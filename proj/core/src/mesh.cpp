#include "a3kit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "a3kit/error.hpp"

namespace a3kit {

double TriangleMesh::triangle_area(std::size_t i) const {
  const auto& t = triangles[i];
  const Vec3& a = vertices[t[0]];
  const Vec3& b = vertices[t[1]];
  const Vec3& c = vertices[t[2]];
  return 0.5 * (b - a).cross(c - a).norm();
}

double TriangleMesh::surface_area() const {
  double total = 0.0;
  for (std::size_t i = 0; i < triangles.size(); ++i) total += triangle_area(i);
  return total;
}

namespace {

int resolve_obj_index(long idx, std::size_t vertex_count, int line_no) {
  long resolved = idx > 0 ? idx - 1 : static_cast<long>(vertex_count) + idx;
  if (resolved < 0 || resolved >= static_cast<long>(vertex_count)) {
    throw Error(ErrorKind::parse, "OBJ parse error at line " +
                                      std::to_string(line_no) +
                                      ": vertex index out of range");
  }
  return static_cast<int>(resolved);
}

}  // namespace

TriangleMesh load_obj(const std::string& text) {
  TriangleMesh mesh;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) {
        throw Error(ErrorKind::parse, "OBJ parse error at line " +
                                          std::to_string(line_no) +
                                          ": bad vertex record");
      }
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> face;
      std::string token;
      while (ls >> token) {
        // "12", "12/3", "12//7", "12/3/7"
        long idx = std::strtol(token.c_str(), nullptr, 10);
        if (idx == 0) {
          throw Error(ErrorKind::parse, "OBJ parse error at line " +
                                            std::to_string(line_no) +
                                            ": bad face index '" + token + "'");
        }
        face.push_back(resolve_obj_index(idx, mesh.vertices.size(), line_no));
      }
      if (face.size() < 3) {
        throw Error(ErrorKind::parse, "OBJ parse error at line " +
                                          std::to_string(line_no) +
                                          ": face with fewer than 3 vertices");
      }
      for (std::size_t k = 1; k + 1 < face.size(); ++k) {
        mesh.triangles.push_back({face[0], face[k], face[k + 1]});
      }
    }
    // vn/vt/usemtl/o/g/s/mtllib are irrelevant to sampling
  }
  return mesh;
}

namespace {

TriangleMesh load_stl_ascii(const std::string& text) {
  TriangleMesh mesh;
  std::istringstream in(text);
  std::string tok;
  std::vector<Vec3> tri;
  while (in >> tok) {
    if (tok == "vertex") {
      double x, y, z;
      if (!(in >> x >> y >> z)) {
        throw Error(ErrorKind::parse, "STL parse error: bad vertex record");
      }
      tri.emplace_back(x, y, z);
      if (tri.size() == 3) {
        int base = static_cast<int>(mesh.vertices.size());
        for (const auto& v : tri) mesh.vertices.push_back(v);
        mesh.triangles.push_back({base, base + 1, base + 2});
        tri.clear();
      }
    }
  }
  if (!tri.empty()) {
    throw Error(ErrorKind::parse, "STL parse error: facet with fewer than 3 vertices");
  }
  return mesh;
}

TriangleMesh load_stl_binary(const std::string& bytes) {
  if (bytes.size() < 84) {
    throw Error(ErrorKind::parse, "STL parse error: binary header truncated");
  }
  std::uint32_t n = 0;
  std::memcpy(&n, bytes.data() + 80, 4);
  const std::size_t expected = 84 + static_cast<std::size_t>(n) * 50;
  if (bytes.size() < expected) {
    throw Error(ErrorKind::parse, "STL parse error: binary body truncated");
  }
  TriangleMesh mesh;
  mesh.vertices.reserve(3 * n);
  mesh.triangles.reserve(n);
  const char* p = bytes.data() + 84;
  for (std::uint32_t i = 0; i < n; ++i, p += 50) {
    float coords[9];
    std::memcpy(coords, p + 12, 36);  // skip the normal
    int base = static_cast<int>(mesh.vertices.size());
    for (int k = 0; k < 3; ++k) {
      mesh.vertices.emplace_back(coords[3 * k], coords[3 * k + 1],
                                 coords[3 * k + 2]);
    }
    mesh.triangles.push_back({base, base + 1, base + 2});
  }
  return mesh;
}

bool looks_like_ascii_stl(const std::string& bytes) {
  // "solid" prefix is not sufficient: some binary exporters use it too.
  // An ASCII body must mention "facet" somewhere early.
  if (bytes.rfind("solid", 0) != 0) return false;
  return bytes.substr(0, std::min<std::size_t>(bytes.size(), 2048))
             .find("facet") != std::string::npos;
}

}  // namespace

TriangleMesh load_stl(const std::string& bytes) {
  if (looks_like_ascii_stl(bytes)) return load_stl_ascii(bytes);
  return load_stl_binary(bytes);
}

TriangleMesh load_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open mesh file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string content = buf.str();

  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".obj") return load_obj(content);
  if (ext == ".stl") return load_stl(content);
  throw Error(ErrorKind::io, "unsupported mesh format: " + path.string());
}

TriangleMesh make_box_mesh(const Vec3& size) {
  const Vec3 h = 0.5 * size;
  TriangleMesh mesh;
  for (int sz = -1; sz <= 1; sz += 2)
    for (int sy = -1; sy <= 1; sy += 2)
      for (int sx = -1; sx <= 1; sx += 2)
        mesh.vertices.emplace_back(sx * h.x(), sy * h.y(), sz * h.z());
  // Vertex i has bits (x, y, z) = (i&1, i&2, i&4).
  auto quad = [&mesh](int a, int b, int c, int d) {
    mesh.triangles.push_back({a, b, c});
    mesh.triangles.push_back({a, c, d});
  };
  quad(0, 2, 3, 1);  // z = -h
  quad(4, 5, 7, 6);  // z = +h
  quad(0, 1, 5, 4);  // y = -h
  quad(2, 6, 7, 3);  // y = +h
  quad(0, 4, 6, 2);  // x = -h
  quad(1, 3, 7, 5);  // x = +h
  return mesh;
}

TriangleMesh make_cylinder_mesh(double radius, double length, int segments,
                                double jitter) {
  if (segments < 3) segments = 3;
  TriangleMesh mesh;
  const double hz = 0.5 * length;
  std::vector<double> angles(segments);
  Rng rng(0x9e3779b9);  // fixed stream; jitter pattern is part of the shape
  for (int i = 0; i < segments; ++i) {
    double a = 2.0 * kPi * i / segments;
    if (jitter > 0.0) a += jitter * (rng.uniform01() - 0.5) * 2.0 * kPi / segments;
    angles[i] = a;
  }
  for (int i = 0; i < segments; ++i) {
    const double c = std::cos(angles[i]);
    const double s = std::sin(angles[i]);
    mesh.vertices.emplace_back(radius * c, radius * s, -hz);
    mesh.vertices.emplace_back(radius * c, radius * s, hz);
  }
  const int bottom_center = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0, 0, -hz);
  const int top_center = bottom_center + 1;
  mesh.vertices.emplace_back(0, 0, hz);
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    const int b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
    mesh.triangles.push_back({b0, b1, t1});
    mesh.triangles.push_back({b0, t1, t0});
    mesh.triangles.push_back({bottom_center, b1, b0});
    mesh.triangles.push_back({top_center, t0, t1});
  }
  return mesh;
}

std::vector<Vec3> sample_mesh_surface(const TriangleMesh& mesh, int count,
                                      std::uint64_t seed) {
  if (mesh.triangles.empty()) {
    throw Error(ErrorKind::geometry, "cannot sample a mesh with no triangles");
  }
  std::vector<double> cumulative(mesh.triangles.size());
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    total += mesh.triangle_area(i);
    cumulative[i] = total;
  }
  if (total <= 0.0) {
    throw Error(ErrorKind::geometry, "mesh has zero surface area");
  }

  Rng rng(seed);
  std::vector<Vec3> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double target = rng.uniform01() * total;
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), target);
    const std::size_t tri_idx =
        std::min<std::size_t>(it - cumulative.begin(), mesh.triangles.size() - 1);
    const auto& t = mesh.triangles[tri_idx];
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const double r1 = std::sqrt(rng.uniform01());
    const double r2 = rng.uniform01();
    points.push_back((1.0 - r1) * a + r1 * (1.0 - r2) * b + r1 * r2 * c);
  }
  return points;
}

}  // namespace a3kit
