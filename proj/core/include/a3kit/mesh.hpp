#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "a3kit/math.hpp"

namespace a3kit {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  std::size_t triangle_count() const { return triangles.size(); }
  double triangle_area(std::size_t i) const;
  double surface_area() const;
};

// Wavefront OBJ. Only v/f records matter here; polygon faces are
// fan-triangulated, v/vt/vn index triples and negative indices are accepted.
TriangleMesh load_obj(const std::string& text);

// STL, ASCII or binary (sniffed from the content).
TriangleMesh load_stl(const std::string& bytes);

// Dispatch by extension (.obj, .stl). Throws Error(io) on unreadable files
// and Error(parse) on malformed content.
TriangleMesh load_mesh_file(const std::filesystem::path& path);

TriangleMesh make_box_mesh(const Vec3& size);

// Prism approximating a cylinder, axis +z, centered at the origin. A nonzero
// `jitter` perturbs the facet angles deterministically, which keeps the
// silhouette polygon free of exact rotational symmetries.
TriangleMesh make_cylinder_mesh(double radius, double length, int segments = 32,
                                double jitter = 0.0);

// Area-weighted uniform samples over the surface. Deterministic for a fixed
// (mesh, count, seed).
std::vector<Vec3> sample_mesh_surface(const TriangleMesh& mesh, int count,
                                      std::uint64_t seed);

}  // namespace a3kit
