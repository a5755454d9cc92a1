#include "a3kit/debug_render.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                          "#ff7f00", "#a65628", "#f781bf", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr std::size_t kMaxPointsPerLink = 1500;

// Box edges over the fixed vertex order: bottom ring, top ring, pillars.
constexpr int kBoxEdges[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                  {4, 5}, {5, 6}, {6, 7}, {7, 4},
                                  {0, 4}, {1, 5}, {2, 6}, {3, 7}};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  }
  return out;
}

void svg_line(std::ofstream& out, double x1, double y1, double x2, double y2,
              const char* color, double width) {
  out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
      << "\" y2=\"" << y2 << "\" stroke=\"" << color << "\" stroke-width=\""
      << width << "\"/>\n";
}

}  // namespace

void write_debug_svg(const std::filesystem::path& path, const DebugScene& scene) {
  std::ofstream out = open_out(path);
  const CameraIntrinsics& intr = scene.intrinsics;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << intr.width
      << "\" height=\"" << intr.height << "\" viewBox=\"0 0 " << intr.width
      << " " << intr.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#101010\"/>\n";

  std::size_t link_index = 0;
  for (const auto& [link, points] : scene.samples_world) {
    const char* color = kPalette[link_index++ % kPaletteSize];
    std::size_t stride = points.size() > kMaxPointsPerLink
                             ? points.size() / kMaxPointsPerLink
                             : 1;
    out << "<g fill=\"" << color << "\" fill-opacity=\"0.6\">\n";
    for (std::size_t i = 0; i < points.size(); i += stride) {
      ProjectedPoint p = project_point(intr, scene.pose, points[i]);
      if (p.behind_camera) continue;
      if (p.u < 0 || p.u > intr.width || p.v < 0 || p.v > intr.height) continue;
      out << "<circle cx=\"" << p.u << "\" cy=\"" << p.v << "\" r=\"1\"/>\n";
    }
    out << "</g>\n";
    out << "<text x=\"8\" y=\"" << 16 * link_index << "\" fill=\"" << color
        << "\" font-size=\"12\">" << link << "</text>\n";
  }

  for (const Triad& triad : scene.triads) {
    std::array<ProjectedPoint, 8> corners;
    bool usable = true;
    for (std::size_t i = 0; i < 8; ++i) {
      corners[i] = project_point(intr, scene.pose, triad.box_world.vertices[i]);
      usable = usable && !corners[i].behind_camera;
    }
    if (usable) {
      for (const auto& edge : kBoxEdges) {
        svg_line(out, corners[static_cast<std::size_t>(edge[0])].u,
                 corners[static_cast<std::size_t>(edge[0])].v,
                 corners[static_cast<std::size_t>(edge[1])].u,
                 corners[static_cast<std::size_t>(edge[1])].v, "#f0f0f0", 1.0);
      }
    }
    ProjectedPoint a0 = project_point(intr, scene.pose, triad.axis_world.p0);
    ProjectedPoint a1 = project_point(intr, scene.pose, triad.axis_world.p1);
    if (!a0.behind_camera && !a1.behind_camera) {
      svg_line(out, a0.u, a0.v, a1.u, a1.v, "#ffd700", 2.5);
    }
  }
  out << "</svg>\n";
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

void write_debug_ply(const std::filesystem::path& path,
                     const std::map<std::string, std::vector<Vec3>>& samples_world) {
  std::ofstream out = open_out(path);
  std::size_t total = 0;
  for (const auto& [link, points] : samples_world) total += points.size();
  out << "ply\nformat ascii 1.0\nelement vertex " << total
      << "\nproperty float x\nproperty float y\nproperty float z\n"
         "property uchar red\nproperty uchar green\nproperty uchar blue\n"
         "end_header\n";
  std::size_t link_index = 0;
  for (const auto& [link, points] : samples_world) {
    const char* hex = kPalette[link_index++ % kPaletteSize];
    unsigned rgb = 0;
    std::sscanf(hex + 1, "%x", &rgb);
    unsigned r = (rgb >> 16) & 0xff, g = (rgb >> 8) & 0xff, b = rgb & 0xff;
    for (const Vec3& p : points) {
      out << static_cast<float>(p.x()) << ' ' << static_cast<float>(p.y())
          << ' ' << static_cast<float>(p.z()) << ' ' << r << ' ' << g << ' '
          << b << '\n';
    }
  }
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

}  // namespace a3kit
