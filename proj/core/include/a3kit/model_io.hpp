#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "a3kit/annotation.hpp"
#include "a3kit/grammar.hpp"

namespace a3kit {

// Parsed structured answers. Parsers are tolerant of surrounding prose: they
// scan for coordinate tuples and match keywords case-insensitively. A text
// without any coordinates raises a parse error; coordinates present but no
// block of the required arity raises an arity error.
struct ParsedBox {
  std::array<NormalizedPoint3, 8> vertices;
};

struct ParsedDetection {
  std::vector<std::pair<std::string, ParsedBox>> parts;
};

struct ParsedJoint {
  ArticulationKind kind = ArticulationKind::revolute;
  std::array<NormalizedPoint3, 2> axis;
};

struct ParsedAction {
  std::string action;
  ParsedBox box;
};

ParsedDetection parse_detection_answer(const std::string& text);
ParsedBox parse_box_answer(const std::string& text);
ParsedJoint parse_joint_answer(const std::string& text);
ParsedAction parse_action_answer(const std::string& text);

using ParsedAnswer =
    std::variant<ParsedDetection, ParsedBox, ParsedJoint, ParsedAction>;
ParsedAnswer parse_triad_answer(const std::string& text, TaskKind task);

// Normalized coordinates back to a world point through the view camera and
// depth range.
Vec3 denormalize_point(const CameraIntrinsics& intr, const CameraPose& pose,
                       const DepthRange& range, const NormalizedPoint3& p);

// Oriented box recovered from 8 possibly noisy vertices: edge-averaged frame,
// orthonormalized, extents floored at 1e-6. Throws Error(degenerate) when the
// vertices carry no usable frame.
OrientedBox3D box_from_vertices(const std::array<Vec3, 8>& vertices);

// Where predicted answers come from during evaluation.
struct PredictionSource {
  enum class Kind { ground_truth, perturbed, remote };
  Kind kind = Kind::ground_truth;
  double noise_std = 0.0;  // std of Gaussian noise per normalized coordinate
  std::uint64_t seed = 0;
  std::string endpoint;

  static PredictionSource ground_truth();
  static PredictionSource perturbed(double noise_std, std::uint64_t seed);
  static PredictionSource remote(std::string endpoint);
};

struct PredictContext {
  std::string image_ref;
  std::string prompt;
  TaskKind task = TaskKind::reg_joint;
  const Triad* truth = nullptr;  // required unless kind == remote
  std::string action;            // intended skill, for REC-Action answers
  const std::vector<Triad>* view_triads = nullptr;  // for Detection answers
};

// ground_truth formats the true triad; perturbed adds clamped Gaussian noise
// to every normalized coordinate (one noise draw per (seed, image, link), so
// the REG-Joint and REC-Action answers of an episode agree); remote POSTs
// {image, prompt} and returns the server's {text} verbatim.
std::string predict(const PredictionSource& source, const PredictContext& ctx);

}  // namespace a3kit
