#include "a3kit/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

struct ScannedTuple {
  double values[3];
  std::size_t begin;  // index of '('
  std::size_t end;    // index one past ')'
};

bool scan_number(const std::string& s, std::size_t& i, double& out) {
  std::size_t j = i;
  while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
  if (j >= s.size()) return false;
  const char* begin = s.c_str() + j;
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) return false;
  out = value;
  i = j + static_cast<std::size_t>(end - begin);
  return true;
}

std::vector<ScannedTuple> scan_tuples(const std::string& s) {
  std::vector<ScannedTuple> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '(') continue;
    ScannedTuple tuple{};
    tuple.begin = i;
    std::size_t j = i + 1;
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      ok = scan_number(s, j, tuple.values[k]);
      while (ok && j < s.size() &&
             std::isspace(static_cast<unsigned char>(s[j])))
        ++j;
      if (ok && k < 2) {
        ok = j < s.size() && s[j] == ',';
        if (ok) ++j;
      }
    }
    if (ok && j < s.size() && s[j] == ')') {
      tuple.end = j + 1;
      out.push_back(tuple);
      i = j;
    }
  }
  return out;
}

// Tuples separated only by whitespace and commas form one coordinate block.
std::vector<std::vector<ScannedTuple>> group_blocks(
    const std::string& s, const std::vector<ScannedTuple>& tuples) {
  std::vector<std::vector<ScannedTuple>> blocks;
  for (const ScannedTuple& tuple : tuples) {
    bool adjacent = false;
    if (!blocks.empty()) {
      adjacent = true;
      for (std::size_t i = blocks.back().back().end; i < tuple.begin; ++i) {
        const char c = s[i];
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) continue;
        adjacent = false;
        break;
      }
    }
    if (adjacent) {
      blocks.back().push_back(tuple);
    } else {
      blocks.push_back({tuple});
    }
  }
  return blocks;
}

NormalizedPoint3 to_point(const ScannedTuple& t) {
  return {t.values[0], t.values[1], t.values[2]};
}

template <std::size_t N>
std::array<NormalizedPoint3, N> block_points(
    const std::vector<ScannedTuple>& block) {
  std::array<NormalizedPoint3, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = to_point(block[i]);
  return out;
}

const std::vector<ScannedTuple>* first_block_of(
    const std::vector<std::vector<ScannedTuple>>& blocks, std::size_t arity) {
  for (const auto& block : blocks) {
    if (block.size() == arity) return &block;
  }
  return nullptr;
}

[[noreturn]] void throw_block_error(
    const std::vector<std::vector<ScannedTuple>>& blocks, std::size_t arity) {
  if (blocks.empty()) {
    throw Error(ErrorKind::parse, "answer contains no coordinate tuples");
  }
  throw Error(ErrorKind::arity,
              "answer contains no coordinate block of " +
                  std::to_string(arity) + " tuples");
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Last identifier token strictly before `pos`, used for detection part names.
std::string name_before(const std::string& s, std::size_t pos) {
  std::size_t end = pos;
  while (end > 0 && !is_word_char(s[end - 1])) --end;
  std::size_t begin = end;
  while (begin > 0 && is_word_char(s[begin - 1])) --begin;
  return s.substr(begin, end - begin);
}

}  // namespace

ParsedDetection parse_detection_answer(const std::string& text) {
  const auto blocks = group_blocks(text, scan_tuples(text));
  ParsedDetection out;
  for (const auto& block : blocks) {
    if (block.size() != 8) continue;
    ParsedBox box{block_points<8>(block)};
    out.parts.emplace_back(name_before(text, block.front().begin), box);
  }
  if (out.parts.empty()) throw_block_error(blocks, 8);
  return out;
}

ParsedBox parse_box_answer(const std::string& text) {
  const auto blocks = group_blocks(text, scan_tuples(text));
  const auto* block = first_block_of(blocks, 8);
  if (block == nullptr) throw_block_error(blocks, 8);
  return {block_points<8>(*block)};
}

ParsedJoint parse_joint_answer(const std::string& text) {
  const std::string lower = to_lower(text);
  const std::size_t revolute = lower.find("revolute");
  const std::size_t prismatic = lower.find("prismatic");
  if (revolute == std::string::npos && prismatic == std::string::npos) {
    throw Error(ErrorKind::parse, "answer names no joint type");
  }

  ParsedJoint out;
  out.kind = prismatic < revolute ? ArticulationKind::prismatic
                                  : ArticulationKind::revolute;
  const auto blocks = group_blocks(text, scan_tuples(text));
  const auto* block = first_block_of(blocks, 2);
  if (block == nullptr) throw_block_error(blocks, 2);
  out.axis = block_points<2>(*block);
  return out;
}

ParsedAction parse_action_answer(const std::string& text) {
  const std::string lower = to_lower(text);
  std::string action;
  std::size_t action_pos = std::string::npos;
  for (const std::string& skill : skill_library()) {
    const std::string needle = to_lower(skill);
    std::size_t pos = lower.find(needle);
    while (pos != std::string::npos) {
      const bool left_ok = pos == 0 || !is_word_char(lower[pos - 1]);
      const std::size_t after = pos + needle.size();
      const bool right_ok = after >= lower.size() || !is_word_char(lower[after]);
      if (left_ok && right_ok) break;
      pos = lower.find(needle, pos + 1);
    }
    if (pos != std::string::npos && pos < action_pos) {
      action_pos = pos;
      action = skill;
    }
  }
  if (action.empty()) {
    throw Error(ErrorKind::parse, "answer names no known skill");
  }

  const auto blocks = group_blocks(text, scan_tuples(text));
  const auto* block = first_block_of(blocks, 8);
  if (block == nullptr) throw_block_error(blocks, 8);
  return {action, {block_points<8>(*block)}};
}

ParsedAnswer parse_triad_answer(const std::string& text, TaskKind task) {
  switch (task) {
    case TaskKind::detection:
      return parse_detection_answer(text);
    case TaskKind::rec_link:
      return parse_box_answer(text);
    case TaskKind::reg_joint:
      return parse_joint_answer(text);
    case TaskKind::rec_action:
      return parse_action_answer(text);
  }
  throw Error(ErrorKind::domain, "unknown task kind");
}

Vec3 denormalize_point(const CameraIntrinsics& intr, const CameraPose& pose,
                       const DepthRange& range, const NormalizedPoint3& p) {
  const double depth = denormalize_depth(range, p.z);
  return unproject(intr, pose, p.u * intr.width, p.v * intr.height, depth);
}

OrientedBox3D box_from_vertices(const std::array<Vec3, 8>& v) {
  const Vec3 x_vec = (v[1] + v[2] + v[5] + v[6]) - (v[0] + v[3] + v[4] + v[7]);
  const Vec3 y_vec = (v[2] + v[3] + v[6] + v[7]) - (v[0] + v[1] + v[4] + v[5]);
  const Vec3 z_vec = (v[4] + v[5] + v[6] + v[7]) - (v[0] + v[1] + v[2] + v[3]);

  OrientedBox3D box;
  box.center = Vec3::Zero();
  for (const Vec3& p : v) box.center += p;
  box.center /= 8.0;

  if (z_vec.norm() < 1e-9) {
    throw Error(ErrorKind::degenerate, "box vertices carry no z direction");
  }
  box.axes[2] = z_vec.normalized();
  const Vec3 x_ortho = x_vec - box.axes[2] * box.axes[2].dot(x_vec);
  if (x_ortho.norm() < 1e-9) {
    throw Error(ErrorKind::degenerate, "box vertices carry no x direction");
  }
  box.axes[0] = x_ortho.normalized();
  box.axes[1] = box.axes[2].cross(box.axes[0]);

  box.half_extents[0] = std::max(x_vec.dot(box.axes[0]) / 8.0, 1e-6);
  box.half_extents[1] = std::max(y_vec.dot(box.axes[1]) / 8.0, 1e-6);
  box.half_extents[2] = std::max(z_vec.dot(box.axes[2]) / 8.0, 1e-6);
  box.vertices = box_vertices(box.center, box.axes, box.half_extents);
  return box;
}

PredictionSource PredictionSource::ground_truth() { return {}; }

PredictionSource PredictionSource::perturbed(double noise_std,
                                             std::uint64_t seed) {
  PredictionSource source;
  source.kind = Kind::perturbed;
  source.noise_std = noise_std;
  source.seed = seed;
  return source;
}

PredictionSource PredictionSource::remote(std::string endpoint) {
  PredictionSource source;
  source.kind = Kind::remote;
  source.endpoint = std::move(endpoint);
  return source;
}

namespace {

Triad perturb_triad(const Triad& truth, double noise_std, Rng& rng) {
  Triad noisy = truth;
  auto jitter = [&](NormalizedPoint3& p) {
    p.u = std::clamp(p.u + noise_std * rng.normal(), 0.0, 1.0);
    p.v = std::clamp(p.v + noise_std * rng.normal(), 0.0, 1.0);
    p.z = std::clamp(p.z + noise_std * rng.normal(), 0.0, 1.0);
  };
  for (NormalizedPoint3& p : noisy.box_norm) jitter(p);
  for (NormalizedPoint3& p : noisy.axis_norm) jitter(p);
  return noisy;
}

std::string format_answer(const PredictContext& ctx, const Triad& triad,
                          const std::vector<Triad>& detection_triads) {
  switch (ctx.task) {
    case TaskKind::detection:
      return detection_answer(detection_triads);
    case TaskKind::rec_link:
      return rec_link_answer(triad);
    case TaskKind::reg_joint:
      return reg_joint_answer(triad);
    case TaskKind::rec_action: {
      const std::string action =
          !ctx.action.empty() ? ctx.action
          : !triad.label.actions.empty() ? triad.label.actions.front()
                                         : std::string("rotate");
      return rec_action_answer(triad, action);
    }
  }
  throw Error(ErrorKind::domain, "unknown task kind");
}

std::string remote_predict(const std::string& endpoint,
                           const PredictContext& ctx) {
  std::string base = endpoint;
  std::string path = "/";
  std::size_t host_start = base.find("://");
  host_start = host_start == std::string::npos ? 0 : host_start + 3;
  const std::size_t slash = base.find('/', host_start);
  if (slash != std::string::npos) {
    path = base.substr(slash);
    base = base.substr(0, slash);
  }

  nlohmann::json request;
  request["image"] = ctx.image_ref;
  request["prompt"] = ctx.prompt;

  httplib::Client client(base);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(30, 0);
  auto res = client.Post(path, request.dump(), "application/json");
  if (!res) {
    throw Error(ErrorKind::transport,
                "prediction service unreachable at " + endpoint);
  }
  if (res->status != 200) {
    throw Error(ErrorKind::transport, "prediction service returned status " +
                                          std::to_string(res->status));
  }
  try {
    nlohmann::json reply = nlohmann::json::parse(res->body);
    if (!reply.contains("text") || !reply["text"].is_string()) {
      throw Error(ErrorKind::transport,
                  "prediction service reply lacks a text field");
    }
    return reply["text"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::transport,
                std::string("prediction service sent invalid JSON: ") +
                    e.what());
  }
}

}  // namespace

std::string predict(const PredictionSource& source, const PredictContext& ctx) {
  if (source.kind == PredictionSource::Kind::remote) {
    return remote_predict(source.endpoint, ctx);
  }

  if (ctx.truth == nullptr && ctx.task != TaskKind::detection) {
    throw Error(ErrorKind::config, "predict: ground-truth triad missing");
  }
  std::vector<Triad> detection;
  if (ctx.task == TaskKind::detection) {
    if (ctx.view_triads == nullptr) {
      throw Error(ErrorKind::config, "predict: view triads missing");
    }
    detection = *ctx.view_triads;
  }

  if (source.kind == PredictionSource::Kind::ground_truth ||
      source.noise_std <= 0.0) {
    static const Triad kEmpty{};
    return format_answer(ctx, ctx.truth ? *ctx.truth : kEmpty, detection);
  }

  if (ctx.task == TaskKind::detection) {
    for (Triad& triad : detection) {
      Rng rng(derive_seed(source.seed,
                          {fnv1a64(ctx.image_ref), fnv1a64(triad.link)}));
      triad = perturb_triad(triad, source.noise_std, rng);
    }
    static const Triad kEmpty{};
    return format_answer(ctx, kEmpty, detection);
  }

  Rng rng(derive_seed(source.seed,
                      {fnv1a64(ctx.image_ref), fnv1a64(ctx.truth->link)}));
  const Triad noisy = perturb_triad(*ctx.truth, source.noise_std, rng);
  return format_answer(ctx, noisy, detection);
}

}  // namespace a3kit
