#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "a3kit/model_io.hpp"
#include "a3kit/primitives.hpp"
#include "a3kit/urdf.hpp"

namespace a3kit {

struct EvalConfig {
  double sigma = 0.01;       // success threshold on |q_final - q_init|
  double detach_eps = 0.02;  // suction breaks past this residual (meters)
  int attempts = 2;          // trajectories executed per episode
  double attach_tol = 0.005; // contact must sit this close to the surface
};

enum class FailureReason { no_contact, detached, wrong_direction, degenerate };

const char* failure_reason_name(FailureReason reason);

// Suction grip on a link: the contact stored in the child link frame plus
// the joint value at grab time.
struct AttachmentState {
  std::string link;
  std::string joint;
  Vec3 anchor_local = Vec3::Zero();
  double q = 0.0;
};

// Validates the contact against the link's sampled surface (attach_tol) and
// freezes it into the link frame together with the joint value at grab time.
// surface_local are link-frame points for the same link. Throws
// Error(no_contact) when the contact is too far from the surface and
// Error(not_movable) for links without a movable parent joint.
AttachmentState attach(const KinematicTree& tree, const LinkTransforms& fk,
                       const std::string& link, const Vec3& contact_world,
                       const std::vector<Vec3>& surface_local,
                       const JointConfig& config, double attach_tol = 0.005);

struct StepResult {
  double q = 0.0;
  double residual = 0.0;   // |anchor_world(q) - waypoint|
  bool detached = false;
};

// Quasi-static step: solves the joint value that brings the anchor closest
// to the waypoint (closed form per joint kind), clamps it to the effective
// limits, and reports the leftover distance. `frozen` supplies the values of
// every other joint. A residual above detach_eps marks the grip as broken;
// it is not an error.
StepResult step(const AttachmentState& state, const KinematicTree& tree,
                const JointConfig& frozen, const Vec3& waypoint,
                const EvalConfig& cfg);

struct AttemptResult {
  MotionDirection direction = MotionDirection::forward;
  double displacement = 0.0;
  bool success = false;
  std::optional<FailureReason> failure;
};

struct EpisodeResult {
  double displacement = 0.0;  // best attempt
  bool success = false;
  std::optional<FailureReason> failure;
  std::vector<AttemptResult> attempts;
};

// Runs the attempts in order, resetting the joint to its initial value in
// between. An episode succeeds iff some attempt moves the joint strictly
// more than cfg.sigma; displacement exactly sigma is a failure. Slide and
// Rotate trajectories are executed with positional steps; Scroll
// trajectories hold their position, so the executor projects each
// waypoint's orientation spin onto the joint axis instead. `init` overrides
// the default middle-of-travel initial configuration.
EpisodeResult run_episode(const KinematicTree& tree, const std::string& link,
                          const std::vector<Trajectory>& trajectories,
                          const std::vector<Vec3>& surface_local,
                          const EvalConfig& cfg,
                          const std::optional<JointConfig>& init = {});

struct EvalCase {
  std::string name;
  std::string category;
  KinematicTree tree;
};

struct EvalRunConfig {
  EvalConfig sim;
  int episodes_per_case = 10;
  std::uint64_t seed = 1;
  int samples_per_link = 2048;
  double contact_inflate = 0.02;
  TrajectoryParams trajectory;
  int view_retries = 8;            // camera draws until a triad is visible
  CameraIntrinsics intrinsics;
  SkillRuleTable rules = default_skill_rules();
};

struct EpisodeRow {
  std::string object;
  std::string category;
  int episode = 0;
  std::string link;
  std::string primitive;
  double displacement = 0.0;
  bool success = false;
  std::string failure;  // empty on success
};

struct CategoryStats {
  std::string category;
  int episodes = 0;
  int successes = 0;
  double rate = 0.0;
};

struct EvalReport {
  std::vector<EpisodeRow> rows;
  std::vector<CategoryStats> categories;  // sorted by category name
  double average = 0.0;                   // macro average over categories
};

// Closed-loop evaluation: per episode a random camera looks at the object in
// its middle configuration, the predictor answers a joint query and an
// action query for a seeded target part, the answers are parsed and
// denormalized, and both motion directions are simulated. Prediction or
// parse failures score the episode as a degenerate failure instead of
// raising.
EvalReport evaluate(const std::vector<EvalCase>& cases,
                    const PredictionSource& source, const EvalRunConfig& cfg);

}  // namespace a3kit
