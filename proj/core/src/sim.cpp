#include "a3kit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "a3kit/dataset.hpp"
#include "a3kit/error.hpp"
#include "a3kit/parallel.hpp"

namespace a3kit {

namespace {

const JointSpec& movable_parent_joint(const KinematicTree& tree,
                                      const std::string& link) {
  const JointSpec* joint = tree.parent_joint_of(link);
  if (joint == nullptr || !joint->is_movable()) {
    throw Error(ErrorKind::not_movable,
                "link '" + link + "' has no movable parent joint");
  }
  return *joint;
}

// World pose of the joint frame at zero joint value. The parent chain does
// not involve the joint itself, so any value for it in `config` works.
Transform joint_base_frame(const KinematicTree& tree, const JointSpec& joint,
                           const JointConfig& config) {
  LinkTransforms fk = forward_kinematics(tree, config);
  return fk.at(joint.parent_link) * joint.origin;
}

Vec3 anchor_world_at(const Transform& base, const JointSpec& joint,
                     const Vec3& anchor_local, double q) {
  if (joint.kind == JointKind::prismatic) {
    return base * Vec3(anchor_local + q * joint.axis_local);
  }
  return base * Vec3(rotation_about_axis(joint.axis_local, q) * anchor_local);
}

}  // namespace

const char* failure_reason_name(FailureReason reason) {
  switch (reason) {
    case FailureReason::no_contact: return "no_contact";
    case FailureReason::detached: return "detached";
    case FailureReason::wrong_direction: return "wrong_direction";
    case FailureReason::degenerate: return "degenerate";
  }
  return "?";
}

AttachmentState attach(const KinematicTree& tree, const LinkTransforms& fk,
                       const std::string& link, const Vec3& contact_world,
                       const std::vector<Vec3>& surface_local,
                       const JointConfig& config, double attach_tol) {
  const JointSpec& joint = movable_parent_joint(tree, link);
  auto it = fk.find(link);
  if (it == fk.end()) {
    throw Error(ErrorKind::lookup, "link '" + link + "' has no transform");
  }
  Vec3 contact_local = it->second.inverse() * contact_world;
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : surface_local) {
    best = std::min(best, (p - contact_local).norm());
  }
  if (!(best <= attach_tol)) {
    throw Error(ErrorKind::no_contact,
                "contact is " + std::to_string(best) +
                    " m from the link surface (tolerance " +
                    std::to_string(attach_tol) + ")");
  }
  AttachmentState state;
  state.link = link;
  state.joint = joint.name;
  state.anchor_local = contact_local;
  auto q_it = config.values.find(joint.name);
  if (q_it == config.values.end()) {
    throw Error(ErrorKind::config, "no value for joint '" + joint.name + "'");
  }
  state.q = q_it->second;
  return state;
}

StepResult step(const AttachmentState& state, const KinematicTree& tree,
                const JointConfig& frozen, const Vec3& waypoint,
                const EvalConfig& cfg) {
  const JointSpec* joint = tree.find_joint(state.joint);
  if (joint == nullptr) {
    throw Error(ErrorKind::lookup, "unknown joint '" + state.joint + "'");
  }
  Transform base = joint_base_frame(tree, *joint, frozen);
  JointLimits eff = effective_limits(*joint);

  double q = state.q;
  if (joint->kind == JointKind::prismatic) {
    Vec3 dir_world = base.linear() * joint->axis_local;
    Vec3 anchor0 = base * state.anchor_local;  // anchor at q = 0
    q = dir_world.dot(waypoint - anchor0);
  } else {
    Vec3 axis_world = base.linear() * joint->axis_local;
    Vec3 origin = base.translation();
    Vec3 r0 = base.linear() * state.anchor_local;  // from origin at q = 0
    Vec3 v = rotation_about_axis(axis_world, state.q) * r0;
    Vec3 w = waypoint - origin;
    Vec3 v_perp = v - axis_world * axis_world.dot(v);
    Vec3 w_perp = w - axis_world * axis_world.dot(w);
    if (v_perp.norm() > 1e-12 && w_perp.norm() > 1e-12) {
      double delta = std::atan2(axis_world.dot(v_perp.cross(w_perp)),
                                v_perp.dot(w_perp));
      q = state.q + delta;
    }
  }

  StepResult result;
  result.q = std::clamp(q, eff.lower, eff.upper);
  result.residual =
      (anchor_world_at(base, *joint, state.anchor_local, result.q) - waypoint)
          .norm();
  result.detached = result.residual > cfg.detach_eps;
  return result;
}

EpisodeResult run_episode(const KinematicTree& tree, const std::string& link,
                          const std::vector<Trajectory>& trajectories,
                          const std::vector<Vec3>& surface_local,
                          const EvalConfig& cfg,
                          const std::optional<JointConfig>& init) {
  const JointSpec& joint = movable_parent_joint(tree, link);
  JointConfig start = init.value_or(middle_joint_values(tree));
  auto q_it = start.values.find(joint.name);
  if (q_it == start.values.end()) {
    throw Error(ErrorKind::config, "no value for joint '" + joint.name + "'");
  }
  double q_init = q_it->second;
  JointLimits eff = effective_limits(joint);

  EpisodeResult episode;
  std::size_t count =
      std::min(trajectories.size(), static_cast<std::size_t>(
                                        std::max(cfg.attempts, 0)));
  for (std::size_t t = 0; t < count; ++t) {
    const Trajectory& traj = trajectories[t];
    AttemptResult attempt;
    attempt.direction = traj.direction;

    JointConfig config = start;  // reset between attempts
    LinkTransforms fk = forward_kinematics(tree, config);
    AttachmentState state;
    try {
      state = attach(tree, fk, link, traj.contact, surface_local, config,
                     cfg.attach_tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::no_contact) throw;
      attempt.failure = FailureReason::no_contact;
      episode.attempts.push_back(attempt);
      continue;
    }

    bool detached = false;
    if (traj.kind == PrimitiveKind::scroll && !traj.waypoints.empty()) {
      // Scroll carries its motion in the orientation channel: the positions
      // stay at the contact while the grip spins. Project each waypoint's
      // spin (relative to the first) onto the joint axis.
      Transform base = joint_base_frame(tree, joint, config);
      Vec3 axis_world = base.linear() * joint.axis_local;
      Quat start = traj.waypoints.front().orientation;
      double q_grab = state.q;
      for (const Waypoint& wp : traj.waypoints) {
        Eigen::AngleAxisd spin(wp.orientation * start.inverse());
        double delta = spin.angle() * spin.axis().dot(axis_world);
        state.q = std::clamp(q_grab + delta, eff.lower, eff.upper);
        config.values[joint.name] = state.q;
        double residual =
            (anchor_world_at(base, joint, state.anchor_local, state.q) -
             wp.position)
                .norm();
        if (residual > cfg.detach_eps) {
          detached = true;
          break;
        }
      }
    } else {
      for (const Waypoint& wp : traj.waypoints) {
        StepResult r = step(state, tree, config, wp.position, cfg);
        state.q = r.q;
        config.values[joint.name] = r.q;
        if (r.detached) {
          detached = true;
          break;
        }
      }
    }
    attempt.displacement = std::abs(state.q - q_init);
    attempt.success = attempt.displacement > cfg.sigma;
    if (!attempt.success) {
      if (detached) {
        attempt.failure = FailureReason::detached;
      } else if (std::abs(state.q - eff.lower) < 1e-9 ||
                 std::abs(state.q - eff.upper) < 1e-9) {
        attempt.failure = FailureReason::wrong_direction;
      } else {
        attempt.failure = FailureReason::degenerate;
      }
    }
    episode.attempts.push_back(attempt);
  }

  for (const AttemptResult& attempt : episode.attempts) {
    episode.displacement = std::max(episode.displacement, attempt.displacement);
    episode.success = episode.success || attempt.success;
  }
  if (!episode.success) {
    static const FailureReason kOrder[] = {
        FailureReason::no_contact, FailureReason::detached,
        FailureReason::wrong_direction, FailureReason::degenerate};
    episode.failure = FailureReason::degenerate;
    for (FailureReason reason : kOrder) {
      bool hit = false;
      for (const AttemptResult& attempt : episode.attempts) {
        hit = hit || attempt.failure == reason;
      }
      if (hit) {
        episode.failure = reason;
        break;
      }
    }
  }
  return episode;
}

namespace {

EpisodeRow degenerate_row(const EvalCase& c, int episode,
                          const std::string& link) {
  EpisodeRow row;
  row.object = c.name;
  row.category = c.category;
  row.episode = episode;
  row.link = link;
  row.failure = failure_reason_name(FailureReason::degenerate);
  return row;
}

EpisodeRow run_eval_episode(const EvalCase& c, int episode,
                            const PredictionSource& source,
                            const EvalRunConfig& cfg) {
  const KinematicTree& tree = c.tree;
  std::uint64_t ep_seed =
      derive_seed(cfg.seed, {fnv1a64(c.name), static_cast<std::uint64_t>(episode)});
  JointConfig middle = middle_joint_values(tree);
  ObjectBounds bounds = object_bounds(
      tree, middle, cfg.samples_per_link, derive_seed(ep_seed, {fnv1a64("bounds")}));

  ViewAnnotation ann;
  CameraPose pose;
  std::uint64_t view_seed = 0;
  // Retries step the azimuth by the golden angle, so a handful of them
  // sweeps the whole circle even when the first draw faces an occluded
  // side of the object.
  constexpr double kGoldenAngle = 2.3999632297286533;
  for (int k = 0; k < std::max(cfg.view_retries, 1); ++k) {
    Rng cam_rng(derive_seed(ep_seed, {fnv1a64("camera"),
                                      static_cast<std::uint64_t>(k)}));
    CameraPose candidate =
        sample_camera(bounds.center, bounds.radius, cam_rng, k * kGoldenAngle);
    AnnotateParams params;
    params.samples_per_link = cfg.samples_per_link;
    params.seed = derive_seed(ep_seed, {fnv1a64("annotate"),
                                        static_cast<std::uint64_t>(k)});
    ViewAnnotation attempt = annotate_view(tree, middle, cfg.intrinsics,
                                           candidate, cfg.rules, c.category,
                                           params);
    if (!attempt.triads.empty()) {
      ann = std::move(attempt);
      pose = candidate;
      view_seed = params.seed;
      break;
    }
  }
  if (ann.triads.empty()) return degenerate_row(c, episode, "");

  Rng pick_rng(derive_seed(ep_seed, {fnv1a64("pick")}));
  const Triad& triad = ann.triads[pick_rng.index(ann.triads.size())];
  std::string action =
      triad.label.actions.empty() ? "rotate" : triad.label.actions.front();
  char image_buf[32];
  std::snprintf(image_buf, sizeof(image_buf), "/episode_%04d.png", episode);
  std::string image_ref = c.name + image_buf;

  ParsedJoint parsed_joint;
  ParsedAction parsed_action;
  try {
    PredictContext joint_ctx;
    joint_ctx.image_ref = image_ref;
    joint_ctx.prompt = reg_joint_prompt_with_name(triad.link);
    joint_ctx.task = TaskKind::reg_joint;
    joint_ctx.truth = &triad;
    joint_ctx.view_triads = &ann.triads;
    parsed_joint = parse_joint_answer(predict(source, joint_ctx));

    PredictContext action_ctx = joint_ctx;
    action_ctx.prompt = rec_action_prompt(action_instruction(action, triad.link));
    action_ctx.task = TaskKind::rec_action;
    action_ctx.action = action;
    parsed_action = parse_action_answer(predict(source, action_ctx));
  } catch (const Error&) {
    return degenerate_row(c, episode, triad.link);
  }

  EpisodeRow row;
  row.object = c.name;
  row.category = c.category;
  row.episode = episode;
  row.link = triad.link;
  try {
    std::array<Vec3, 8> corners;
    for (std::size_t i = 0; i < 8; ++i) {
      corners[i] = denormalize_point(cfg.intrinsics, pose, ann.depth_range,
                                     parsed_action.box.vertices[i]);
    }
    OrientedBox3D box = box_from_vertices(corners);
    Vec3 p0 = denormalize_point(cfg.intrinsics, pose, ann.depth_range,
                                parsed_joint.axis[0]);
    Vec3 p1 = denormalize_point(cfg.intrinsics, pose, ann.depth_range,
                                parsed_joint.axis[1]);
    if ((p1 - p0).norm() < 1e-9) {
      throw Error(ErrorKind::degenerate, "predicted axis has zero length");
    }
    AxisSegment axis{p0, p1, parsed_joint.kind};

    SemanticLabel label;
    label.joint_kind = parsed_joint.kind;
    label.link_name = triad.link;
    label.actions = {parsed_action.action};
    PrimitiveKind primitive = select_primitive(label);
    row.primitive = primitive_kind_name(primitive);

    SurfacePoints surface = sample_link_points(
        tree, triad.link, cfg.samples_per_link,
        derive_seed(view_seed, {fnv1a64("samples"), fnv1a64(triad.link)}));
    LinkTransforms fk = forward_kinematics(tree, middle);
    const Transform& world = fk.at(triad.link);
    std::vector<Vec3> surface_world;
    surface_world.reserve(surface.points_local.size());
    for (const Vec3& p : surface.points_local) surface_world.push_back(world * p);

    Vec3 contact;
    try {
      contact = choose_contact(box, surface_world, primitive, axis,
                               derive_seed(ep_seed, {fnv1a64("contact")}),
                               cfg.contact_inflate);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::contact) throw;
      row.failure = failure_reason_name(FailureReason::no_contact);
      return row;
    }

    const JointSpec& joint = movable_parent_joint(tree, triad.link);
    JointLimits eff = effective_limits(joint);
    double q_init = middle.values.at(joint.name);
    TrajectoryParams fwd_params = cfg.trajectory;
    TrajectoryParams back_params = cfg.trajectory;
    if (primitive == PrimitiveKind::slide) {
      fwd_params.slide_m =
          std::min(cfg.trajectory.slide_m, 0.5 * (eff.upper - q_init));
      back_params.slide_m =
          std::min(cfg.trajectory.slide_m, 0.5 * (q_init - eff.lower));
    }
    std::vector<Trajectory> trajectories = {
        plan_trajectory(primitive, contact, axis, fwd_params,
                        MotionDirection::forward),
        plan_trajectory(primitive, contact, axis, back_params,
                        MotionDirection::backward)};

    EpisodeResult result = run_episode(tree, triad.link, trajectories,
                                       surface.points_local, cfg.sim);
    row.displacement = result.displacement;
    row.success = result.success;
    if (result.failure) row.failure = failure_reason_name(*result.failure);
  } catch (const Error&) {
    row.displacement = 0.0;
    row.success = false;
    row.failure = failure_reason_name(FailureReason::degenerate);
  }
  return row;
}

}  // namespace

EvalReport evaluate(const std::vector<EvalCase>& cases,
                    const PredictionSource& source, const EvalRunConfig& cfg) {
  if (cfg.episodes_per_case < 1) {
    throw Error(ErrorKind::domain, "episodes_per_case must be positive");
  }
  EvalReport report;
  std::size_t total =
      cases.size() * static_cast<std::size_t>(cfg.episodes_per_case);
  report.rows.resize(total);
  parallel_for(total, [&](std::size_t i) {
    std::size_t ci = i / static_cast<std::size_t>(cfg.episodes_per_case);
    int episode = static_cast<int>(i % static_cast<std::size_t>(cfg.episodes_per_case));
    report.rows[i] = run_eval_episode(cases[ci], episode, source, cfg);
  });

  std::map<std::string, CategoryStats> by_category;
  for (const EpisodeRow& row : report.rows) {
    CategoryStats& stats = by_category[row.category];
    stats.category = row.category;
    stats.episodes += 1;
    stats.successes += row.success ? 1 : 0;
  }
  double sum = 0.0;
  for (auto& [name, stats] : by_category) {
    stats.rate = stats.episodes > 0
                     ? static_cast<double>(stats.successes) / stats.episodes
                     : 0.0;
    sum += stats.rate;
    report.categories.push_back(stats);
  }
  report.average = by_category.empty() ? 0.0 : sum / by_category.size();
  return report;
}

}  // namespace a3kit
