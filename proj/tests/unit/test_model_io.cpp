#include <doctest.h>

#include <cmath>
#include <thread>

#include "a3kit/error.hpp"
#include "a3kit/grammar.hpp"
#include "a3kit/model_io.hpp"

// httplib last: it drags in <resolv.h>, whose _res macro mangles any Eigen
// declarations that get parsed after it.
#include <httplib.h>
#include <nlohmann/json.hpp>

using namespace a3kit;

namespace {

Triad make_triad(const std::string& link, ArticulationKind kind) {
  Triad triad;
  Rng rng(fnv1a64(link));
  for (int i = 0; i < 8; ++i) {
    triad.box_norm[i] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
  }
  for (int i = 0; i < 2; ++i) {
    triad.axis_norm[i] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
  }
  triad.link = link;
  triad.label.link_name = link;
  triad.label.joint_kind = kind;
  triad.label.actions = {"rotate"};
  return triad;
}

double max_error(const std::array<NormalizedPoint3, 8>& a,
                 const std::array<NormalizedPoint3, 8>& b) {
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    worst = std::max({worst, std::abs(a[i].u - b[i].u),
                      std::abs(a[i].v - b[i].v), std::abs(a[i].z - b[i].z)});
  }
  return worst;
}

}  // namespace

TEST_CASE("box answers parse through surrounding prose") {
  const Triad triad = make_triad("door", ArticulationKind::revolute);
  const std::string text =
      "Sure! The part you asked about is here: " +
      format_box_text(triad.box_norm) + ". Anything else?";
  const ParsedBox box = parse_box_answer(text);
  CHECK(max_error(box.vertices, triad.box_norm) <= 0.005 + 1e-12);
}

TEST_CASE("missing tuples and wrong arity raise distinct errors") {
  try {
    parse_box_answer("no coordinates here");
    FAIL_CHECK("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
  try {
    parse_box_answer("only two: (0.10,0.20,0.30), (0.40,0.50,0.60)");
    FAIL_CHECK("expected an arity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::arity);
  }
  // Eight tuples split across two separate blocks do not count.
  try {
    parse_box_answer(
        "(0.1,0.2,0.3), (0.1,0.2,0.3), (0.1,0.2,0.3), (0.1,0.2,0.3) and then "
        "(0.1,0.2,0.3), (0.1,0.2,0.3), (0.1,0.2,0.3), (0.1,0.2,0.3)");
    FAIL_CHECK("expected an arity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::arity);
  }
}

TEST_CASE("detection answers keep every part with its name") {
  const Triad drawer = make_triad("drawer", ArticulationKind::prismatic);
  const Triad door = make_triad("door", ArticulationKind::revolute);
  const ParsedDetection parsed =
      parse_detection_answer(detection_answer({drawer, door}));
  REQUIRE(parsed.parts.size() == 2);
  CHECK(parsed.parts[0].first == "drawer");
  CHECK(parsed.parts[1].first == "door");
  CHECK(max_error(parsed.parts[0].second.vertices, drawer.box_norm) <= 0.005 + 1e-12);
  CHECK(max_error(parsed.parts[1].second.vertices, door.box_norm) <= 0.005 + 1e-12);
}

TEST_CASE("joint answers pick the earliest joint keyword") {
  const std::string axis = "[(0.10,0.20,0.30), (0.40,0.50,0.60)]";
  const ParsedJoint a = parse_joint_answer("Joint type revolute and its Axis " + axis);
  CHECK(a.kind == ArticulationKind::revolute);
  CHECK(a.axis[0].u == doctest::Approx(0.10));
  CHECK(a.axis[1].z == doctest::Approx(0.60));

  const ParsedJoint b = parse_joint_answer(
      "It looks Prismatic to me, though revolute was considered. " + axis);
  CHECK(b.kind == ArticulationKind::prismatic);

  try {
    parse_joint_answer("some axis " + axis);
    FAIL_CHECK("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
  try {
    parse_joint_answer("revolute but no usable pair (0.1,0.2,0.3)");
    FAIL_CHECK("expected an arity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::arity);
  }
}

TEST_CASE("action answers match skills on word boundaries, earliest first") {
  const Triad triad = make_triad("cap", ArticulationKind::revolute);
  const std::string box = format_box_text(triad.box_norm);

  CHECK(parse_action_answer("Action type uncap and targeted object's BBox " + box)
            .action == "uncap");
  // "slide_out" appears first in the text, "press" later.
  CHECK(parse_action_answer("First slide_out then press " + box).action ==
        "slide_out");
  // Substrings inside larger words do not count.
  CHECK(parse_action_answer("Use the capacitor? No: rotate. " + box).action ==
        "rotate");
  CHECK(parse_action_answer("ACTION TYPE CAP then " + box).action == "cap");

  try {
    parse_action_answer("do something with " + box);
    FAIL_CHECK("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
}

TEST_CASE("parse_triad_answer dispatches on the task") {
  const Triad triad = make_triad("door", ArticulationKind::revolute);
  CHECK(std::holds_alternative<ParsedDetection>(
      parse_triad_answer(detection_answer({triad}), TaskKind::detection)));
  CHECK(std::holds_alternative<ParsedBox>(
      parse_triad_answer(rec_link_answer(triad), TaskKind::rec_link)));
  CHECK(std::holds_alternative<ParsedJoint>(
      parse_triad_answer(reg_joint_answer(triad), TaskKind::reg_joint)));
  CHECK(std::holds_alternative<ParsedAction>(
      parse_triad_answer(rec_action_answer(triad, "rotate"), TaskKind::rec_action)));
}

TEST_CASE("format/parse round trips stay within the grid resolution") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<NormalizedPoint3, 8> box;
    for (auto& p : box) p = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    const ParsedBox parsed = parse_box_answer(format_box_text(box));
    CHECK(max_error(parsed.vertices, box) <= 0.005 + 1e-12);
  }
}

TEST_CASE("box_from_vertices recovers an exact box") {
  const Mat3 rot = rotation_from_rpy(0.4, -0.3, 1.2);
  const std::array<Vec3, 3> axes = {rot.col(0), rot.col(1), rot.col(2)};
  const Vec3 center(0.3, -0.2, 0.5);
  const Vec3 he(0.4, 0.2, 0.1);
  const std::array<Vec3, 8> corners = box_vertices(center, axes, he);

  const OrientedBox3D box = box_from_vertices(corners);
  CHECK(box.center.isApprox(center, 1e-12));
  for (int k = 0; k < 3; ++k) {
    CHECK(box.axes[k].isApprox(axes[k], 1e-12));
    CHECK(box.half_extents[k] == doctest::Approx(he[k]));
  }
  for (int i = 0; i < 8; ++i) {
    CHECK(box.vertices[i].isApprox(corners[i], 1e-9));
  }
}

TEST_CASE("box_from_vertices tolerates noise and floors tiny extents") {
  const std::array<Vec3, 3> axes = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  std::array<Vec3, 8> corners =
      box_vertices(Vec3::Zero(), axes, Vec3(0.5, 0.3, 0.2));
  Rng rng(5);
  for (Vec3& c : corners) {
    c += 0.005 * Vec3(rng.normal(), rng.normal(), rng.normal());
  }
  const OrientedBox3D box = box_from_vertices(corners);
  CHECK(box.half_extents[0] == doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::abs(box.axes[2].dot(Vec3::UnitZ())) > 0.99);

  // Flat boxes keep a positive floor.
  const OrientedBox3D flat = box_from_vertices(
      box_vertices(Vec3::Zero(), axes, Vec3(0.5, 0.0, 0.2)));
  CHECK(flat.half_extents[1] == doctest::Approx(1e-6));
}

TEST_CASE("collapsed vertices raise a degenerate error") {
  std::array<Vec3, 8> same;
  same.fill(Vec3(1, 2, 3));
  try {
    box_from_vertices(same);
    FAIL_CHECK("expected a degenerate error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }

  // A segment along z has no x direction.
  const std::array<Vec3, 3> axes = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  try {
    box_from_vertices(box_vertices(Vec3::Zero(), axes, Vec3(0, 0, 0.5)));
    FAIL_CHECK("expected a degenerate error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("denormalize_point inverts the view's normalization") {
  const CameraIntrinsics intr;
  const CameraPose pose = look_at(Vec3(2, 1, 1), Vec3::Zero(), Vec3::UnitZ());
  const DepthRange range{1.0, 4.0};

  const Vec3 targets[] = {Vec3(0.2, -0.1, 0.3), Vec3(-0.3, 0.2, 0.0)};
  for (const Vec3& p : targets) {
    const Vec3 pc = pose.to_camera(p);
    REQUIRE(pc.z() > range.z_min);
    REQUIRE(pc.z() < range.z_max);
    const double u_px = intr.fx * pc.x() / pc.z() + intr.cx;
    const double v_px = intr.fy * pc.y() / pc.z() + intr.cy;
    const NormalizedPoint3 n = normalize_point(intr, range, u_px, v_px, pc.z());
    const Vec3 back = denormalize_point(intr, pose, range, n);
    CHECK(back.isApprox(p, 1e-9));
  }

  try {
    denormalize_point(intr, pose, range, {0.5, 0.5, 1.5});
    FAIL_CHECK("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("ground-truth predictions format the true triad") {
  const Triad triad = make_triad("door", ArticulationKind::revolute);
  PredictContext ctx;
  ctx.image_ref = "obj/view_0001.png";
  ctx.task = TaskKind::reg_joint;
  ctx.truth = &triad;
  CHECK(predict(PredictionSource::ground_truth(), ctx) == reg_joint_answer(triad));

  ctx.task = TaskKind::rec_link;
  CHECK(predict(PredictionSource::ground_truth(), ctx) == rec_link_answer(triad));

  ctx.task = TaskKind::rec_action;
  ctx.action = "flap_open";
  CHECK(predict(PredictionSource::ground_truth(), ctx) ==
        rec_action_answer(triad, "flap_open"));

  std::vector<Triad> triads = {triad};
  ctx.task = TaskKind::detection;
  ctx.view_triads = &triads;
  CHECK(predict(PredictionSource::ground_truth(), ctx) == detection_answer(triads));
}

TEST_CASE("a missing ground-truth triad is a config error") {
  PredictContext ctx;
  ctx.task = TaskKind::rec_link;
  try {
    predict(PredictionSource::ground_truth(), ctx);
    FAIL_CHECK("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
}

TEST_CASE("perturbed predictions are deterministic per (seed, image, link)") {
  const Triad triad = make_triad("door", ArticulationKind::revolute);
  PredictContext ctx;
  ctx.image_ref = "obj/view_0001.png";
  ctx.task = TaskKind::rec_link;
  ctx.truth = &triad;

  const PredictionSource source = PredictionSource::perturbed(0.05, 7);
  const std::string a = predict(source, ctx);
  const std::string b = predict(source, ctx);
  CHECK(a == b);
  CHECK(a != rec_link_answer(triad));

  PredictContext other = ctx;
  other.image_ref = "obj/view_0002.png";
  CHECK(predict(source, other) != a);
  CHECK(predict(PredictionSource::perturbed(0.05, 8), ctx) != a);

  // Zero noise collapses to the ground truth.
  CHECK(predict(PredictionSource::perturbed(0.0, 7), ctx) ==
        rec_link_answer(triad));
}

TEST_CASE("an episode's REG-Joint and REC-Action answers share one noise draw") {
  const Triad triad = make_triad("door", ArticulationKind::revolute);
  const PredictionSource source = PredictionSource::perturbed(0.08, 42);

  PredictContext link_ctx;
  link_ctx.image_ref = "obj/episode_0003.png";
  link_ctx.task = TaskKind::rec_link;
  link_ctx.truth = &triad;
  const std::string box_text = predict(source, link_ctx);

  PredictContext action_ctx = link_ctx;
  action_ctx.task = TaskKind::rec_action;
  action_ctx.action = "flap_open";
  const std::string action_text = predict(source, action_ctx);

  // The REC-Action answer embeds exactly the box the REC-Link answer gave.
  CHECK(action_text.find(box_text) != std::string::npos);
}

TEST_CASE("heavy noise stays clamped inside the unit cube") {
  const Triad triad = make_triad("door", ArticulationKind::revolute);
  PredictContext ctx;
  ctx.image_ref = "x.png";
  ctx.task = TaskKind::rec_link;
  ctx.truth = &triad;
  const ParsedBox box =
      parse_box_answer(predict(PredictionSource::perturbed(10.0, 3), ctx));
  for (const NormalizedPoint3& p : box.vertices) {
    CHECK(p.u >= 0.0);
    CHECK(p.u <= 1.0);
    CHECK(p.v >= 0.0);
    CHECK(p.v <= 1.0);
    CHECK(p.z >= 0.0);
    CHECK(p.z <= 1.0);
  }
}

TEST_CASE("remote predictions POST image and prompt and return text verbatim") {
  httplib::Server server;
  nlohmann::json last;
  server.Post("/predict", [&](const httplib::Request& req, httplib::Response& res) {
    last = nlohmann::json::parse(req.body);
    res.set_content(R"({"text":"Joint type revolute and its Axis ..."})",
                    "application/json");
  });
  server.Post("/no-text", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"answer":"nope"})", "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);

  PredictContext ctx;
  ctx.image_ref = "obj/view_0009.png";
  ctx.prompt = "Please provide the joint's type...";
  ctx.task = TaskKind::reg_joint;

  CHECK(predict(PredictionSource::remote(base + "/predict"), ctx) ==
        "Joint type revolute and its Axis ...");
  CHECK(last["image"] == "obj/view_0009.png");
  CHECK(last["prompt"] == "Please provide the joint's type...");

  try {
    predict(PredictionSource::remote(base + "/no-text"), ctx);
    FAIL_CHECK("expected a transport error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::transport);
  }

  server.stop();
  worker.join();

  try {
    predict(PredictionSource::remote("http://127.0.0.1:9/predict"), ctx);
    FAIL_CHECK("expected a transport error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::transport);
  }
}
