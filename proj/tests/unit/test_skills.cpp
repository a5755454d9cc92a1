#include <doctest.h>

#include <set>
#include <thread>

#include "a3kit/error.hpp"
#include "a3kit/skills.hpp"

// httplib last: it drags in <resolv.h>, whose _res macro mangles any Eigen
// declarations that get parsed after it.
#include <httplib.h>
#include <nlohmann/json.hpp>

using namespace a3kit;

TEST_CASE("the skill library holds exactly the 14 known skills") {
  const auto& lib = skill_library();
  REQUIRE(lib.size() == 14);
  CHECK(std::set<std::string>(lib.begin(), lib.end()).size() == 14);
  for (const std::string& s : lib) CHECK(is_known_skill(s));
  CHECK(is_known_skill("StatusComplete"));
  CHECK(!is_known_skill("fly"));
  CHECK(!is_known_skill("Rotate"));  // exact spelling only
}

TEST_CASE("joint_state_name splits travel at 10% and 90%") {
  CHECK(joint_state_name(0.0, 0.0, 1.0) == "closed");
  CHECK(joint_state_name(0.1, 0.0, 1.0) == "closed");
  CHECK(joint_state_name(0.10001, 0.0, 1.0) == "partially_open");
  CHECK(joint_state_name(0.5, 0.0, 1.0) == "partially_open");
  CHECK(joint_state_name(0.89999, 0.0, 1.0) == "partially_open");
  CHECK(joint_state_name(0.9, 0.0, 1.0) == "open");
  CHECK(joint_state_name(1.0, 0.0, 1.0) == "open");

  // Shifted range.
  CHECK(joint_state_name(-1.0, -1.0, 1.0) == "closed");
  CHECK(joint_state_name(0.95, -1.0, 1.0) == "open");

  // Zero travel collapses to closed.
  CHECK(joint_state_name(0.3, 0.3, 0.3) == "closed");
}

TEST_CASE("default rules cover the common furniture vocabulary") {
  const SkillRuleTable table = default_skill_rules();
  const auto rev = ArticulationKind::revolute;
  const auto pri = ArticulationKind::prismatic;

  CHECK(select_actions(table, "StorageFurniture", "top_drawer", pri, "closed") ==
        std::vector<std::string>{"slide_out"});
  CHECK(select_actions(table, "StorageFurniture", "top_drawer", pri, "open") ==
        std::vector<std::string>{"slide_in"});
  CHECK(select_actions(table, "StorageFurniture", "top_drawer", pri,
                       "partially_open") ==
        std::vector<std::string>{"slide_out", "slide_in"});

  CHECK(select_actions(table, "Microwave", "door", rev, "closed") ==
        std::vector<std::string>{"flap_open"});
  CHECK(select_actions(table, "Microwave", "door", rev, "open") ==
        std::vector<std::string>{"flap_close"});
  CHECK(select_actions(table, "Microwave", "door", rev, "partially_open") ==
        std::vector<std::string>{"flap_close"});

  // A sliding door slides instead of swinging.
  CHECK(select_actions(table, "Wardrobe", "door", pri, "closed") ==
        std::vector<std::string>{"slide_open"});

  CHECK(select_actions(table, "Box", "lid", rev, "closed") ==
        std::vector<std::string>{"flap_open"});
  CHECK(select_actions(table, "Bottle", "bottle_cap", rev, "closed") ==
        std::vector<std::string>{"cap", "uncap", "rotate"});
  CHECK(select_actions(table, "Faucet", "turn_knob", rev, "partially_open") ==
        std::vector<std::string>{"rotate"});
  CHECK(select_actions(table, "Remote", "power_button", pri, "closed") ==
        std::vector<std::string>{"press"});

  // Matching is case-insensitive substring containment.
  CHECK(select_actions(table, "Bottle", "Bottle_CAP", rev, "open") ==
        std::vector<std::string>{"cap", "uncap", "rotate"});
}

TEST_CASE("unmatched links fall back by joint kind") {
  const SkillRuleTable table = default_skill_rules();
  CHECK(select_actions(table, "Widget", "mystery", ArticulationKind::prismatic,
                       "closed") ==
        std::vector<std::string>{"slide_in", "slide_out"});
  CHECK(select_actions(table, "Widget", "mystery", ArticulationKind::revolute,
                       "open") ==
        std::vector<std::string>{"flap_open", "flap_close"});
}

TEST_CASE("the first matching rule wins") {
  SkillRuleTable table;
  table.rules.push_back({"Bottle", "cap", ArticulationKind::revolute, "*",
                         {"uncap", "rotate"}});
  table.rules.push_back({"*", "cap", ArticulationKind::revolute, "*",
                         {"cap"}});
  CHECK(select_actions(table, "Bottle", "juice_cap", ArticulationKind::revolute,
                       "closed") == std::vector<std::string>{"uncap", "rotate"});
  CHECK(select_actions(table, "Thermos", "juice_cap", ArticulationKind::revolute,
                       "closed") == std::vector<std::string>{"cap"});

  // A rule with a joint kind never matches the other kind.
  CHECK(select_actions(table, "Bottle", "juice_cap", ArticulationKind::prismatic,
                       "closed") == std::vector<std::string>{"slide_in", "slide_out"});
}

TEST_CASE("remote skill selection round-trips over HTTP") {
  httplib::Server server;
  nlohmann::json last_request;
  server.Post("/skills", [&](const httplib::Request& req, httplib::Response& res) {
    last_request = nlohmann::json::parse(req.body);
    nlohmann::json reply;
    reply["tasks"] = {{{"task", "open the door"},
                       {"actions", {"flap_open", "StatusComplete"}}}};
    res.set_content(reply.dump(), "application/json");
  });
  server.Post("/bad-skill", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"tasks":[{"task":"x","actions":["fly"]}]})",
                    "application/json");
  });
  server.Post("/not-json", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("garbage", "text/plain");
  });
  server.Post("/no-tasks", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"answer":[]})", "application/json");
  });
  server.Post("/error", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  });

  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);

  SUBCASE("well-formed reply") {
    const std::vector<LinkStateQuery> links = {
        {"door", ArticulationKind::revolute, "closed"}};
    const auto tasks =
        remote_select_tasks(base + "/skills", "Microwave", links, {"approach"});
    REQUIRE(tasks.size() == 1);
    CHECK(tasks[0].task == "open the door");
    CHECK(tasks[0].actions ==
          std::vector<std::string>{"flap_open", "StatusComplete"});

    CHECK(last_request["category"] == "Microwave");
    REQUIRE(last_request["links"].size() == 1);
    CHECK(last_request["links"][0]["name"] == "door");
    CHECK(last_request["links"][0]["joint"] == "revolute");
    CHECK(last_request["links"][0]["state"] == "closed");
    CHECK(last_request["history"][0] == "approach");
  }

  SUBCASE("unknown skill in the reply is a validation error") {
    try {
      remote_select_tasks(base + "/bad-skill", "X", {}, {});
      FAIL_CHECK("expected a validation error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::validation);
    }
  }

  SUBCASE("protocol violations are transport errors") {
    for (const char* path : {"/not-json", "/no-tasks", "/error"}) {
      try {
        remote_select_tasks(base + path, "X", {}, {});
        FAIL_CHECK("expected a transport error for " << path);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::transport);
      }
    }
  }

  server.stop();
  worker.join();
}

TEST_CASE("an unreachable skill service is a transport error") {
  try {
    remote_select_tasks("http://127.0.0.1:9/skills", "X", {}, {});
    FAIL_CHECK("expected a transport error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::transport);
  }
}
