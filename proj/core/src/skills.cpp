#include "a3kit/skills.hpp"

#include <algorithm>
#include <cctype>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "a3kit/error.hpp"

namespace a3kit {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

bool pattern_matches(const std::string& pattern, const std::string& value) {
  if (pattern == "*") return true;
  return to_lower(value).find(to_lower(pattern)) != std::string::npos;
}

}  // namespace

const char* articulation_kind_name(ArticulationKind kind) {
  return kind == ArticulationKind::revolute ? "revolute" : "prismatic";
}

const std::vector<std::string>& skill_library() {
  static const std::vector<std::string> skills = {
      "slide_open", "slide_close", "flap_open", "flap_close", "cap",
      "uncap",      "pick",        "place",     "slide_in",   "slide_out",
      "wipe",       "press",       "rotate",    "StatusComplete"};
  return skills;
}

bool is_known_skill(const std::string& name) {
  const auto& lib = skill_library();
  return std::find(lib.begin(), lib.end(), name) != lib.end();
}

std::string joint_state_name(double value, double lower, double upper) {
  const double travel = upper - lower;
  if (travel <= 0.0) return "closed";
  const double frac = (value - lower) / travel;
  if (frac <= 0.1) return "closed";
  if (frac >= 0.9) return "open";
  return "partially_open";
}

SkillRuleTable default_skill_rules() {
  SkillRuleTable table;
  auto add = [&table](const char* category, const char* link,
                      std::optional<ArticulationKind> joint, const char* state,
                      std::vector<std::string> actions) {
    table.rules.push_back(
        {category, link, joint, state, std::move(actions)});
  };
  const auto rev = ArticulationKind::revolute;
  const auto pri = ArticulationKind::prismatic;

  add("*", "cap", rev, "*", {"cap", "uncap", "rotate"});
  add("*", "knob", rev, "*", {"rotate"});
  add("*", "button", pri, "*", {"press"});
  add("*", "drawer", pri, "closed", {"slide_out"});
  add("*", "drawer", pri, "open", {"slide_in"});
  add("*", "drawer", pri, "*", {"slide_out", "slide_in"});
  add("*", "tray", pri, "*", {"slide_out", "slide_in"});
  add("*", "door", rev, "closed", {"flap_open"});
  add("*", "door", rev, "open", {"flap_close"});
  add("*", "door", rev, "*", {"flap_close"});
  add("*", "door", pri, "closed", {"slide_open"});
  add("*", "door", pri, "open", {"slide_close"});
  add("*", "door", pri, "*", {"slide_open", "slide_close"});
  add("*", "lid", rev, "closed", {"flap_open"});
  add("*", "lid", rev, "open", {"flap_close"});
  add("*", "lid", rev, "*", {"flap_open", "flap_close"});
  add("*", "flap", rev, "closed", {"flap_open"});
  add("*", "flap", rev, "open", {"flap_close"});
  add("*", "flap", rev, "*", {"flap_open", "flap_close"});
  add("*", "blade", rev, "*", {"flap_open", "flap_close"});
  return table;
}

std::vector<std::string> select_actions(const SkillRuleTable& table,
                                        const std::string& category,
                                        const std::string& link_name,
                                        ArticulationKind kind,
                                        const std::string& state) {
  for (const SkillRule& rule : table.rules) {
    if (rule.joint && *rule.joint != kind) continue;
    if (!pattern_matches(rule.category, category)) continue;
    if (!pattern_matches(rule.link, link_name)) continue;
    // State names are a closed vocabulary where one is a substring of
    // another ("open", "partially_open"), so states match exactly.
    if (rule.state != "*" && to_lower(rule.state) != to_lower(state)) continue;
    return rule.actions;
  }
  if (kind == ArticulationKind::prismatic) return {"slide_in", "slide_out"};
  return {"flap_open", "flap_close"};
}

std::vector<SkillTask> remote_select_tasks(
    const std::string& endpoint, const std::string& category,
    const std::vector<LinkStateQuery>& links,
    const std::vector<std::string>& history) {
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
  request["category"] = category;
  request["links"] = nlohmann::json::array();
  for (const auto& link : links) {
    request["links"].push_back({{"name", link.name},
                                {"joint", articulation_kind_name(link.joint)},
                                {"state", link.state}});
  }
  request["history"] = history;

  httplib::Client client(base);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(10, 0);
  auto res = client.Post(path, request.dump(), "application/json");
  if (!res) {
    throw Error(ErrorKind::transport,
                "skill service unreachable at " + endpoint);
  }
  if (res->status != 200) {
    throw Error(ErrorKind::transport, "skill service returned status " +
                                          std::to_string(res->status));
  }

  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::transport,
                std::string("skill service sent invalid JSON: ") + e.what());
  }
  if (!reply.contains("tasks") || !reply["tasks"].is_array()) {
    throw Error(ErrorKind::transport,
                "skill service reply lacks a tasks array");
  }

  std::vector<SkillTask> tasks;
  for (const auto& entry : reply["tasks"]) {
    SkillTask task;
    task.task = entry.value("task", "");
    for (const auto& action : entry.value("actions", nlohmann::json::array())) {
      const std::string name = action.get<std::string>();
      if (!is_known_skill(name)) {
        throw Error(ErrorKind::validation,
                    "skill service proposed unknown skill: " + name);
      }
      task.actions.push_back(name);
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

}  // namespace a3kit
