#pragma once

#include <optional>
#include <string>
#include <vector>

namespace a3kit {

// Articulation families used by annotations; continuous joints count as
// revolute.
enum class ArticulationKind { revolute, prismatic };

const char* articulation_kind_name(ArticulationKind kind);

// The 14 robot skills. Every action emitted anywhere must come from this set.
const std::vector<std::string>& skill_library();
bool is_known_skill(const std::string& name);

// Coarse link state from the joint value: "closed" within the first 10% of
// travel, "open" within the last 10%, "partially_open" otherwise.
std::string joint_state_name(double value, double lower, double upper);

// One row of the affordance table. Category, link, and state are patterns:
// "*" matches anything, otherwise case-insensitive substring containment.
// A missing joint kind matches both kinds. First matching rule wins.
struct SkillRule {
  std::string category;
  std::string link;
  std::optional<ArticulationKind> joint;
  std::string state;
  std::vector<std::string> actions;
};

struct SkillRuleTable {
  std::vector<SkillRule> rules;
};

SkillRuleTable default_skill_rules();

// Returns the first matching rule's actions. With no match, falls back to
// {slide_in, slide_out} for prismatic and {flap_open, flap_close} for
// revolute links.
std::vector<std::string> select_actions(const SkillRuleTable& table,
                                        const std::string& category,
                                        const std::string& link_name,
                                        ArticulationKind kind,
                                        const std::string& state);

// Remote affordance service. POSTs
//   {category, links: [{name, joint, state}], history: [...]}
// and expects {tasks: [{task, actions: [...]}]}. Throws a transport error on
// network or protocol failure, and a validation error if the reply names an
// unknown skill.
struct LinkStateQuery {
  std::string name;
  ArticulationKind joint;
  std::string state;
};

struct SkillTask {
  std::string task;
  std::vector<std::string> actions;
};

std::vector<SkillTask> remote_select_tasks(
    const std::string& endpoint, const std::string& category,
    const std::vector<LinkStateQuery>& links,
    const std::vector<std::string>& history);

}  // namespace a3kit
