#pragma once

#include <array>
#include <string>
#include <vector>

#include "a3kit/annotation.hpp"

namespace a3kit {

// Frozen answer text grammar. Coordinates are printed with two decimals,
// rounded half away from zero; tuples carry no inner whitespace and are
// joined with ", " inside bracketed lists. See docs/schema.md.
inline constexpr const char* kAnswerGrammarVersion = "v1";

enum class TaskKind { detection, rec_link, reg_joint, rec_action };

const char* task_name(TaskKind task);
TaskKind task_from_name(const std::string& name);

std::string format_coordinate(double value);
std::string format_point(const NormalizedPoint3& p);
std::string format_box_text(const std::array<NormalizedPoint3, 8>& vertices);
std::string format_axis_text(const std::array<NormalizedPoint3, 2>& endpoints);

struct TriadText {
  std::string bbox;
  std::string axis;
  std::string label;
};

TriadText format_triad_text(const Triad& triad);

// Prompt and answer templates for the four sub-tasks.
std::string detection_prompt();
std::string detection_answer(const std::vector<Triad>& triads);
std::string rec_link_prompt(const std::string& link_name);
std::string rec_link_answer(const Triad& triad);
std::string reg_joint_prompt_with_box(const Triad& triad);
std::string reg_joint_prompt_with_name(const std::string& link_name);
std::string reg_joint_answer(const Triad& triad);
std::string rec_action_prompt(const std::string& instruction);
std::string rec_action_answer(const Triad& triad, const std::string& action);

// Natural-language command realizing one skill on one link, used as the
// REC-Action instruction.
std::string action_instruction(const std::string& action,
                               const std::string& link_name);

// Link name with underscores replaced by spaces, for prose templates.
std::string humanize_link_name(const std::string& link_name);

}  // namespace a3kit
