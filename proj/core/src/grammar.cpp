#include "a3kit/grammar.hpp"

#include <cmath>
#include <cstdio>

#include "a3kit/error.hpp"

namespace a3kit {

const char* task_name(TaskKind task) {
  switch (task) {
    case TaskKind::detection:
      return "Detection";
    case TaskKind::rec_link:
      return "REC-Link";
    case TaskKind::reg_joint:
      return "REG-Joint";
    case TaskKind::rec_action:
      return "REC-Action";
  }
  return "Detection";
}

TaskKind task_from_name(const std::string& name) {
  if (name == "Detection") return TaskKind::detection;
  if (name == "REC-Link") return TaskKind::rec_link;
  if (name == "REG-Joint") return TaskKind::reg_joint;
  if (name == "REC-Action") return TaskKind::rec_action;
  throw Error(ErrorKind::lookup, "unknown task name: " + name);
}

std::string format_coordinate(double value) {
  long cents = std::lround(value * 100.0);
  const bool negative = cents < 0;
  if (negative) cents = -cents;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%ld.%02ld", negative ? "-" : "",
                cents / 100, cents % 100);
  return buf;
}

std::string format_point(const NormalizedPoint3& p) {
  return "(" + format_coordinate(p.u) + "," + format_coordinate(p.v) + "," +
         format_coordinate(p.z) + ")";
}

namespace {

template <std::size_t N>
std::string format_point_list(const std::array<NormalizedPoint3, N>& points) {
  std::string out = "[";
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) out += ", ";
    out += format_point(points[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string format_box_text(const std::array<NormalizedPoint3, 8>& vertices) {
  return format_point_list(vertices);
}

std::string format_axis_text(
    const std::array<NormalizedPoint3, 2>& endpoints) {
  return format_point_list(endpoints);
}

TriadText format_triad_text(const Triad& triad) {
  TriadText text;
  text.bbox = format_box_text(triad.box_norm);
  text.axis = format_axis_text(triad.axis_norm);
  text.label = triad.label.link_name + " (" +
               articulation_kind_name(triad.label.joint_kind) + ")";
  if (!triad.label.actions.empty()) {
    text.label += ":";
    for (std::size_t i = 0; i < triad.label.actions.size(); ++i) {
      text.label += (i == 0 ? " " : ", ") + triad.label.actions[i];
    }
  }
  return text;
}

std::string detection_prompt() {
  return "Detect all manipulable object parts and provide their 3D bounding "
         "boxes.";
}

std::string detection_answer(const std::vector<Triad>& triads) {
  std::string out;
  if (triads.size() == 1) {
    out = "There is 1 manipulable object part with its 3d bounding box: ";
  } else {
    out = "There are " + std::to_string(triads.size()) +
          " manipulable object parts with their 3d bounding boxes: ";
  }
  for (std::size_t i = 0; i < triads.size(); ++i) {
    if (i > 0) out += "; ";
    out += triads[i].link + " " + format_box_text(triads[i].box_norm);
  }
  out += ".";
  return out;
}

std::string rec_link_prompt(const std::string& link_name) {
  return "Please provide the 3D bounding box of the region this sentence "
         "describes: " +
         humanize_link_name(link_name) + ".";
}

std::string rec_link_answer(const Triad& triad) {
  return format_box_text(triad.box_norm);
}

std::string reg_joint_prompt_with_box(const Triad& triad) {
  return "Please provide the joint's type and its 3D axis linked to the "
         "object part: " +
         format_box_text(triad.box_norm) + ".";
}

std::string reg_joint_prompt_with_name(const std::string& link_name) {
  return "Please provide the joint's type and its 3D axis linked to the "
         "object part: " +
         humanize_link_name(link_name) + ".";
}

std::string reg_joint_answer(const Triad& triad) {
  return std::string("Joint type ") +
         articulation_kind_name(triad.label.joint_kind) + " and its Axis " +
         format_axis_text(triad.axis_norm) + ".";
}

std::string rec_action_prompt(const std::string& instruction) {
  return "Please execute the task described with 3D rotated bounding box "
         "representations by the following instruction: " +
         instruction;
}

std::string rec_action_answer(const Triad& triad, const std::string& action) {
  return "Action type " + action + " and targeted object's BBox " +
         format_box_text(triad.box_norm) + ".";
}

std::string action_instruction(const std::string& action,
                               const std::string& link_name) {
  const std::string noun = humanize_link_name(link_name);
  if (action == "slide_open") return "Slide the " + noun + " open.";
  if (action == "slide_close") return "Slide the " + noun + " closed.";
  if (action == "flap_open") return "Open the " + noun + ".";
  if (action == "flap_close") return "Close the " + noun + ".";
  if (action == "cap") return "Put the " + noun + " back on.";
  if (action == "uncap") return "Take the " + noun + " off.";
  if (action == "pick") return "Pick up the " + noun + ".";
  if (action == "place") return "Put the " + noun + " down.";
  if (action == "slide_in") return "Push the " + noun + " in.";
  if (action == "slide_out") return "Pull the " + noun + " out.";
  if (action == "wipe") return "Wipe the " + noun + ".";
  if (action == "press") return "Press the " + noun + ".";
  if (action == "rotate") return "Turn the " + noun + ".";
  if (action == "StatusComplete")
    return "Confirm the " + noun + " task is complete.";
  return action + " the " + noun + ".";
}

std::string humanize_link_name(const std::string& link_name) {
  std::string out = link_name;
  for (char& c : out) {
    if (c == '_') c = ' ';
  }
  return out;
}

}  // namespace a3kit
