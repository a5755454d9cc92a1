#pragma once

#include <string>
#include <utility>
#include <vector>

namespace a3kit {

// Minimal DOM over a streaming parse; enough for the URDF dialect.
struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;
  std::string text;
  int line = 0;
  int column = 0;

  const std::string* attribute(const std::string& key) const;
  const XmlNode* child(const std::string& child_name) const;
  std::vector<const XmlNode*> children_named(const std::string& child_name) const;
};

// Throws Error(ErrorKind::parse) with "line L, column C" on malformed input.
XmlNode parse_xml(const std::string& text);

}  // namespace a3kit
