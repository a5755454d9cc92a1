#include "a3kit/xml.hpp"

#include <expat.h>

#include <cstring>
#include <memory>

#include "a3kit/error.hpp"

namespace a3kit {

const std::string* XmlNode::attribute(const std::string& key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const XmlNode* XmlNode::child(const std::string& child_name) const {
  for (const auto& c : children) {
    if (c.name == child_name) return &c;
  }
  return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(
    const std::string& child_name) const {
  std::vector<const XmlNode*> out;
  for (const auto& c : children) {
    if (c.name == child_name) out.push_back(&c);
  }
  return out;
}

namespace {

struct ParseState {
  XmlNode root;
  std::vector<XmlNode*> stack;
  XML_Parser parser = nullptr;
  bool saw_root = false;
};

void start_element(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* st = static_cast<ParseState*>(user);
  XmlNode node;
  node.name = name;
  node.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
  node.column = static_cast<int>(XML_GetCurrentColumnNumber(st->parser)) + 1;
  for (int i = 0; attrs[i]; i += 2) {
    node.attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  if (st->stack.empty()) {
    st->root = std::move(node);
    st->saw_root = true;
    st->stack.push_back(&st->root);
  } else {
    XmlNode* parent = st->stack.back();
    parent->children.push_back(std::move(node));
    st->stack.push_back(&parent->children.back());
  }
}

void end_element(void* user, const XML_Char*) {
  auto* st = static_cast<ParseState*>(user);
  st->stack.pop_back();
}

void character_data(void* user, const XML_Char* s, int len) {
  auto* st = static_cast<ParseState*>(user);
  if (!st->stack.empty()) st->stack.back()->text.append(s, len);
}

}  // namespace

XmlNode parse_xml(const std::string& text) {
  XML_Parser parser = XML_ParserCreate(nullptr);
  std::unique_ptr<void, void (*)(void*)> guard(
      parser, [](void* p) { XML_ParserFree(static_cast<XML_Parser>(p)); });

  ParseState state;
  state.parser = parser;
  XML_SetUserData(parser, &state);
  XML_SetElementHandler(parser, start_element, end_element);
  XML_SetCharacterDataHandler(parser, character_data);

  if (XML_Parse(parser, text.data(), static_cast<int>(text.size()), 1) ==
      XML_STATUS_ERROR) {
    const long line = XML_GetCurrentLineNumber(parser);
    const long column = XML_GetCurrentColumnNumber(parser) + 1;
    throw Error(ErrorKind::parse,
                "XML parse error at line " + std::to_string(line) +
                    ", column " + std::to_string(column) + ": " +
                    XML_ErrorString(XML_GetErrorCode(parser)));
  }
  if (!state.saw_root) {
    throw Error(ErrorKind::parse, "XML parse error: document has no element");
  }
  return std::move(state.root);
}

}  // namespace a3kit
