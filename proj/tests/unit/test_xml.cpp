#include <doctest.h>

#include "a3kit/error.hpp"
#include "a3kit/xml.hpp"

using namespace a3kit;

TEST_CASE("parse_xml builds the element tree with attributes and text") {
  const XmlNode root = parse_xml(
      "<robot name=\"arm\">\n"
      "  <link name=\"base\"/>\n"
      "  <link name=\"tool\"><visual/></link>\n"
      "  <note>  hello </note>\n"
      "</robot>\n");

  CHECK(root.name == "robot");
  REQUIRE(root.attribute("name") != nullptr);
  CHECK(*root.attribute("name") == "arm");
  CHECK(root.attribute("missing") == nullptr);

  const auto links = root.children_named("link");
  REQUIRE(links.size() == 2);
  CHECK(*links[0]->attribute("name") == "base");
  CHECK(*links[1]->attribute("name") == "tool");
  CHECK(links[1]->child("visual") != nullptr);
  CHECK(links[0]->child("visual") == nullptr);

  REQUIRE(root.child("note") != nullptr);
  CHECK(root.child("note")->text.find("hello") != std::string::npos);
}

TEST_CASE("parse_xml records line and column positions") {
  const XmlNode root = parse_xml("<a>\n  <b/>\n</a>");
  CHECK(root.line == 1);
  REQUIRE(root.child("b") != nullptr);
  CHECK(root.child("b")->line == 2);
  CHECK(root.child("b")->column > 1);
}

TEST_CASE("parse_xml decodes standard entities") {
  const XmlNode root = parse_xml("<v s=\"a&amp;b\">1 &lt; 2</v>");
  CHECK(*root.attribute("s") == "a&b");
  CHECK(root.text.find("1 < 2") != std::string::npos);
}

TEST_CASE("malformed XML raises a parse error naming the position") {
  auto check_throws = [](const std::string& text) {
    try {
      parse_xml(text);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  };
  check_throws("<a><b></a>");
  check_throws("<a attr></a>");
  check_throws("not xml at all");
  check_throws("");
  check_throws("<a/><b/>");  // two roots
}

TEST_CASE("mismatched closing tag error points at the offending line") {
  try {
    parse_xml("<a>\n<b>\n</c>\n</a>");
    FAIL_CHECK("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
  }
}
