#pragma once

#include <stdexcept>
#include <string>

namespace a3kit {

enum class ErrorKind {
  parse,        // malformed input text (XML, meshes, answer grammar)
  arity,        // coordinate list has the wrong tuple count for the task
  structure,    // joint graph is not a tree
  validation,   // document violates a URDF invariant (missing limits, ...)
  config,       // joint configuration incomplete
  geometry,     // degenerate geometric input (no mesh, parallel up vector, ...)
  domain,       // argument outside the documented domain
  not_movable,  // operation requires a movable link
  contact,      // no admissible contact point
  no_contact,   // attachment rejected (too far from the link surface)
  degenerate,   // zero-radius rotation, unparseable prediction, ...
  lookup,       // unknown fixture / link / joint name
  transport,    // remote endpoint unreachable or protocol violation
  io,           // file read/write failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace a3kit
