#pragma once

#include <stdexcept>
#include <string>

namespace capgeo {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad or unreadable input data (record files, fixture schemas, traces).
class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(what) {}
};

// Misuse of an API or the command line.
class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

enum class NotationErrc {
  Syntax,           // line does not follow the keypoint grammar
  Arity,            // wrong subject/label count or subject kind for a relation/entity
  UnknownRelation,  // relation name outside the closed taxonomy
};

// Error in keypoint notation or keypoint construction. `line` is 1-based
// when the error comes from parsing a document, 0 otherwise.
class NotationError : public Error {
public:
  NotationError(NotationErrc code, const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        code_(code),
        message_(message),
        line_(line) {}

  NotationErrc code() const { return code_; }
  const std::string& message() const { return message_; }
  int line() const { return line_; }

  NotationError at_line(int line) const { return NotationError(code_, message_, line); }

private:
  NotationErrc code_;
  std::string message_;
  int line_;
};

}  // namespace capgeo
