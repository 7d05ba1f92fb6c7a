#ifndef REPLYWATCH_ERRORS_HPP
#define REPLYWATCH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace replywatch {

// Bad user input: malformed files, unknown enum values, violated
// preconditions. The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON or CSV. `offset` is the byte offset within the offending
// line (JSON) or the 1-based line number (CSV), depending on the source.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A required field is missing or has the wrong type.
class FieldError : public InputError {
 public:
  explicit FieldError(std::string field)
      : InputError("missing or invalid field '" + field + "'"),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class TimestampError : public InputError {
 public:
  using InputError::InputError;
};

// Report destination cannot be written. Exit code 2.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace replywatch

#endif  // REPLYWATCH_ERRORS_HPP
