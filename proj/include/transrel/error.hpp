#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace transrel {

// Every failure raised by the library carries a stable machine-readable code
// (e.g. "MALFORMED_EDGE", "LENGTH_MISMATCH") next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Parser failure with a 1-based line number and, where meaningful, a 1-based
// item position within the line (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(std::string code, std::size_t line, std::size_t item,
             const std::string& message)
      : Error(std::move(code), locate(line, item) + message),
        line_(line),
        item_(item) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t item() const noexcept { return item_; }

 private:
  static std::string locate(std::size_t line, std::size_t item) {
    std::string out = "line " + std::to_string(line);
    if (item > 0) out += ", item " + std::to_string(item);
    return out + ": ";
  }

  std::size_t line_;
  std::size_t item_;
};

}  // namespace transrel
