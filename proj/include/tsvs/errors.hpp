#pragma once

#include <stdexcept>
#include <string>

namespace tsvs {

// Domain error with a stable name. The CLI prints the name on stderr and
// exits 1; tests match on it.
class Error : public std::runtime_error {
  public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

  private:
    std::string name_;
};

// Input-syntax error. Carries the byte offset of the first offending
// character; the CLI exits 2.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

}  // namespace tsvs
