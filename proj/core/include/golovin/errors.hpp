#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace golovin {

// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(source), line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// A caller broke an operation's precondition.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The game backend could not be started or stopped responding.
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace golovin
