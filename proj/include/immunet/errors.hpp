#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace immunet {

// Exit codes of the CLI. Library errors are mapped onto these in tools/.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 64,       // bad flags / arguments
  kExitDataFormat = 65,  // malformed input files
  kExitContract = 70,    // violated precondition or failed internal invariant
  kExitIo = 74,          // unwritable output
};

/// Malformed input data (edge lists, seed tables, report files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;  // 0 when not tied to a specific line
};

/// Violated precondition: out-of-range index, inconsistent argument sets, ...
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failed read/write of an output artifact.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace immunet
