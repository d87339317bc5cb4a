#pragma once

#include <stdexcept>
#include <string>

namespace fsp {

enum class ErrorCode {
  invalid_argument,
  out_of_bounds,
  dims_too_small,
  empty_obstacle_set,
  endpoint_occupied,
  zero_length_segment,
  not_a_neighbour,
  no_valid_pair,
  parse_error,
  io_error,
  format_error,
  internal,
};

const char* to_string(ErrorCode code);

/// Contract and I/O failures raised by the library. `code` lets the CLI map
/// failures to exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Point-cloud parse failure; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fsp
