#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace freenc {

/// Bad argument shapes/values (mismatched d, bad sizes, out-of-range indices).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Half-open byte range into an expression source string.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Expression text failed to parse.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& msg)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

  private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// An inverse required during evaluation does not exist. Carries the source
/// span of the failing subexpression when the function came from parsed text.
class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& msg, Span span = {})
        : std::runtime_error(msg), span_(span) {}

    Span span() const { return span_; }

  private:
    Span span_;
};

/// A requested coefficient/entry is not available.
class LookupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A documented operation precondition does not hold.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace freenc
