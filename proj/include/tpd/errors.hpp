#pragma once

#include <stdexcept>
#include <string>

namespace tpd {

// Input text could not be parsed at all (syntax level).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input parsed but violates a documented contract (duplicate ids, degenerate
// rectangles, missing process parameters, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computed result violated an internal invariant.  Always a bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace tpd
