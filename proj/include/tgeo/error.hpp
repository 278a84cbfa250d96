#pragma once

#include <stdexcept>
#include <string>

namespace tgeo {

/// Contract violation on caller-supplied data (bad input file, invalid
/// point index, degenerate basis, ...). The CLI maps this to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Violation of an internal postcondition (an invariant the library itself
/// is responsible for). The CLI maps this to exit code 3.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tgeo
