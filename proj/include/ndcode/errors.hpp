#pragma once

#include <stdexcept>
#include <string>

namespace ndcode {

// Thrown when a received word cannot be explained by the channel model a
// decoder was built for (no consistent syndrome branch, failed final
// membership check, classifier row miss, ...).
struct DecodeError : std::runtime_error {
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an enumeration (descendant cones, codebook construction,
// verification sweeps) would exceed its node budget.
struct EnumerationLimitError : std::runtime_error {
  explicit EnumerationLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ndcode
