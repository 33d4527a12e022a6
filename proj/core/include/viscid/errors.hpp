#pragma once

#include <stdexcept>
#include <string>

namespace viscid {

/// Evaluation outside the domain where a quantity is defined (t > 0,
/// out-of-window times, the preshock point for singular quantities).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative method failed to converge. For valid inputs this indicates a bug.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A configuration violates a documented invariant (resolution, ranges, sizes).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A time integration produced non-finite values.
class InstabilityError : public std::runtime_error {
 public:
  explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A lookup fell outside the stored data (grid window, slab box, stencil).
class CoverageError : public std::out_of_range {
 public:
  explicit CoverageError(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace viscid
