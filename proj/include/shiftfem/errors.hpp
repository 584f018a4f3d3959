#pragma once

#include <stdexcept>
#include <string>

namespace shiftfem {

/// A coefficient assumption of a problem instance is violated.
class AssumptionError : public std::runtime_error {
 public:
  explicit AssumptionError(const std::string& what) : std::runtime_error(what) {}
};

/// The coercivity estimate is nonpositive.
class NonCoerciveError : public std::runtime_error {
 public:
  explicit NonCoerciveError(const std::string& what) : std::runtime_error(what) {}
};

/// Direct solve failed: singular factorization or residual out of tolerance.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace shiftfem
