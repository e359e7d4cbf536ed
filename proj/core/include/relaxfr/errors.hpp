#pragma once

#include <stdexcept>
#include <string>

namespace relaxfr {

/// Raised when a physical state leaves the admissible set (rho <= 0 or p <= 0
/// for Euler). `element` and `stage` are -1 when not applicable.
class AdmissibilityError : public std::runtime_error {
 public:
  explicit AdmissibilityError(const std::string& what, int element = -1,
                              int stage = -1)
      : std::runtime_error(what), element_(element), stage_(stage) {}

  int element() const noexcept { return element_; }
  int stage() const noexcept { return stage_; }

 private:
  int element_;
  int stage_;
};

/// NaN or Inf appeared in the solution.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what, int element = -1)
      : std::runtime_error(what), element_(element) {}

  int element() const noexcept { return element_; }

 private:
  int element_;
};

}  // namespace relaxfr
