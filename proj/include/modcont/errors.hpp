#pragma once

#include <stdexcept>
#include <string>

namespace modcont {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveDiffusivity : std::runtime_error {
  explicit NonPositiveDiffusivity(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureFailure : std::runtime_error {
  explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NoRootError : std::runtime_error {
  explicit NoRootError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRangeError : std::runtime_error {
  explicit OutOfRangeError(const std::string& what) : std::runtime_error(what) {}
};

struct PeriodMismatch : std::runtime_error {
  explicit PeriodMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
  explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct BoundaryNonzero : std::runtime_error {
  explicit BoundaryNonzero(const std::string& what) : std::runtime_error(what) {}
};

struct SandwichFailure : std::runtime_error {
  explicit SandwichFailure(const std::string& what) : std::runtime_error(what) {}
};

struct TimeNotSampled : std::runtime_error {
  explicit TimeNotSampled(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct CoefficientFloorViolated : std::runtime_error {
  explicit CoefficientFloorViolated(const std::string& what) : std::runtime_error(what) {}
};

// Field left the representable range; the solver aborts and reports the time.
struct BlowUpError : std::runtime_error {
  double time;
  BlowUpError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
};

}  // namespace modcont
