#pragma once

#include <stdexcept>
#include <string>

namespace akgeo {

// Error taxonomy shared by the whole engine. The CLI maps these to exit
// codes: bad input (DomainError, unknown chart, malformed params) -> 2,
// internal construction failures (StructureError, ConstructionError,
// OrderError, SingularJetError) -> 3.

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularJetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a frame solve leaves a condition residual above tolerance.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& condition, double residual)
      : std::runtime_error("frame construction failed: condition '" + condition +
                           "' residual " + std::to_string(residual)),
        condition_(condition),
        residual_(residual) {}

  const std::string& condition() const { return condition_; }
  double residual() const { return residual_; }

 private:
  std::string condition_;
  double residual_;
};

}  // namespace akgeo
