#pragma once

#include <stdexcept>
#include <string>

namespace curveflow {

// Caller-side contract violation: bad parameters, mismatched grids,
// incompatible right-hand sides, curves that need reparametrizing first.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The computation itself gave up: CFL violation, curvature blow-up,
// singular linear system.
class NumericalAbort : public std::runtime_error {
 public:
  explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace curveflow
