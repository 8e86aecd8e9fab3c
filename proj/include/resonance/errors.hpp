#pragma once

#include <stdexcept>
#include <string>

// Error kinds shared by every module. Argument validation uses
// std::invalid_argument / std::out_of_range / std::domain_error directly;
// the types below cover the conditions the standard hierarchy has no name for.
namespace resonance {

// All-zero coefficient vectors, S2 = 0 and similar.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a sieve / enumeration / matrix budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero scan could not be certified complete after all refinements.
class IncompleteScan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A zero cache does not cover the requested neighbourhood.
class NeedsScan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |zeta'(rho)| too small to divide by; possibly a multiple zero.
class FlaggedMultiplicity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace resonance
