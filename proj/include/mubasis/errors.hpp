#pragma once

#include <stdexcept>
#include <string>

namespace mubasis {

// Input violates a documented precondition (bad parametrization, non-unimodular
// matrix, parse error, ...).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result failed its own exact certificate check. Indicates a bug.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized procedure exhausted its retry budget.
class AlgorithmFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mubasis
