#pragma once

#include <stdexcept>
#include <string>

namespace polyauto {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

struct DominanceNotReached : Error {
  using Error::Error;
};

struct DegreeBudgetExceeded : Error {
  using Error::Error;
};

struct SectorViolation : Error {
  using Error::Error;
};

struct BranchViolation : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  using Error::Error;
};

}  // namespace polyauto
