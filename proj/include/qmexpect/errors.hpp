#pragma once

#include <stdexcept>
#include <string>

namespace qmexpect {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable name of the error kind ("DomainError", ...).
  virtual const char* kind() const noexcept { return "Error"; }
};

#define QMEXPECT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  };

QMEXPECT_DEFINE_ERROR(DomainError)
QMEXPECT_DEFINE_ERROR(NoConvergence)
QMEXPECT_DEFINE_ERROR(NoSuchBranch)
QMEXPECT_DEFINE_ERROR(NoBoundState)
QMEXPECT_DEFINE_ERROR(UnsupportedOrder)
QMEXPECT_DEFINE_ERROR(TruncationTooSmall)
QMEXPECT_DEFINE_ERROR(WrongDomain)
QMEXPECT_DEFINE_ERROR(DivergentMoment)

#undef QMEXPECT_DEFINE_ERROR

}  // namespace qmexpect
