#ifndef LOCFACT_ERRORS_HPP
#define LOCFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace locfact {

// Failure taxonomy for the whole engine.  Every throw site picks the one kind
// that names the broken precondition; nothing is thrown as a bare std::*.
enum class Err {
  PrecisionExhausted,
  DivisionByZero,
  DomainError,
  NoExtension,
  PoleError,
  UnsupportedTestFunction,
  CrossCheckFailure,
  NoStabilization,
  TailNotResolved,
  SingularParameter,
  GaloisStabilityViolation,
  RationalityFailure,
  RestrictionMismatch,
  DegenerateGamma,
  StabilizationFailure,
  HypothesisViolation,
  EpsilonNotSign,
  ConfigError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool ok, Err kind, const std::string& msg) {
  if (!ok) fail(kind, msg);
}

}  // namespace locfact

#endif
