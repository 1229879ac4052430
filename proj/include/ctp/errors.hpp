#ifndef CTP_ERRORS_HPP_
#define CTP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ctp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance or family violates its invariants (budgets, free path, costs).
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// A parameter (epsilon, k, cost constant) is outside the permitted range.
class RangeError : public Error {
 public:
  using Error::Error;
};

class MalformedPathError : public Error {
 public:
  using Error::Error;
};

// A strategy broke the online information model, e.g. walked onto an edge
// it already knew to be blocked.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// OPT is zero, so ALG/OPT is not defined.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

// Strategy/instance/mode combination that the callee does not support.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Oracle input too large to enumerate exactly.
class SizeError : public Error {
 public:
  using Error::Error;
};

// LP with no feasible distribution (e.g. consistency target unreachable).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctp

#endif  // CTP_ERRORS_HPP_
