#ifndef FPTIME_ERRORS_HPP_
#define FPTIME_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fptime {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The formula is undefined at the critical rate c = c*.
class CriticalRateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// A series did not reach its tail bound within the term budget.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class NoBracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace fptime

#endif  // FPTIME_ERRORS_HPP_
