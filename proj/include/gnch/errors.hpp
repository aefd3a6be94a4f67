#pragma once

#include <stdexcept>
#include <string>

namespace gnch {

enum class ErrorKind {
  Param,
  Domain,
  Index,
  Singular,
  TurningPoint,
  BranchCrossing,
  Convergence,
  InvalidState,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parameters outside the supported family (e.g. exact mode with 2s/r not an integer).
struct ParamError : Error {
  explicit ParamError(const std::string& w) : Error(ErrorKind::Param, w) {}
};

/// A closed form left the reals (log of a non-positive number, negative base
/// raised to a fractional power).
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct IndexError : Error {
  explicit IndexError(const std::string& w) : Error(ErrorKind::Index, w) {}
};

struct SingularError : Error {
  explicit SingularError(const std::string& w) : Error(ErrorKind::Singular, w) {}
};

struct InvalidStateError : Error {
  explicit InvalidStateError(const std::string& w) : Error(ErrorKind::InvalidState, w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorKind::Convergence, w) {}
};

struct BranchCrossingError : Error {
  explicit BranchCrossingError(const std::string& w) : Error(ErrorKind::BranchCrossing, w) {}
};

/// Raised when an integrated or reconstructed state degenerates. Carries the
/// last time at which the state was valid and the bracketed singular time.
class TurningPointError : public Error {
 public:
  TurningPointError(const std::string& w, double last_valid_t, double singular_t)
      : Error(ErrorKind::TurningPoint, w),
        last_valid_t_(last_valid_t),
        singular_t_(singular_t) {}
  double last_valid_t() const noexcept { return last_valid_t_; }
  double singular_t() const noexcept { return singular_t_; }

 private:
  double last_valid_t_;
  double singular_t_;
};

}  // namespace gnch
