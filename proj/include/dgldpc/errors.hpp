#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace dgldpc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator matrix or enumerator violates a local-code invariant.
class InvalidCode : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the supported size.
class EnumerationBound : public Error {
 public:
  using Error::Error;
};

/// Ensemble construction failed. `type_index` is -1 when the failure is not tied to one node type.
class EnsembleError : public Error {
 public:
  EnsembleError(const std::string& what, int type_index = -1)
      : Error(what), type_index_(type_index) {}
  int type_index() const noexcept { return type_index_; }

 private:
  int type_index_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NotCheckHybrid : public Error {
 public:
  using Error::Error;
};

/// Newton iteration failed; carries the target alpha and the last iterate (x0, y0, z0).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double alpha, std::array<double, 3> last)
      : Error(what), alpha_(alpha), last_(last) {}
  double alpha() const noexcept { return alpha_; }
  const std::array<double, 3>& last_iterate() const noexcept { return last_; }

 private:
  double alpha_;
  std::array<double, 3> last_;
};

/// Growth classification sits on the C*V = 1 boundary, where the sign of G'(0+) is undetermined.
class ClassifierInconclusive : public Error {
 public:
  using Error::Error;
};

/// The small-alpha expansion has no alpha*log(alpha) term (T = 0).
class ExpansionUnavailable : public Error {
 public:
  using Error::Error;
};

/// A finite-length instance needs integral node counts; `minimal_n` is the smallest admissible VN count.
class IntegralityError : public Error {
 public:
  IntegralityError(const std::string& what, long minimal_n) : Error(what), minimal_n_(minimal_n) {}
  long minimal_n() const noexcept { return minimal_n_; }

 private:
  long minimal_n_;
};

}  // namespace dgldpc
