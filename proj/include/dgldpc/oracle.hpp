#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "dgldpc/ensemble.hpp"

namespace dgldpc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Concrete sizes of one member of the ensemble.
struct FiniteInstance {
  long n = 0;  // VNs
  long m = 0;  // CNs
  long E = 0;  // edges
  std::vector<long> vn_counts;
  std::vector<long> cn_counts;
  long info_length = 0;  // N = sum_t n_t k_t
};

constexpr long kMaxOracleEdges = 512;

/// Instance with n VNs. Throws IntegralityError (carrying the minimal admissible n) when some
/// node count or the edge count is not an integer, and EnumerationBound when E > 512.
FiniteInstance make_instance(const Ensemble& e, long n);

/// Exact E[A_w] for w = 0..N over the ensemble's active enumerator kind.
class ExactProfile {
 public:
  ExactProfile(const Ensemble& e, const FiniteInstance& inst);

  const FiniteInstance& instance() const noexcept { return inst_; }
  long max_weight() const noexcept { return inst_.info_length; }
  const BigRational& expected(long w) const { return values_.at(static_cast<std::size_t>(w)); }
  const std::vector<BigRational>& values() const noexcept { return values_; }

  /// Sum of all E[A_w].
  BigRational total() const;

 private:
  FiniteInstance inst_;
  std::vector<BigRational> values_;
};

BigRational exact_expected_enumerator(const Ensemble& e, const FiniteInstance& inst, long w);

/// Expected total number of valid assignments, computed from the output-weight marginals only.
/// Must equal ExactProfile::total().
BigRational exact_expected_total(const Ensemble& e, const FiniteInstance& inst);

/// Natural log of a positive rational, accurate to double precision for any size.
double log_rational(const BigRational& r);

struct EmpiricalPoint {
  long n = 0;
  double target = 0.0;  // alpha * n
  long w_low = 0;       // positive-expectation weights bracketing target (equal when target is one)
  long w_high = 0;
  std::optional<double> exponent;  // empty when every E[A_w] near target is zero
};
/// (1/n) log E[A_{alpha n}]. When alpha n is not a weight with positive expectation (parity, or
/// not an integer), log E[A_w] is interpolated linearly between the nearest such weights on
/// either side; with only one side available that weight is used.
std::vector<EmpiricalPoint> empirical_growth(const Ensemble& e, const std::vector<long>& ns, double alpha);

}  // namespace dgldpc
