#pragma once

#include "dgldpc/ensemble.hpp"
#include "dgldpc/spectral.hpp"

namespace dgldpc {

/// h(x) = -x log x - (1-x) log(1-x) in nats, with h(0) = h(1) = 0.
double binary_entropy(double x);

/// f(z) = int_rho * sum_t gamma_t z A_t'(z) / A_t(z) for a check-hybrid ensemble
/// (every VN a repetition code of one common length). Range [0, m_bar).
double f_eval(const Ensemble& e, double z);

/// Unique z >= 0 with f(z) = alpha, |f(z) - alpha| < 1e-13. Requires 0 <= alpha < m_bar.
double f_inverse(const Ensemble& e, double alpha);

/// Closed-form spectral shape of a check-hybrid ensemble:
/// (1-q) h(a) - q a log f^{-1}(a) + q int_rho sum_t gamma_t log A_t(f^{-1}(a)).
double checkhybrid_growth_rate(const Ensemble& e, double alpha);

/// Same closed form for a single CN code with enumerator `a` and length-q repetition VNs,
/// with f(z) = z A'(z) / (s A(z)). Independent of the Ensemble machinery.
double tanner_growth_rate(int q, const WeightEnumerator& a, double alpha);
double tanner_f_inverse(const WeightEnumerator& a, double alpha);

struct CardanoRoot {
  double z = 0.0;
  double discriminant = 0.0;  // rho^3 + mu^2
  double mu = 0.0;
};

/// f^{-1}(alpha) for the (3,6) regular LDPC ensemble via the trigonometric cubic formula.
/// Throws DomainError when the discriminant is not negative.
CardanoRoot cardano_f_inverse_36(double alpha);

struct SymmetryReport {
  bool all_cn_symmetric = false;
  double m_bar = 0.0;
  double max_deviation = 0.0;  // max |G(m_bar - a) - G(a)| over the grid
  int compared = 0;
  /// False only when every CN enumerator is symmetric but the deviation exceeds 1e-9.
  bool consistent = true;
};

/// Compares each curve point with the closed form evaluated at the reflected weight m_bar - alpha.
SymmetryReport symmetry_report(const SpectralCurve& c, const Ensemble& e);

}  // namespace dgldpc
