#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgldpc/ensemble.hpp"

namespace dgldpc {

/// Solution of the spectral-shape system at one normalized weight alpha (per VN).
struct SpectralPoint {
  double alpha = 0.0;
  double x0 = 1.0;
  double y0 = 1.0;
  double z0 = 1.0;
  double beta = 0.0;
  double G = 0.0;
  /// Max relative residual of the four original equations, evaluated by plugging back.
  double residual = 0.0;
};

struct SpectralCurve {
  EnumeratorKind kind = EnumeratorKind::Weight;
  double alpha_max = 0.0;
  std::vector<SpectralPoint> points;  // ascending alpha
  /// Empty when the growth classifier is inconclusive or the search fails (see alpha_star_note).
  std::optional<double> alpha_star;
  std::string alpha_star_note;
  std::vector<double> stationary_alphas;
  std::optional<SpectralPoint> peak;
  /// Whether peak->G is at least every G on the grid. Only meaningful when peak is set.
  bool peak_is_grid_max = false;
  /// alpha intervals on which the stationary system has several solutions; G there is the
  /// largest of their values, so G' may jump inside such an interval.
  std::vector<std::pair<double, double>> multi_solution_ranges;
};

struct SolverOptions {
  double tolerance = 1e-11;  // on the log-residuals of the reduced 3x3 system
  int max_newton_iterations = 60;
  double min_step = 1e-8;        // smallest continuation step in log(alpha)
  double endpoint_guard = 1e-9;  // refuse alpha closer than this to 0 or alpha_max

  /// Defaults, with the tolerance taken from SPECTRAL_TOL when that is set.
  static SolverOptions from_environment();
};

/// Largest alpha supported by the enumerators of the active kind (K_s for the weight kind
/// when every CN code contains the all-ones word).
double support_max_alpha(const Ensemble& e);

SpectralPoint solve_point(const Ensemble& e, double alpha, const SolverOptions& opts = SolverOptions::from_environment());

/// Solves every grid point by continuation. The grid need not be sorted.
SpectralCurve growth_curve(const Ensemble& e, std::span<const double> grid,
                           const SolverOptions& opts = SolverOptions::from_environment());

/// Uniform grid of `points` values on [0.005, 0.995] * alpha_max.
SpectralCurve growth_curve(const Ensemble& e, int points = 100,
                           const SolverOptions& opts = SolverOptions::from_environment());

std::vector<double> default_grid(const Ensemble& e, int points = 100);

/// G'(alpha) = -log x0.
inline double growth_derivative(const SpectralPoint& p) { return -std::log(p.x0); }

/// inf{alpha > 0 : G(alpha) >= 0} for the ensemble's active kind. Returns 0 for bad growth and
/// throws ClassifierInconclusive when C*V = 1.
double critical_exponent(const Ensemble& e, const SolverOptions& opts = SolverOptions::from_environment());
double critical_exponent(const Ensemble& e, EnumeratorKind kind,
                         const SolverOptions& opts = SolverOptions::from_environment());

struct HPoint {
  double omega;
  double H;
};

/// H(omega) = G(K_s omega) / K_s.
std::vector<HPoint> h_curve(const SpectralCurve& c, double block_length_ratio);

/// Max relative residual of the four original equations at (alpha, x0, y0, z0, beta).
double system_residual(const Ensemble& e, const SpectralPoint& p);

/// G evaluated directly from (alpha, x0, y0, z0, beta) without solving.
double growth_rate_at(const Ensemble& e, const SpectralPoint& p);

}  // namespace dgldpc
