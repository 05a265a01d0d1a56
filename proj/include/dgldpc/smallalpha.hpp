#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgldpc/ensemble.hpp"

namespace dgldpc {

enum class GrowthBehavior { Good, Bad, Boundary };

std::string to_string(GrowthBehavior g);

struct GrowthClassification {
  GrowthBehavior behavior = GrowthBehavior::Good;
  double C = 0.0;  // from minimum-distance-2 CN types (0 if none)
  double V = 0.0;  // from minimum-distance-2 VN types (0 if none)
  bool distance2_cn = false;
  bool distance2_vn = false;

  double product() const noexcept { return C * V; }
};

/// Classifies the growth behaviour near alpha = 0 from the active-kind enumerators:
/// good unless distance-2 nodes exist on both sides, then by C*V against 1.
GrowthClassification classify_growth(const Ensemble& e);

struct SmallAlphaData {
  EnumeratorKind kind = EnumeratorKind::Weight;
  int r = 0;  // smallest CN minimum distance
  int p = 0;  // smallest VN minimum distance
  double psi = 0.0;
  double C = 0.0;
  double V = 0.0;
  double T = 0.0;
  std::vector<int> Y_v;                               // VN types achieving T
  std::vector<std::vector<std::pair<int, int>>> P_t;  // achieving (i, j) per entry of Y_v
  std::vector<double> q1_coeffs;                      // index i = power of x
  std::vector<double> q2_coeffs;
  double q1_inv_1 = 0.0;  // positive root of Q1(x) = 1

  bool expansion_available() const noexcept { return T > 0.0; }
  double q1(double x) const;
  double q2(double x) const;
};

SmallAlphaData small_alpha_data(const Ensemble& e);

/// (T/psi) a log a + a [log(1/x1) + (T/psi) log(1/Q2(x1))], x1 = Q1^{-1}(1).
double small_alpha_growth(const SmallAlphaData& d, double alpha);

struct AlphaStarApprox {
  double general = 0.0;
  std::optional<double> gldpc;             // all VNs repetition codes
  std::optional<double> variable_regular;  // all VNs repetition codes of one length
  std::optional<double> regular_ldpc;      // single rep VN type (degree >= 3), single SPC CN type
  double value = 0.0;
  std::string formula;  // which of the above produced `value`
};

/// Zero of the two-term expansion. The shortcut forms are evaluated independently when they
/// apply and must agree with the general form to 1e-12 (relative).
AlphaStarApprox alpha_star_approx(const Ensemble& e, const SmallAlphaData& d);
inline AlphaStarApprox alpha_star_approx(const Ensemble& e) { return alpha_star_approx(e, small_alpha_data(e)); }

}  // namespace dgldpc
