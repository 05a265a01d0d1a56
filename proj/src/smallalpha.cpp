#include "dgldpc/smallalpha.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

constexpr double kBoundaryTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;
constexpr double kShortcutTolerance = 1e-12;

double poly(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// B_{., j} summed over input weights.
double output_count(const IOWeightEnumerator& b, int j) {
  double s = 0.0;
  for (int u = 0; u <= b.in_length; ++u) s += static_cast<double>(b.at(u, j));
  return s;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void check_shortcut(const char* name, double shortcut, double general) {
  if (std::abs(shortcut - general) > kShortcutTolerance * std::abs(general)) {
    throw Error(std::string("alpha* approximation: ") + name + " form (" + std::to_string(shortcut) +
                ") disagrees with the general form (" + std::to_string(general) + ")");
  }
}

}  // namespace

std::string to_string(GrowthBehavior g) {
  switch (g) {
    case GrowthBehavior::Good:
      return "good";
    case GrowthBehavior::Bad:
      return "bad";
    case GrowthBehavior::Boundary:
      return "boundary";
  }
  return "unknown";
}

GrowthClassification classify_growth(const Ensemble& e) {
  GrowthClassification g;
  const auto cns = e.check_nodes();
  for (std::size_t t = 0; t < cns.size(); ++t) {
    const auto& a = e.cn_enumerator(t);
    if (a.min_distance() == 2) {
      g.distance2_cn = true;
      g.C += 2.0 * cns[t].rho * static_cast<double>(a.coeffs[2]) / cns[t].length;
    }
  }
  const auto vns = e.variable_nodes();
  for (std::size_t t = 0; t < vns.size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    if (b.min_output_weight() == 2) {
      g.distance2_vn = true;
      g.V += 2.0 * vns[t].lambda * output_count(b, 2) / vns[t].length;
    }
  }
  if (!g.distance2_cn || !g.distance2_vn) {
    g.behavior = GrowthBehavior::Good;
  } else if (std::abs(g.product() - 1.0) <= kBoundaryTolerance) {
    g.behavior = GrowthBehavior::Boundary;
  } else {
    g.behavior = g.product() < 1.0 ? GrowthBehavior::Good : GrowthBehavior::Bad;
  }
  return g;
}

double SmallAlphaData::q1(double x) const { return poly(q1_coeffs, x); }
double SmallAlphaData::q2(double x) const { return poly(q2_coeffs, x); }

SmallAlphaData small_alpha_data(const Ensemble& e) {
  SmallAlphaData d;
  d.kind = e.kind();
  const auto cns = e.check_nodes();
  const auto vns = e.variable_nodes();

  d.r = std::numeric_limits<int>::max();
  for (std::size_t t = 0; t < cns.size(); ++t) d.r = std::min(d.r, e.cn_enumerator(t).min_distance());
  d.p = std::numeric_limits<int>::max();
  for (std::size_t t = 0; t < vns.size(); ++t) d.p = std::min(d.p, e.vn_enumerator(t).min_output_weight());
  if (d.r < 2 || d.p < 2) throw EnsembleError("small-alpha expansion needs minimum distances >= 2");
  d.psi = static_cast<double>(d.r) / (d.r - 1);

  for (std::size_t t = 0; t < cns.size(); ++t) {
    const auto& a = e.cn_enumerator(t);
    if (a.min_distance() == d.r) d.C += d.r * cns[t].rho * static_cast<double>(a.coeffs[d.r]) / cns[t].length;
  }
  d.V = classify_growth(e).V;

  d.T = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < vns.size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    for (int i = 1; i <= b.in_length; ++i) {
      for (int j = 0; j <= b.out_length; ++j) {
        if (b.at(i, j) > 0) d.T = std::min(d.T, (j - d.psi) / i);
      }
    }
  }
  // Snap so that exact ties such as (3 - 2)/1 are not split by rounding.
  if (std::abs(d.T) < kTieTolerance) d.T = 0.0;

  const double scale = e.int_lambda() / std::numbers::e;
  for (std::size_t t = 0; t < vns.size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= b.in_length; ++i) {
      for (int j = 0; j <= b.out_length; ++j) {
        if (b.at(i, j) > 0 && std::abs((j - d.psi) / i - d.T) <= kTieTolerance) pairs.emplace_back(i, j);
      }
    }
    if (pairs.empty()) continue;
    for (auto [i, j] : pairs) {
      if (d.q1_coeffs.size() <= static_cast<std::size_t>(i)) {
        d.q1_coeffs.resize(i + 1, 0.0);
        d.q2_coeffs.resize(i + 1, 0.0);
      }
      const double common = vns[t].lambda / vns[t].length * static_cast<double>(b.at(i, j)) *
                            std::pow(d.C, static_cast<double>(j) / d.r) * std::pow(scale, i * d.T / d.psi);
      d.q1_coeffs[i] += j * common;
      d.q2_coeffs[i] += i * common;
    }
    d.Y_v.push_back(static_cast<int>(t));
    d.P_t.push_back(std::move(pairs));
  }

  double hi = 1.0;
  while (d.q1(hi) < 1.0) hi *= 2.0;
  double lo = hi / 2.0;
  while (d.q1(lo) > 1.0) lo /= 2.0;
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve([&](double x) { return d.q1(x) - 1.0; }, lo, hi, tol, iters);
  d.q1_inv_1 = 0.5 * (a + b);
  return d;
}

double small_alpha_growth(const SmallAlphaData& d, double alpha) {
  if (!d.expansion_available()) throw ExpansionUnavailable("small-alpha expansion unavailable: T = 0");
  if (!(alpha > 0.0)) throw DomainError("small-alpha expansion needs alpha > 0");
  const double k = d.T / d.psi;
  const double x1 = d.q1_inv_1;
  return k * alpha * std::log(alpha) + alpha * (std::log(1.0 / x1) + k * std::log(1.0 / d.q2(x1)));
}

AlphaStarApprox alpha_star_approx(const Ensemble& e, const SmallAlphaData& d) {
  if (!d.expansion_available()) throw ExpansionUnavailable("alpha* approximation unavailable: T = 0");
  AlphaStarApprox out;
  const double x1 = d.q1_inv_1;
  out.general = std::pow(x1, d.psi / d.T) * d.q2(x1);
  out.value = out.general;
  out.formula = "general";

  const auto vns = e.variable_nodes();
  bool all_repetition = true;
  bool one_length = true;
  for (std::size_t t = 0; t < vns.size(); ++t) {
    if (!is_repetition(e.vn_enumerator(t))) all_repetition = false;
    if (vns[t].length != vns.front().length) one_length = false;
  }
  if (!all_repetition) return out;

  const double p = d.p;
  const double r = d.r;
  const double denom = p * r - p - r;
  double lambda_p = 0.0;
  for (const auto& v : vns) {
    if (v.length == d.p) lambda_p += v.lambda;
  }
  out.gldpc = std::pow(lambda_p, -r / denom) * std::pow(d.C, -p / denom) * std::numbers::e / (p * e.int_lambda());
  check_shortcut("repetition-VN", *out.gldpc, out.general);
  out.value = *out.gldpc;
  out.formula = "gldpc";

  if (!one_length) return out;
  out.variable_regular = std::pow(d.C, -p / denom) * std::numbers::e;
  check_shortcut("variable-regular", *out.variable_regular, out.general);
  out.value = *out.variable_regular;
  out.formula = "variable-regular";

  const auto cns = e.check_nodes();
  if (cns.size() != 1 || d.p < 3) return out;
  const auto& a = e.cn_enumerator(0);
  const int dc = cns[0].length;
  if (a.min_distance() != 2 || static_cast<double>(a.coeffs[2]) != binomial(dc, 2)) return out;
  out.regular_ldpc = std::numbers::e / std::pow(dc - 1.0, 1.0 / (1.0 - 2.0 / p));
  check_shortcut("regular-LDPC", *out.regular_ldpc, out.general);
  out.value = *out.regular_ldpc;
  out.formula = "regular-ldpc";
  return out;
}

}  // namespace dgldpc
