#include "dgldpc/checkhybrid.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

constexpr double kInverseTolerance = 1e-13;
constexpr double kSymmetryTolerance = 1e-9;

// Log-domain mean and variance of u under weights A_u e^{u c}, plus log A(e^c).
struct Tilted {
  double mean = 0, var = 0, log_value = 0;
};

Tilted tilt(const WeightEnumerator& a, double c) {
  double top = -std::numeric_limits<double>::infinity();
  for (int u = 0; u <= a.length(); ++u) {
    if (a.coeffs[u] > 0) top = std::max(top, std::log(static_cast<double>(a.coeffs[u])) + u * c);
  }
  double sum = 0, s1 = 0, s2 = 0;
  for (int u = 0; u <= a.length(); ++u) {
    if (a.coeffs[u] == 0) continue;
    const double w = std::exp(std::log(static_cast<double>(a.coeffs[u])) + u * c - top);
    sum += w;
    s1 += w * u;
    s2 += w * u * u;
  }
  Tilted t;
  t.mean = s1 / sum;
  t.var = std::max(0.0, s2 / sum - t.mean * t.mean);
  t.log_value = top + std::log(sum);
  return t;
}

int require_check_hybrid(const Ensemble& e) {
  auto q = e.check_hybrid_length();
  if (!q) throw NotCheckHybrid("ensemble is not check-hybrid: every VN must be a repetition code of one length");
  return *q;
}

// f and df/dlog(z) at log z = c.
std::pair<double, double> f_log(const Ensemble& e, double c) {
  double f = 0, df = 0;
  for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
    const auto& cn = e.check_nodes()[t];
    const auto tl = tilt(e.cn_enumerator(t), c);
    f += cn.rho / cn.length * tl.mean;
    df += cn.rho / cn.length * tl.var;
  }
  return {f, df};
}

// Inverts a monotone g(log z) on [0, top): bracket in log z, TOMS 748, then Newton polish.
template <class G>
double invert_monotone(G g, double alpha, double top, const char* what) {
  if (alpha == 0.0) return 0.0;
  if (!(alpha > 0.0 && alpha < top)) {
    throw DomainError(std::string(what) + ": alpha = " + std::to_string(alpha) + " must lie in [0, " +
                      std::to_string(top) + ")");
  }
  double lo = -1.0, hi = 1.0;
  while (g(lo).first > alpha) {
    lo *= 2.0;
    if (lo < -1e4) throw DomainError(std::string(what) + ": alpha too small to bracket");
  }
  while (g(hi).first < alpha) {
    hi *= 2.0;
    if (hi > 1e4) throw DomainError(std::string(what) + ": alpha too close to the upper limit");
  }
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
  std::uintmax_t iters = 300;
  auto [a, b] = boost::math::tools::toms748_solve([&](double c) { return g(c).first - alpha; }, lo, hi, tol, iters);
  double c = 0.5 * (a + b);
  for (int it = 0; it < 5; ++it) {
    const auto [f, df] = g(c);
    if (std::abs(f - alpha) < 0.1 * kInverseTolerance * std::max(1.0, alpha) || !(df > 0.0)) break;
    c -= (f - alpha) / df;
  }
  if (std::abs(g(c).first - alpha) >= kInverseTolerance) {
    throw ConvergenceError(std::string(what) + ": inverse did not reach 1e-13", alpha, {0, 0, std::exp(c)});
  }
  return std::exp(c);
}

}  // namespace

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double f_eval(const Ensemble& e, double z) {
  require_check_hybrid(e);
  if (z < 0.0) throw DomainError("f is defined for z >= 0");
  if (z == 0.0) return 0.0;
  return f_log(e, std::log(z)).first;
}

double f_inverse(const Ensemble& e, double alpha) {
  require_check_hybrid(e);
  return invert_monotone([&](double c) { return f_log(e, c); }, alpha, e.m_bar(), "f_inverse");
}

double checkhybrid_growth_rate(const Ensemble& e, double alpha) {
  const int q = require_check_hybrid(e);
  const double z = f_inverse(e, alpha);
  if (!(alpha > 0.0)) throw DomainError("checkhybrid_growth_rate needs alpha > 0");
  const double c = std::log(z);
  double cn = 0.0;
  for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
    cn += e.int_rho() * e.gamma(t) * tilt(e.cn_enumerator(t), c).log_value;
  }
  return (1.0 - q) * binary_entropy(alpha) - q * alpha * c + q * cn;
}

double tanner_f_inverse(const WeightEnumerator& a, double alpha) {
  const double s = a.length();
  auto g = [&](double c) {
    const auto t = tilt(a, c);
    return std::pair{t.mean / s, t.var / s};
  };
  return invert_monotone(g, alpha, a.max_weight() / s, "tanner_f_inverse");
}

double tanner_growth_rate(int q, const WeightEnumerator& a, double alpha) {
  if (q < 2) throw DomainError("repetition length must be >= 2");
  if (!(alpha > 0.0)) throw DomainError("tanner_growth_rate needs alpha > 0");
  const double z = tanner_f_inverse(a, alpha);
  const double c = std::log(z);
  return (1.0 - q) * binary_entropy(alpha) - q * alpha * c + q / static_cast<double>(a.length()) * tilt(a, c).log_value;
}

CardanoRoot cardano_f_inverse_36(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("cardano_f_inverse_36 needs alpha in (0, 1)");
  const double a = alpha - 1.0;
  const double b = 15.0 * alpha - 10.0;
  const double c = 15.0 * alpha - 5.0;
  const double d = alpha;
  const double rho = (3.0 * a * c - b * b) / (9.0 * a * a);
  const double mu = (9.0 * a * b * c - 27.0 * a * a * d - 2.0 * b * b * b) / (54.0 * a * a * a);
  CardanoRoot r;
  r.mu = mu;
  r.discriminant = rho * rho * rho + mu * mu;
  if (!(r.discriminant < 0.0)) {
    throw DomainError("cubic discriminant is not negative at alpha = " + std::to_string(alpha));
  }
  // atan2 picks the branch in (0, pi); it agrees with atan(sqrt(-D)/mu) whenever mu > 0.
  const double theta = std::atan2(std::sqrt(-r.discriminant), mu);
  const double x = 2.0 * std::sqrt(-rho) * std::cos(theta / 3.0) - b / (3.0 * a);
  if (!(x > 0.0)) throw DomainError("cubic root is not positive at alpha = " + std::to_string(alpha));
  r.z = std::sqrt(x);
  return r;
}

SymmetryReport symmetry_report(const SpectralCurve& c, const Ensemble& e) {
  require_check_hybrid(e);
  SymmetryReport r;
  r.m_bar = e.m_bar();
  r.all_cn_symmetric = true;
  for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
    if (!is_symmetric(e.cn_enumerator(t))) r.all_cn_symmetric = false;
  }
  for (const auto& p : c.points) {
    const double reflected = r.m_bar - p.alpha;
    if (!(reflected > 0.0 && reflected < r.m_bar)) continue;
    const double dev = std::abs(checkhybrid_growth_rate(e, reflected) - p.G);
    r.max_deviation = std::max(r.max_deviation, dev);
    ++r.compared;
  }
  r.consistent = !r.all_cn_symmetric || r.max_deviation < kSymmetryTolerance;
  return r;
}

}  // namespace dgldpc
