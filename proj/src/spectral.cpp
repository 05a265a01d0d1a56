#include "dgldpc/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "dgldpc/errors.hpp"
#include "dgldpc/smallalpha.hpp"

namespace dgldpc {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootTolerance = 1e-12;  // |G| at the critical exponent
constexpr double kMaxNewtonStep = 8.0;    // per-component cap in log coordinates
constexpr double kMaxContinuationStep = 1.0;

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// log(w / (1 + w)) for w = e^x.
double log_sigmoid(double x) { return -softplus(-x); }

struct VnSupport {
  double delta;
  std::vector<double> u, v, log_b;
};

struct CnSupport {
  double kappa;  // rho_t / s_t
  std::vector<double> u, log_a;
};

struct VnMoments {
  double log_b = 0, eu = 0, ev = 0, var_u = 0, var_v = 0, cov = 0;
};

struct CnMoments {
  double log_a = 0, eu = 0, var_u = 0;
};

VnMoments vn_moments(const VnSupport& s, double a, double b, std::vector<double>& w) {
  const std::size_t n = s.u.size();
  w.resize(n);
  double top = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = s.log_b[i] + s.u[i] * a + s.v[i] * b;
    top = std::max(top, w[i]);
  }
  double sum = 0, su = 0, sv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(w[i] - top);
    sum += w[i];
    su += w[i] * s.u[i];
    sv += w[i] * s.v[i];
  }
  VnMoments m;
  m.log_b = top + std::log(sum);
  m.eu = su / sum;
  m.ev = sv / sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double du = s.u[i] - m.eu;
    const double dv = s.v[i] - m.ev;
    m.var_u += w[i] * du * du;
    m.var_v += w[i] * dv * dv;
    m.cov += w[i] * du * dv;
  }
  m.var_u /= sum;
  m.var_v /= sum;
  m.cov /= sum;
  return m;
}

CnMoments cn_moments(const CnSupport& s, double c, std::vector<double>& w) {
  const std::size_t n = s.u.size();
  w.resize(n);
  double top = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = s.log_a[i] + s.u[i] * c;
    top = std::max(top, w[i]);
  }
  double sum = 0, su = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(w[i] - top);
    sum += w[i];
    su += w[i] * s.u[i];
  }
  CnMoments m;
  m.log_a = top + std::log(sum);
  m.eu = su / sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s.u[i] - m.eu;
    m.var_u += w[i] * d * d;
  }
  m.var_u /= sum;
  return m;
}

// The reduced system in X = (log x0, log y0, log z0) with beta eliminated, parameterized by
// l = log(alpha):
//   F1 = log f(z0) - log(w/(1+w)),           f(z) = sum_t (rho_t/s_t) z A_t'(z)/A_t(z), w = y0 z0
//   F2 = log sum_t delta_t E_t[u] - l
//   F3 = log sum_t delta_t E_t[v] - log(w/((1+w) int_lambda))
struct Evaluation {
  Vec3 F;
  Mat3 J;
  double G = 0;
  Eigen::Vector4d grad_G;  // d G / d(a, b, c, l)
  double P = 0, Qv = 0, f = 0, w_ratio = 0;
};

class Model {
 public:
  explicit Model(const Ensemble& e) : int_lambda_(e.int_lambda()) {
    for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
      const auto& b = e.vn_enumerator(t);
      VnSupport s{e.delta(t), {}, {}, {}};
      for (int u = 0; u <= b.in_length; ++u) {
        for (int v = 0; v <= b.out_length; ++v) {
          if (b.at(u, v) > 0) {
            s.u.push_back(u);
            s.v.push_back(v);
            s.log_b.push_back(std::log(static_cast<double>(b.at(u, v))));
          }
        }
      }
      vns_.push_back(std::move(s));
    }
    for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
      const auto& a = e.cn_enumerator(t);
      const auto& cn = e.check_nodes()[t];
      CnSupport s{cn.rho / cn.length, {}, {}};
      for (int u = 0; u <= a.length(); ++u) {
        if (a.coeffs[u] > 0) {
          s.u.push_back(u);
          s.log_a.push_back(std::log(static_cast<double>(a.coeffs[u])));
        }
      }
      cns_.push_back(std::move(s));
    }
  }

  double int_lambda() const { return int_lambda_; }

  Evaluation evaluate(const Vec3& x, double l) const {
    const double a = x[0], b = x[1], c = x[2];
    Evaluation r;
    double var_u = 0, var_v = 0, cov = 0, sum_log_b = 0;
    for (const auto& s : vns_) {
      const auto m = vn_moments(s, a, b, scratch_);
      r.P += s.delta * m.eu;
      r.Qv += s.delta * m.ev;
      var_u += s.delta * m.var_u;
      var_v += s.delta * m.var_v;
      cov += s.delta * m.cov;
      sum_log_b += s.delta * m.log_b;
    }
    double var_a = 0, sum_log_a = 0;
    for (const auto& s : cns_) {
      const auto m = cn_moments(s, c, scratch_);
      r.f += s.kappa * m.eu;
      var_a += s.kappa * m.var_u;
      sum_log_a += s.kappa * m.log_a;
    }
    const double L = b + c;
    const double lw = log_sigmoid(L);  // log(w/(1+w))
    const double g = std::exp(log_sigmoid(-L));  // 1/(1+w)
    r.w_ratio = std::exp(lw);
    r.F << std::log(r.f) - lw, std::log(r.P) - l, std::log(r.Qv) - (lw - std::log(int_lambda_));
    r.J << 0.0, -g, var_a / r.f - g,                 //
        var_u / r.P, cov / r.P, 0.0,                   //
        cov / r.Qv, var_v / r.Qv - g, -g;
    const double alpha = std::exp(l);
    r.G = sum_log_b - alpha * a + sum_log_a / int_lambda_ - softplus(L) / int_lambda_;
    r.grad_G << r.P - alpha, r.Qv - r.w_ratio / int_lambda_, (r.f - r.w_ratio) / int_lambda_, -alpha * a;
    return r;
  }

  // Total expected VN output weight as a function of a, for fixed b.
  double vn_output_mean(double a, double b) const {
    double q = 0;
    for (const auto& s : vns_) q += s.delta * vn_moments(s, a, b, scratch_).ev;
    return q;
  }

  double vn_input_mean(double a, double b) const {
    double p = 0;
    for (const auto& s : vns_) p += s.delta * vn_moments(s, a, b, scratch_).eu;
    return p;
  }

  double cn_mean(double c) const {
    double f = 0;
    for (const auto& s : cns_) f += s.kappa * cn_moments(s, c, scratch_).eu;
    return f;
  }

 private:
  double int_lambda_;
  std::vector<VnSupport> vns_;
  std::vector<CnSupport> cns_;
  mutable std::vector<double> scratch_;
};

bool finite(const Vec3& v) { return v.allFinite(); }

// Damped Newton on the reduced system at fixed l.
std::optional<Vec3> newton(const Model& m, Vec3 x, double l, const SolverOptions& o) {
  auto ev = m.evaluate(x, l);
  if (!ev.F.allFinite()) return std::nullopt;
  double phi = 0.5 * ev.F.squaredNorm();
  for (int it = 0; it < o.max_newton_iterations; ++it) {
    if (ev.F.cwiseAbs().maxCoeff() < o.tolerance) {
      // A couple of extra steps are nearly free and tighten G to rounding level.
      for (int polish = 0; polish < 2; ++polish) {
        Vec3 d = ev.J.partialPivLu().solve(-ev.F);
        if (!finite(d)) break;
        auto trial = m.evaluate(x + d, l);
        if (!trial.F.allFinite() || trial.F.squaredNorm() >= ev.F.squaredNorm()) break;
        x += d;
        ev = trial;
      }
      return x;
    }
    Vec3 d = ev.J.fullPivLu().solve(-ev.F);
    if (!finite(d)) return std::nullopt;
    const double big = d.cwiseAbs().maxCoeff();
    if (big > kMaxNewtonStep) d *= kMaxNewtonStep / big;
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-6) {
      Vec3 trial_x = x + t * d;
      auto trial = m.evaluate(trial_x, l);
      if (trial.F.allFinite()) {
        const double trial_phi = 0.5 * trial.F.squaredNorm();
        if (trial_phi <= (1.0 - 2e-4 * t) * phi) {
          x = trial_x;
          ev = trial;
          phi = trial_phi;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  return std::nullopt;
}

Vec3 tangent(const Model& m, const Vec3& x, double l) {
  const auto ev = m.evaluate(x, l);
  return ev.J.fullPivLu().solve(Vec3(0.0, 1.0, 0.0));
}

struct Anchor {
  double l;
  Vec3 x;
};

// Follows the solution branch from `from` to log(alpha) = target.
std::optional<Vec3> track(const Model& m, Anchor from, double target, const SolverOptions& o) {
  double l = from.l;
  Vec3 x = from.x;
  double h = std::clamp(target - l, -kMaxContinuationStep, kMaxContinuationStep);
  while (l != target) {
    if (std::abs(target - l) <= std::abs(h)) h = target - l;
    const double next = (h == target - l) ? target : l + h;
    const Vec3 guess = x + (next - l) * tangent(m, x, l);
    auto sol = newton(m, guess, next, o);
    if (!sol && guess != x) sol = newton(m, x, next, o);
    if (sol) {
      x = *sol;
      l = next;
      h = std::clamp(2.0 * h, -kMaxContinuationStep, kMaxContinuationStep);
    } else {
      h *= 0.5;
      if (std::abs(h) < o.min_step) return std::nullopt;
    }
  }
  return x;
}

// The solution branch parameterized by c = log z0: f(z0) fixes w = y0 z0, the VN output-weight
// equation fixes x0 by bisection, and alpha is then read off. Not Newton-polished.
std::optional<Anchor> branch_point(const Model& m, double c) {
  const double f = m.cn_mean(c);
  if (!(f > 0.0 && f < 1.0)) return std::nullopt;
  const double L = std::log(f) - std::log1p(-f);
  const double b = L - c;
  const double target = f / m.int_lambda();
  double lo = -1.0, hi = 1.0;
  while (m.vn_output_mean(lo, b) > target && lo > -700.0) lo *= 2.0;
  while (m.vn_output_mean(hi, b) < target && hi < 700.0) hi *= 2.0;
  if (!(m.vn_output_mean(lo, b) <= target && m.vn_output_mean(hi, b) >= target)) return std::nullopt;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (m.vn_output_mean(mid, b) < target ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  const double p = m.vn_input_mean(a, b);
  if (!(p > 0.0) || !std::isfinite(p)) return std::nullopt;
  return Anchor{std::log(p), Vec3(a, b, c)};
}

constexpr double kScanStep = 0.05;
constexpr int kScanHalfWidth = 600;  // c in [-30, 30]

// Polished branch points on c = -30, -29.95, ..., 30, in increasing c. The fine step is what
// resolves narrow folds.
std::vector<Anchor> z_scan(const Model& m, const SolverOptions& o) {
  std::vector<Anchor> out;
  for (int i = -kScanHalfWidth; i <= kScanHalfWidth; ++i) {
    const auto raw = branch_point(m, kScanStep * i);
    if (!raw) continue;
    if (auto polished = newton(m, raw->x, raw->l, o)) {
      out.push_back({raw->l, *polished});
    } else if (m.evaluate(raw->x, raw->l).F.cwiseAbs().maxCoeff() < o.tolerance) {
      out.push_back(*raw);  // next to a fold J is nearly singular, but the raw point already solves
    }
  }
  return out;
}

// Extremum of l(c) on [c0, c1] by golden-section search; `sign` = +1 for a maximum, -1 for a minimum.
double turning_value(const Model& m, double c0, double c1, double sign) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto value = [&](double c) {
    const auto p = branch_point(m, c);
    return p ? sign * p->l : -kInf;
  };
  double a = c1 - g * (c1 - c0), b = c0 + g * (c1 - c0);
  double fa = value(a), fb = value(b);
  for (int it = 0; it < 80 && c1 - c0 > 1e-12; ++it) {
    if (fa < fb) {
      c0 = a;
      a = b;
      fa = fb;
      b = c0 + g * (c1 - c0);
      fb = value(b);
    } else {
      c1 = b;
      b = a;
      fb = fa;
      a = c1 - g * (c1 - c0);
      fa = value(a);
    }
  }
  return sign * std::max(fa, fb);
}

// log-alpha ranges [lo, hi] where the branch folds back, i.e. where the reduced system has more
// than one solution. Turning points are located to within the bisection accuracy of branch_point.
std::vector<std::pair<double, double>> fold_ranges(const Model& m, const std::vector<Anchor>& scan) {
  std::vector<std::pair<double, double>> out;
  auto c_at = [&](std::size_t i) { return scan[i].x[2]; };
  std::size_t i = 0;
  while (i + 1 < scan.size()) {
    if (scan[i + 1].l >= scan[i].l) {
      ++i;
      continue;
    }
    // scan[i] is a local maximum of l(c); walk down to the following local minimum.
    std::size_t j = i + 1;
    while (j + 1 < scan.size() && scan[j + 1].l < scan[j].l) ++j;
    const double top = turning_value(m, c_at(i > 0 ? i - 1 : i), c_at(i + 1), 1.0);
    const double bottom = j + 1 < scan.size() ? turning_value(m, c_at(j - 1), c_at(j + 1), -1.0) : scan[j].l;
    out.emplace_back(std::min(bottom, scan[j].l), std::max(top, scan[i].l));
    i = j;
  }
  return out;
}

const Anchor* nearest(const std::vector<Anchor>& anchors, double l) {
  const Anchor* best = nullptr;
  for (const auto& a : anchors) {
    if (!best || std::abs(a.l - l) < std::abs(best->l - l)) best = &a;
  }
  return best;
}

bool exact_midpoint_seed(const Ensemble& e) {
  return e.kind() == EnumeratorKind::Weight && validate_assumptions(e).dual_distance_ok;
}

class Solver {
 public:
  Solver(const Ensemble& e, const SolverOptions& o) : e_(e), m_(e), o_(o), alpha_max_(support_max_alpha(e)) {}

  const Model& model() const { return m_; }
  double alpha_max() const { return alpha_max_; }

  void check_domain(double alpha) const {
    if (!(alpha >= o_.endpoint_guard && alpha <= alpha_max_ - o_.endpoint_guard)) {
      throw DomainError("alpha = " + std::to_string(alpha) + " is outside the open domain (0, " +
                        std::to_string(alpha_max_) + ")");
    }
  }

  // Starting point: the exact solution at K_s/2 when it is known, otherwise the scan point
  // closest to `near`.
  Anchor seed(double near) {
    if (exact_midpoint_seed(e_)) return {std::log(e_.block_length_ratio() / 2.0), Vec3::Zero()};
    const Anchor* a = nearest(scan(), near);
    if (!a) throw ConvergenceError("no starting point found for the spectral system", std::exp(near), {1, 1, 1});
    return *a;
  }

  Vec3 solve_from(const Anchor& from, double alpha) {
    check_domain(alpha);
    const double l = std::log(alpha);
    if (auto x = track(m_, from, l, o_)) return *x;
    if (const Anchor* a = nearest(scan(), l)) {
      if (auto x = track(m_, *a, l, o_)) return *x;
    }
    throw ConvergenceError("spectral system did not converge at alpha = " + std::to_string(alpha), alpha,
                           {std::exp(from.x[0]), std::exp(from.x[1]), std::exp(from.x[2])});
  }

  SpectralPoint point(const Vec3& x, double alpha) const {
    SpectralPoint p;
    p.alpha = alpha;
    p.x0 = std::exp(x[0]);
    p.y0 = std::exp(x[1]);
    p.z0 = std::exp(x[2]);
    p.beta = std::exp(log_sigmoid(x[1] + x[2])) / e_.int_lambda();
    p.G = m_.evaluate(x, std::log(alpha)).G;
    p.residual = system_residual(e_, p);
    return p;
  }

  const std::vector<Anchor>& scan() {
    if (!scan_) scan_ = z_scan(m_, o_);
    return *scan_;
  }

  const std::vector<std::pair<double, double>>& folds() {
    if (!folds_) folds_ = fold_ranges(m_, scan());
    return *folds_;
  }

  // Every solution at log(alpha) = l found by bisecting c between consecutive scan points.
  std::vector<Vec3> all_solutions(double l) {
    const auto& sc = scan();
    std::vector<Vec3> out;
    for (std::size_t i = 0; i + 1 < sc.size(); ++i) {
      double c0 = sc[i].x[2], c1 = sc[i + 1].x[2];
      double d0 = sc[i].l - l, d1 = sc[i + 1].l - l;
      if (d0 * d1 > 0.0) continue;
      Vec3 guess = std::abs(d0) < std::abs(d1) ? sc[i].x : sc[i + 1].x;
      for (int it = 0; it < 100 && c1 - c0 > 1e-13; ++it) {
        const double mid = 0.5 * (c0 + c1);
        const auto p = branch_point(m_, mid);
        if (!p) break;
        guess = p->x;
        if ((p->l - l) * d0 > 0.0) {
          c0 = mid;
          d0 = p->l - l;
        } else {
          c1 = mid;
        }
      }
      auto x = newton(m_, guess, l, o_);
      if (!x && m_.evaluate(guess, l).F.cwiseAbs().maxCoeff() < o_.tolerance) x = guess;
      if (!x) continue;
      bool dup = false;
      for (const auto& y : out) dup |= (y - *x).cwiseAbs().maxCoeff() < 1e-8;
      if (!dup) out.push_back(*x);
    }
    return out;
  }

  // The solution carrying the largest G at alpha; continuation from `from` when the branch has
  // no fold, otherwise the best of all solutions.
  Vec3 solve(const Anchor& from, double alpha) {
    check_domain(alpha);
    if (exact_midpoint_seed(e_) || folds().empty()) return solve_from(from, alpha);
    const double l = std::log(alpha);
    const auto sols = all_solutions(l);
    if (sols.empty()) return solve_from(from, alpha);
    const Vec3* best = &sols.front();
    double best_g = m_.evaluate(*best, l).G;
    for (const auto& x : sols) {
      const double g = m_.evaluate(x, l).G;
      if (g > best_g) {
        best_g = g;
        best = &x;
      }
    }
    return *best;
  }

 private:
  const Ensemble& e_;
  Model m_;
  SolverOptions o_;
  double alpha_max_;
  std::optional<std::vector<Anchor>> scan_;
  std::optional<std::vector<std::pair<double, double>>> folds_;
};

// Root of a(l) = log x0 between two solved anchors with opposite signs of a.
double refine_stationary(Solver& s, Anchor lo, Anchor hi, const SolverOptions& o) {
  for (int it = 0; it < 100; ++it) {
    const double span = hi.l - lo.l;
    if (std::abs(span) < 1e-15) break;
    double l = lo.l - lo.x[0] * span / (hi.x[0] - lo.x[0]);
    if (!(l > std::min(lo.l, hi.l) && l < std::max(lo.l, hi.l))) l = 0.5 * (lo.l + hi.l);
    auto x = track(s.model(), lo, l, o);
    if (!x) break;
    if (std::abs((*x)[0]) < 1e-14) return std::exp(l);
    if (((*x)[0] < 0) == (lo.x[0] < 0)) {
      lo = {l, *x};
    } else {
      hi = {l, *x};
    }
  }
  return std::exp(0.5 * (lo.l + hi.l));
}

// alpha* when the branch folds: the same downward halving and bracketing, but every value is
// the largest G over all solutions, refined by Illinois regula falsi in log alpha.
double critical_exponent_with_folds(Solver& s, const Anchor& top, const SolverOptions& o) {
  auto value = [&](double l) {
    const Vec3 x = s.solve(s.seed(l), std::exp(l));
    return s.model().evaluate(x, l).G;
  };
  const double floor_l = std::log(o.endpoint_guard * 10.0);
  std::vector<std::pair<double, double>> samples{{top.l, value(top.l)}};
  int extra = -1;
  while (extra != 0) {
    const double l = samples.back().first - std::log(2.0);
    if (l < floor_l) break;
    const double g = value(l);
    samples.push_back({l, g});
    if (g < 0.0 && extra < 0) extra = 3;
    if (extra > 0) --extra;
  }
  std::size_t hi_idx = samples.size();
  for (std::size_t i = samples.size() - 1; i > 0; --i) {
    if (samples[i].second < 0.0 && samples[i - 1].second >= 0.0) {
      hi_idx = i - 1;
      break;
    }
  }
  if (hi_idx == samples.size()) {
    throw ConvergenceError("G did not become negative above alpha = " + std::to_string(std::exp(floor_l)),
                           std::exp(floor_l), {1, 1, 1});
  }
  auto [l_lo, g_lo] = samples[hi_idx + 1];
  auto [l_hi, g_hi] = samples[hi_idx];
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double l = (l_lo * g_hi - l_hi * g_lo) / (g_hi - g_lo);
    if (!(l > l_lo && l < l_hi)) l = 0.5 * (l_lo + l_hi);
    const double g = value(l);
    if (std::abs(g) < kRootTolerance || l_hi - l_lo < 1e-15) return std::exp(l);
    if (g < 0.0) {
      l_lo = l;
      g_lo = g;
      if (side == -1) g_hi *= 0.5;
      side = -1;
    } else {
      l_hi = l;
      g_hi = g;
      if (side == 1) g_lo *= 0.5;
      side = 1;
    }
  }
  return std::exp(0.5 * (l_lo + l_hi));
}

}  // namespace

SolverOptions SolverOptions::from_environment() {
  SolverOptions o;
  if (const char* env = std::getenv("SPECTRAL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) o.tolerance = v;
  }
  return o;
}

double support_max_alpha(const Ensemble& e) {
  // max sum_t delta_t u_t  s.t.  sum_t delta_t v_t <= m_bar / int_lambda,  (u_t, v_t) in the hull
  // of the support of B_t. Solved through its Lagrangian dual, a piecewise-linear convex
  // function of the multiplier mu >= 0 minimized at a breakpoint.
  const double budget = e.m_bar() / e.int_lambda();
  std::vector<double> mus{0.0};
  for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    std::vector<std::pair<int, int>> pts;
    for (int u = 0; u <= b.in_length; ++u) {
      for (int v = 0; v <= b.out_length; ++v) {
        if (b.at(u, v) > 0) pts.emplace_back(u, v);
      }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (pts[i].second == pts[j].second) continue;
        const double mu = static_cast<double>(pts[i].first - pts[j].first) / (pts[i].second - pts[j].second);
        if (mu > 0.0) mus.push_back(mu);
      }
    }
  }
  double best = kInf;
  for (double mu : mus) {
    double val = mu * budget;
    for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
      const auto& b = e.vn_enumerator(t);
      double top = -kInf;
      for (int u = 0; u <= b.in_length; ++u) {
        for (int v = 0; v <= b.out_length; ++v) {
          if (b.at(u, v) > 0) top = std::max(top, u - mu * v);
        }
      }
      val += e.delta(t) * top;
    }
    best = std::min(best, val);
  }
  return best;
}

SpectralPoint solve_point(const Ensemble& e, double alpha, const SolverOptions& opts) {
  Solver s(e, opts);
  s.check_domain(alpha);
  const Anchor seed = s.seed(std::log(alpha));
  return s.point(s.solve(seed, alpha), alpha);
}

std::vector<double> default_grid(const Ensemble& e, int points) {
  if (points < 2) throw DomainError("a curve needs at least two points");
  const double amax = support_max_alpha(e);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = amax * (0.005 + 0.99 * i / (points - 1));
  return grid;
}

SpectralCurve growth_curve(const Ensemble& e, int points, const SolverOptions& opts) {
  const auto grid = default_grid(e, points);
  return growth_curve(e, grid, opts);
}

SpectralCurve growth_curve(const Ensemble& e, std::span<const double> grid, const SolverOptions& opts) {
  Solver s(e, opts);
  SpectralCurve curve;
  curve.kind = e.kind();
  curve.alpha_max = s.alpha_max();
  if (grid.empty()) return curve;

  if (!exact_midpoint_seed(e)) {
    for (const auto& [lo, hi] : s.folds()) curve.multi_solution_ranges.emplace_back(std::exp(lo), std::exp(hi));
  }

  std::vector<double> alphas(grid.begin(), grid.end());
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  for (double a : alphas) s.check_domain(a);

  const Anchor seed = s.seed(std::log(alphas[alphas.size() / 2]));
  std::vector<Vec3> xs(alphas.size());
  const auto split = std::lower_bound(alphas.begin(), alphas.end(), std::exp(seed.l)) - alphas.begin();
  Anchor prev = seed;
  for (auto i = split; i < static_cast<std::ptrdiff_t>(alphas.size()); ++i) {
    xs[i] = s.solve(prev, alphas[i]);
    prev = {std::log(alphas[i]), xs[i]};
  }
  prev = seed;
  for (auto i = split - 1; i >= 0; --i) {
    xs[i] = s.solve(prev, alphas[i]);
    prev = {std::log(alphas[i]), xs[i]};
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) curve.points.push_back(s.point(xs[i], alphas[i]));

  // Stationary points: sign changes of log x0 along the grid.
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
    const double a0 = xs[i][0], a1 = xs[i + 1][0];
    if (a0 == 0.0) {
      curve.stationary_alphas.push_back(alphas[i]);
    } else if ((a0 < 0) != (a1 < 0) && a1 != 0.0) {
      curve.stationary_alphas.push_back(
          refine_stationary(s, {std::log(alphas[i]), xs[i]}, {std::log(alphas[i + 1]), xs[i + 1]}, opts));
    }
  }
  if (xs.back()[0] == 0.0) curve.stationary_alphas.push_back(alphas.back());

  double grid_max = -kInf;
  for (const auto& p : curve.points) grid_max = std::max(grid_max, p.G);
  if (exact_midpoint_seed(e)) {
    const double mid = e.block_length_ratio() / 2.0;
    curve.peak = s.point(s.solve_from({std::log(mid), Vec3::Zero()}, mid), mid);
  } else {
    for (double a : curve.stationary_alphas) {
      const auto p = s.point(s.solve(seed, a), a);
      if (!curve.peak || p.G > curve.peak->G) curve.peak = p;
    }
  }
  if (curve.peak) curve.peak_is_grid_max = curve.peak->G >= grid_max - 1e-12;

  try {
    curve.alpha_star = critical_exponent(e, opts);
  } catch (const ClassifierInconclusive& ex) {
    curve.alpha_star_note = ex.what();
  } catch (const ConvergenceError& ex) {
    curve.alpha_star_note = std::string("alpha* search failed: ") + ex.what();
  }
  return curve;
}

double critical_exponent(const Ensemble& e, EnumeratorKind kind, const SolverOptions& opts) {
  return critical_exponent(e.kind() == kind ? e : e.with_kind(kind), opts);
}

double critical_exponent(const Ensemble& e, const SolverOptions& opts) {
  const auto cls = classify_growth(e);
  if (cls.behavior == GrowthBehavior::Bad) return 0.0;
  if (cls.behavior == GrowthBehavior::Boundary) {
    throw ClassifierInconclusive("C*V = " + std::to_string(cls.product()) +
                                 " lies on the boundary 1; the sign of G near 0 is undetermined");
  }

  Solver s(e, opts);
  const Model& m = s.model();

  // Start from a point where G > 0.
  Anchor top;
  if (exact_midpoint_seed(e)) {
    top = {std::log(e.block_length_ratio() / 2.0), Vec3::Zero()};
  } else {
    double best = -kInf;
    for (const auto& a : s.scan()) {
      const double g = m.evaluate(a.x, a.l).G;
      if (g > best) {
        best = g;
        top = a;
      }
    }
    if (!(best > 0.0)) throw ConvergenceError("no alpha with G > 0 found", 0.0, {1, 1, 1});
  }

  if (!exact_midpoint_seed(e) && !s.folds().empty()) return critical_exponent_with_folds(s, top, opts);

  // Halve alpha until G < 0, then a few more halvings to catch a lower sign change.
  const double floor_l = std::log(opts.endpoint_guard * 10.0);
  std::vector<std::pair<Anchor, double>> samples{{top, m.evaluate(top.x, top.l).G}};
  int extra = -1;
  while (extra != 0) {
    const Anchor& last = samples.back().first;
    const double l = last.l - std::log(2.0);
    if (l < floor_l) break;
    auto x = track(m, last, l, opts);
    if (!x) throw ConvergenceError("continuation failed while bracketing alpha*", std::exp(l), {1, 1, 1});
    const double g = m.evaluate(*x, l).G;
    samples.push_back({{l, *x}, g});
    if (g < 0.0 && extra < 0) extra = 3;
    if (extra > 0) --extra;
  }
  // samples run downward in alpha; scan upward for the first non-negative value after a negative one.
  std::size_t hi_idx = samples.size();
  for (std::size_t i = samples.size() - 1; i > 0; --i) {
    if (samples[i].second < 0.0 && samples[i - 1].second >= 0.0) {
      hi_idx = i - 1;
      break;
    }
  }
  if (hi_idx == samples.size()) {
    throw ConvergenceError("G did not become negative above alpha = " + std::to_string(std::exp(floor_l)),
                           std::exp(floor_l), {1, 1, 1});
  }
  Anchor lo = samples[hi_idx + 1].first;
  Anchor hi = samples[hi_idx].first;
  double g_lo = samples[hi_idx + 1].second;
  double g_hi = samples[hi_idx].second;

  // Newton on the augmented system (reduced equations plus G = 0, with l free), started at the
  // secant estimate; the bracket guards every step.
  auto in_bracket = [&](double l) { return l > lo.l && l < hi.l; };
  double l = lo.l - g_lo * (hi.l - lo.l) / (g_hi - g_lo);
  auto x0 = track(m, lo, l, opts);
  if (x0) {
    Eigen::Vector4d y(x0->x(), x0->y(), x0->z(), l);
    for (int it = 0; it < 50; ++it) {
      const auto ev = m.evaluate(y.head<3>(), y[3]);
      if (ev.F.cwiseAbs().maxCoeff() < opts.tolerance && std::abs(ev.G) < kRootTolerance) return std::exp(y[3]);
      Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
      J.topLeftCorner<3, 3>() = ev.J;
      J(1, 3) = -1.0;
      J.row(3) = ev.grad_G.transpose();
      Eigen::Vector4d rhs(-ev.F[0], -ev.F[1], -ev.F[2], -ev.G);
      const Eigen::Vector4d d = J.fullPivLu().solve(rhs);
      if (!d.allFinite() || !in_bracket(y[3] + d[3])) break;
      y += d;
    }
  }

  // Safeguarded one-dimensional Newton in l with dG/dl = -alpha log x0.
  for (int it = 0; it < 200; ++it) {
    const double width = hi.l - lo.l;
    const Anchor& near = (g_hi < -g_lo) ? hi : lo;
    const double g_near = (&near == &hi) ? g_hi : g_lo;
    const double slope = -std::exp(near.l) * near.x[0];
    double next = near.l - g_near / slope;
    if (!std::isfinite(next) || !in_bracket(next)) next = lo.l + 0.5 * width;
    auto x = track(m, near, next, opts);
    if (!x) throw ConvergenceError("continuation failed while refining alpha*", std::exp(next), {1, 1, 1});
    const double g = m.evaluate(*x, next).G;
    if (std::abs(g) < kRootTolerance || width < 1e-15) return std::exp(next);
    if (g < 0.0) {
      lo = {next, *x};
      g_lo = g;
    } else {
      hi = {next, *x};
      g_hi = g;
    }
  }
  return std::exp(0.5 * (lo.l + hi.l));
}

std::vector<HPoint> h_curve(const SpectralCurve& c, double block_length_ratio) {
  std::vector<HPoint> out;
  out.reserve(c.points.size());
  for (const auto& p : c.points) out.push_back({p.alpha / block_length_ratio, p.G / block_length_ratio});
  return out;
}

double system_residual(const Ensemble& e, const SpectralPoint& p) {
  using LD = long double;
  const LD x = p.x0, y = p.y0, z = p.z0, beta = p.beta;
  LD vn_x = 0, vn_y = 0;
  for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    LD val = 0, dx = 0, dy = 0;
    for (int u = 0; u <= b.in_length; ++u) {
      for (int v = 0; v <= b.out_length; ++v) {
        const LD c = static_cast<LD>(b.at(u, v));
        if (c == 0) continue;
        const LD term = c * std::pow(x, static_cast<LD>(u)) * std::pow(y, static_cast<LD>(v));
        val += term;
        dx += u * term;
        dy += v * term;
      }
    }
    vn_x += e.delta(t) * dx / val;
    vn_y += e.delta(t) * dy / val;
  }
  LD cn = 0;
  for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
    const auto& a = e.cn_enumerator(t);
    LD val = 0, dz = 0;
    for (int u = 0; u <= a.length(); ++u) {
      const LD term = static_cast<LD>(a.coeffs[u]) * std::pow(z, static_cast<LD>(u));
      val += term;
      dz += u * term;
    }
    cn += e.gamma(t) * dz / val;
  }
  const LD ratio = static_cast<LD>(e.int_rho()) / e.int_lambda();
  const LD il = e.int_lambda();
  const LD r1 = std::abs(ratio * cn - beta) / beta;
  const LD r2 = std::abs(vn_x - p.alpha) / p.alpha;
  const LD r3 = std::abs(vn_y - beta) / beta;
  const LD r4 = std::abs(beta * il * (1 + y * z) - y * z) / (y * z);
  return static_cast<double>(std::max({r1, r2, r3, r4}));
}

double growth_rate_at(const Ensemble& e, const SpectralPoint& p) {
  double g = -p.alpha * std::log(p.x0);
  for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    double val = 0;
    for (int u = 0; u <= b.in_length; ++u) {
      for (int v = 0; v <= b.out_length; ++v) {
        val += static_cast<double>(b.at(u, v)) * std::pow(p.x0, u) * std::pow(p.y0, v);
      }
    }
    g += e.delta(t) * std::log(val);
  }
  double cn = 0;
  for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
    const auto& a = e.cn_enumerator(t);
    double val = 0;
    for (int u = 0; u <= a.length(); ++u) val += static_cast<double>(a.coeffs[u]) * std::pow(p.z0, u);
    cn += e.gamma(t) * std::log(val);
  }
  g += e.int_rho() / e.int_lambda() * cn;
  g += std::log1p(-p.beta * e.int_lambda()) / e.int_lambda();
  return g;
}

}  // namespace dgldpc
