#include "dgldpc/oracle.hpp"

#include <cmath>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

using Poly = std::vector<BigInt>;

// Bivariate polynomial in (x, y) stored row-major by x-degree.
struct Poly2 {
  long nx = 0, ny = 0;  // max degrees
  std::vector<BigInt> c;
  BigInt& at(long u, long v) { return c[static_cast<std::size_t>(u * (ny + 1) + v)]; }
  const BigInt& at(long u, long v) const { return c[static_cast<std::size_t>(u * (ny + 1) + v)]; }
};

long checked_count(double x, const std::string& what, long minimal_n) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-7 * std::max(1.0, std::abs(x))) {
    throw IntegralityError(what + " = " + std::to_string(x) + " is not an integer", minimal_n);
  }
  return static_cast<long>(r);
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Poly power(const Poly& base, long k) {
  Poly result{1};
  for (long i = 0; i < k; ++i) result = multiply(result, base);
  return result;
}

// prod_t A_t(z)^{m_t}: number of check-valid edge assignments by edge weight.
Poly check_valid_counts(const Ensemble& e, const FiniteInstance& inst) {
  Poly acc{1};
  for (std::size_t t = 0; t < e.check_nodes().size(); ++t) {
    const auto& a = e.cn_enumerator(t);
    Poly base(a.coeffs.begin(), a.coeffs.end());
    acc = multiply(acc, power(base, inst.cn_counts[t]));
  }
  return acc;
}

Poly2 variable_counts(const Ensemble& e, const FiniteInstance& inst) {
  Poly2 acc{0, 0, {BigInt(1)}};
  for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
    const auto& b = e.vn_enumerator(t);
    for (long rep = 0; rep < inst.vn_counts[t]; ++rep) {
      Poly2 next{acc.nx + b.in_length, acc.ny + b.out_length, {}};
      next.c.assign(static_cast<std::size_t>((next.nx + 1) * (next.ny + 1)), BigInt(0));
      for (long u = 0; u <= acc.nx; ++u) {
        for (long v = 0; v <= acc.ny; ++v) {
          const BigInt& x = acc.at(u, v);
          if (x == 0) continue;
          for (int du = 0; du <= b.in_length; ++du) {
            for (int dv = 0; dv <= b.out_length; ++dv) {
              if (b.at(du, dv) != 0) next.at(u + du, v + dv) += x * b.at(du, dv);
            }
          }
        }
      }
      acc = std::move(next);
    }
  }
  return acc;
}

std::vector<BigInt> binomial_row(long n) {
  std::vector<BigInt> row(static_cast<std::size_t>(n + 1));
  row[0] = 1;
  for (long k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return row;
}

double log_bigint(const BigInt& x) {
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const auto shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace

FiniteInstance make_instance(const Ensemble& e, long n) {
  const long minimal = e.minimal_admissible_n();
  if (n < 1) throw IntegralityError("n must be positive", minimal);
  FiniteInstance inst;
  inst.n = n;
  inst.E = checked_count(n / e.int_lambda(), "edge count E", minimal);
  for (const auto& v : e.variable_nodes()) {
    inst.vn_counts.push_back(checked_count(inst.E * v.lambda / v.length, "count of VN type '" + v.name + "'", minimal));
    inst.info_length += inst.vn_counts.back() * v.dimension;
  }
  for (const auto& c : e.check_nodes()) {
    inst.cn_counts.push_back(checked_count(inst.E * c.rho / c.length, "count of CN type '" + c.name + "'", minimal));
    inst.m += inst.cn_counts.back();
  }
  if (inst.E > kMaxOracleEdges) {
    throw EnumerationBound("exact oracle supports at most " + std::to_string(kMaxOracleEdges) + " edges (got " +
                           std::to_string(inst.E) + ")");
  }
  return inst;
}

ExactProfile::ExactProfile(const Ensemble& e, const FiniteInstance& inst) : inst_(inst) {
  const Poly nc = check_valid_counts(e, inst);
  const Poly2 vc = variable_counts(e, inst);
  if (static_cast<long>(nc.size()) - 1 != inst.E || vc.ny != inst.E || vc.nx != inst.info_length) {
    throw Error("instance does not match the ensemble's edge count");
  }
  const auto binom = binomial_row(inst.E);
  values_.assign(static_cast<std::size_t>(inst.info_length + 1), BigRational(0));
  for (long w = 0; w <= inst.info_length; ++w) {
    BigRational sum = 0;
    for (long v = 0; v <= inst.E; ++v) {
      const BigInt& p = vc.at(w, v);
      if (p == 0 || nc[v] == 0) continue;
      sum += BigRational(nc[v] * p, binom[v]);
    }
    values_[w] = sum;
  }
}

BigRational ExactProfile::total() const {
  BigRational s = 0;
  for (const auto& v : values_) s += v;
  return s;
}

BigRational exact_expected_enumerator(const Ensemble& e, const FiniteInstance& inst, long w) {
  if (w < 0 || w > inst.info_length) throw DomainError("weight outside [0, N]");
  return ExactProfile(e, inst).expected(w);
}

BigRational exact_expected_total(const Ensemble& e, const FiniteInstance& inst) {
  const Poly nc = check_valid_counts(e, inst);
  Poly vn{1};
  for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) {
    const auto marginal = e.vn_enumerator(t).output_marginal();
    Poly base(marginal.begin(), marginal.end());
    vn = multiply(vn, power(base, inst.vn_counts[t]));
  }
  const auto binom = binomial_row(inst.E);
  BigRational sum = 0;
  for (long v = 0; v <= inst.E; ++v) {
    if (nc[v] != 0 && vn[v] != 0) sum += BigRational(nc[v] * vn[v], binom[v]);
  }
  return sum;
}

double log_rational(const BigRational& r) {
  if (r <= 0) throw DomainError("log of a non-positive rational");
  return log_bigint(boost::multiprecision::numerator(r)) - log_bigint(boost::multiprecision::denominator(r));
}

std::vector<EmpiricalPoint> empirical_growth(const Ensemble& e, const std::vector<long>& ns, double alpha) {
  if (alpha < 0.0) throw DomainError("alpha must be non-negative");
  std::vector<EmpiricalPoint> out;
  for (long n : ns) {
    const auto inst = make_instance(e, n);
    const ExactProfile profile(e, inst);
    EmpiricalPoint pt;
    pt.n = n;
    pt.target = alpha * n;
    const long top = profile.max_weight();
    auto positive = [&](long w) { return w >= 0 && w <= top && profile.expected(w) > 0; };
    long lo = std::min(static_cast<long>(std::floor(pt.target)), top);
    long hi = std::max(static_cast<long>(std::ceil(pt.target)), 0L);
    while (lo >= 0 && !positive(lo)) --lo;
    while (hi <= top && !positive(hi)) ++hi;
    if (lo < 0 && hi > top) {
      out.push_back(pt);
      continue;
    }
    if (lo < 0) lo = hi;
    if (hi > top) hi = lo;
    pt.w_low = lo;
    pt.w_high = hi;
    const double log_lo = log_rational(profile.expected(lo));
    if (lo == hi) {
      pt.exponent = log_lo / n;
    } else {
      const double log_hi = log_rational(profile.expected(hi));
      const double t = (pt.target - lo) / static_cast<double>(hi - lo);
      pt.exponent = (log_lo + t * (log_hi - log_lo)) / n;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace dgldpc
