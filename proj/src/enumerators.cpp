#include "dgldpc/enumerators.hpp"

#include <bit>
#include <numeric>
#include <sstream>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

constexpr int kMaxIoSsefBits = 26;

Count binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Count c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void append_term(std::ostringstream& os, bool& first, Count c, const std::string& monomial) {
  if (c == 0) return;
  if (!first) os << " + ";
  first = false;
  if (monomial.empty()) {
    os << c;
  } else if (c == 1) {
    os << monomial;
  } else {
    os << c << monomial;
  }
}

std::string power(char var, int e) {
  if (e == 0) return "";
  if (e == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(e);
}

}  // namespace

std::string to_string(EnumeratorKind kind) {
  switch (kind) {
    case EnumeratorKind::Weight:
      return "weight";
    case EnumeratorKind::StoppingBD:
      return "ss-bd";
    case EnumeratorKind::StoppingMAP:
      return "ss-map";
  }
  return "unknown";
}

int WeightEnumerator::min_distance() const noexcept {
  for (int u = 1; u <= length(); ++u) {
    if (coeffs[u] > 0) return u;
  }
  return 0;
}

int WeightEnumerator::max_weight() const noexcept {
  for (int u = length(); u >= 0; --u) {
    if (coeffs[u] > 0) return u;
  }
  return 0;
}

Count WeightEnumerator::total() const noexcept { return std::accumulate(coeffs.begin(), coeffs.end(), Count{0}); }

int IOWeightEnumerator::min_output_weight() const noexcept {
  for (int v = 1; v <= out_length; ++v) {
    for (int u = 0; u <= in_length; ++u) {
      if (at(u, v) > 0) return v;
    }
  }
  return 0;
}

std::vector<Count> IOWeightEnumerator::output_marginal() const {
  std::vector<Count> m(out_length + 1, 0);
  for (int u = 0; u <= in_length; ++u) {
    for (int v = 0; v <= out_length; ++v) m[v] += at(u, v);
  }
  return m;
}

Count IOWeightEnumerator::total() const noexcept { return std::accumulate(coeffs.begin(), coeffs.end(), Count{0}); }

WeightEnumerator weight_enumerator(const BinaryMatrix& g) {
  WeightEnumerator e{EnumeratorKind::Weight, std::vector<Count>(g.cols() + 1, 0)};
  const std::uint32_t n_info = 1u << g.rows();
  // Gray-code walk: consecutive information words differ in one row.
  std::uint32_t cw = 0;
  e.coeffs[0] = 1;
  for (std::uint32_t i = 1; i < n_info; ++i) {
    cw ^= g.row(std::countr_zero(i));
    ++e.coeffs[std::popcount(cw)];
  }
  if (e.min_distance() < 2) {
    throw InvalidCode("local code has minimum distance 1; weight enumerators require distance >= 2");
  }
  return e;
}

IOWeightEnumerator io_weight_enumerator(const BinaryMatrix& g) {
  IOWeightEnumerator e(EnumeratorKind::Weight, g.rows(), g.cols());
  const std::uint32_t n_info = 1u << g.rows();
  std::uint32_t cw = 0;
  std::uint32_t info = 0;
  e.at(0, 0) = 1;
  for (std::uint32_t i = 1; i < n_info; ++i) {
    const int r = std::countr_zero(i);
    cw ^= g.row(r);
    info ^= 1u << r;
    ++e.at(std::popcount(info), std::popcount(cw));
  }
  if (e.min_output_weight() < 2) {
    throw InvalidCode("VN local code has minimum distance 1; IO enumerators require distance >= 2");
  }
  return e;
}

WeightEnumerator bd_ssef(const WeightEnumerator& wef) {
  const int s = wef.length();
  const int r = wef.min_distance();
  WeightEnumerator out{EnumeratorKind::StoppingBD, std::vector<Count>(s + 1, 0)};
  out.coeffs[0] = 1;
  if (r == 0) return out;
  for (int u = r; u <= s; ++u) out.coeffs[u] = binomial(s, u);
  return out;
}

WeightEnumerator map_ssef(const BinaryMatrix& g) {
  const int q = g.cols();
  std::vector<std::uint32_t> cols(q);
  for (int c = 0; c < q; ++c) cols[c] = g.column(c);

  WeightEnumerator e{EnumeratorKind::StoppingMAP, std::vector<Count>(q + 1, 0)};
  const std::uint32_t full = (1u << q) - 1u;
  for (std::uint32_t erased = 0; erased <= full; ++erased) {
    Gf2Basis known;
    for (int c = 0; c < q; ++c) {
      if (!((erased >> c) & 1u)) known.insert(cols[c]);
    }
    bool stopping = true;
    for (std::uint32_t rest = erased; rest != 0 && stopping; rest &= rest - 1) {
      stopping = !known.contains(cols[std::countr_zero(rest)]);
    }
    if (stopping) ++e.coeffs[std::popcount(erased)];
  }
  return e;
}

IOWeightEnumerator io_map_ssef(const BinaryMatrix& g) {
  const int k = g.rows();
  const int q = g.cols();
  if (k + q > kMaxIoSsefBits) {
    throw EnumerationBound("IO stopping-set enumeration needs k + q <= " + std::to_string(kMaxIoSsefBits) +
                           " (got " + std::to_string(k + q) + ")");
  }
  std::vector<std::uint32_t> cols(q);
  for (int c = 0; c < q; ++c) cols[c] = g.column(c);

  IOWeightEnumerator e(EnumeratorKind::StoppingMAP, k, q);
  const std::uint32_t code_full = (1u << q) - 1u;
  const std::uint32_t info_full = (1u << k) - 1u;
  for (std::uint32_t erased_code = 0; erased_code <= code_full; ++erased_code) {
    Gf2Basis from_code;
    for (int c = 0; c < q; ++c) {
      if (!((erased_code >> c) & 1u)) from_code.insert(cols[c]);
    }
    for (std::uint32_t erased_info = 0; erased_info <= info_full; ++erased_info) {
      Gf2Basis known = from_code;
      for (int i = 0; i < k; ++i) {
        if (!((erased_info >> i) & 1u)) known.insert(1u << i);
      }
      bool stopping = true;
      for (std::uint32_t rest = erased_info; rest != 0 && stopping; rest &= rest - 1) {
        stopping = !known.contains(1u << std::countr_zero(rest));
      }
      for (std::uint32_t rest = erased_code; rest != 0 && stopping; rest &= rest - 1) {
        stopping = !known.contains(cols[std::countr_zero(rest)]);
      }
      if (stopping) ++e.at(std::popcount(erased_info), std::popcount(erased_code));
    }
  }
  return e;
}

bool has_all_ones_codeword(const BinaryMatrix& g) {
  Gf2Basis rows;
  for (int r = 0; r < g.rows(); ++r) rows.insert(g.row(r));
  return rows.contains((1u << g.cols()) - 1u);
}

bool is_symmetric(const WeightEnumerator& e) {
  const int top = e.max_weight();
  for (int u = 0; u <= top; ++u) {
    if (e.coeffs[u] != e.coeffs[top - u]) return false;
  }
  return true;
}

bool is_repetition(const IOWeightEnumerator& e) {
  if (e.in_length != 1) return false;
  for (int v = 0; v <= e.out_length; ++v) {
    if (e.at(0, v) != (v == 0 ? 1 : 0)) return false;
    if (e.at(1, v) != (v == e.out_length ? 1 : 0)) return false;
  }
  return true;
}

std::string to_polynomial_string(const WeightEnumerator& e, char var) {
  std::ostringstream os;
  bool first = true;
  for (int u = 0; u <= e.length(); ++u) append_term(os, first, e.coeffs[u], power(var, u));
  if (first) os << 0;
  return os.str();
}

std::string to_polynomial_string(const IOWeightEnumerator& e) {
  std::ostringstream os;
  bool first = true;
  for (int u = 0; u <= e.in_length; ++u) {
    for (int v = 0; v <= e.out_length; ++v) append_term(os, first, e.at(u, v), power('x', u) + power('y', v));
  }
  if (first) os << 0;
  return os.str();
}

}  // namespace dgldpc
