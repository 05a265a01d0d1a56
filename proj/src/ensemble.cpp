#include "dgldpc/ensemble.hpp"

#include <cmath>
#include <numeric>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

void check_cn_enumerator(const WeightEnumerator& e, int dimension) {
  if (e.coeffs.empty() || e.coeffs[0] != 1) throw InvalidCode("check-node enumerator must have A_0 = 1");
  for (auto c : e.coeffs) {
    if (c < 0) throw InvalidCode("check-node enumerator has a negative coefficient");
  }
  if (e.kind == EnumeratorKind::Weight) {
    if (e.min_distance() < 2) throw InvalidCode("check-node code must have minimum distance >= 2");
    if (dimension < 0 || dimension > 62 || e.total() != (Count{1} << dimension)) {
      throw InvalidCode("check-node weight enumerator does not sum to 2^h");
    }
  }
}

void check_vn_enumerator(const IOWeightEnumerator& e) {
  if (e.coeffs.size() != static_cast<std::size_t>((e.in_length + 1) * (e.out_length + 1))) {
    throw InvalidCode("variable-node enumerator has inconsistent dimensions");
  }
  if (e.at(0, 0) != 1) throw InvalidCode("variable-node enumerator must have B_{0,0} = 1");
  for (int v = 1; v <= e.out_length; ++v) {
    if (e.at(0, v) != 0) throw InvalidCode("variable-node enumerator must have B_{0,v} = 0 for v > 0");
  }
  for (auto c : e.coeffs) {
    if (c < 0) throw InvalidCode("variable-node enumerator has a negative coefficient");
  }
  if (e.kind == EnumeratorKind::Weight) {
    if (e.min_output_weight() < 2) throw InvalidCode("variable-node code must have minimum distance >= 2");
    if (e.in_length > 62 || e.total() != (Count{1} << e.in_length)) {
      throw InvalidCode("variable-node IO weight enumerator does not sum to 2^k");
    }
  }
}

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-7 * std::max(1.0, std::abs(x)); }

// Average codeword weight equals half the length iff no coordinate is identically zero.
bool dual_distance_exceeds_one(const std::vector<Count>& wef) {
  const int s = static_cast<int>(wef.size()) - 1;
  Count total = 0;
  Count weighted = 0;
  for (int u = 0; u <= s; ++u) {
    total += wef[u];
    weighted += u * wef[u];
  }
  return 2 * weighted == s * total;
}

}  // namespace

CheckNodeType CheckNodeType::from_generator(std::string name, double rho, const BinaryMatrix& g,
                                            const std::optional<WeightEnumerator>& expected_weight) {
  CheckNodeType t;
  t.name = std::move(name);
  t.rho = rho;
  t.length = g.cols();
  t.dimension = g.rows();
  t.weight = weight_enumerator(g);
  if (expected_weight && !(*expected_weight == t.weight)) {
    throw InvalidCode("check node '" + t.name + "': given weight enumerator " +
                      to_polynomial_string(*expected_weight) + " disagrees with the generator matrix (" +
                      to_polynomial_string(t.weight) + ")");
  }
  t.stopping_bd = bd_ssef(t.weight);
  t.stopping_map = map_ssef(g);
  t.generator = g;
  return t;
}

CheckNodeType CheckNodeType::from_enumerator(std::string name, double rho, int dimension, WeightEnumerator weight,
                                             std::optional<WeightEnumerator> stopping_map) {
  weight.kind = EnumeratorKind::Weight;
  check_cn_enumerator(weight, dimension);
  CheckNodeType t;
  t.name = std::move(name);
  t.rho = rho;
  t.length = weight.length();
  t.dimension = dimension;
  t.stopping_bd = bd_ssef(weight);
  t.weight = std::move(weight);
  if (stopping_map) {
    stopping_map->kind = EnumeratorKind::StoppingMAP;
    if (stopping_map->length() != t.length) throw InvalidCode("MAP stopping enumerator length mismatch");
    check_cn_enumerator(*stopping_map, dimension);
    t.stopping_map = std::move(stopping_map);
  }
  return t;
}

bool CheckNodeType::has(EnumeratorKind kind) const noexcept {
  return kind != EnumeratorKind::StoppingMAP || stopping_map.has_value();
}

const WeightEnumerator& CheckNodeType::enumerator(EnumeratorKind kind) const {
  switch (kind) {
    case EnumeratorKind::Weight:
      return weight;
    case EnumeratorKind::StoppingBD:
      return stopping_bd;
    case EnumeratorKind::StoppingMAP:
      if (!stopping_map) throw EnsembleError("check node '" + name + "' has no MAP stopping-set enumerator");
      return *stopping_map;
  }
  throw EnsembleError("unknown enumerator kind");
}

VariableNodeType VariableNodeType::from_generator(std::string name, double lambda, const BinaryMatrix& g,
                                                  const std::optional<IOWeightEnumerator>& expected_weight) {
  VariableNodeType t;
  t.name = std::move(name);
  t.lambda = lambda;
  t.length = g.cols();
  t.dimension = g.rows();
  t.weight = io_weight_enumerator(g);
  if (expected_weight && !(*expected_weight == t.weight)) {
    throw InvalidCode("variable node '" + t.name + "': given IO weight enumerator disagrees with the generator matrix");
  }
  if (g.rows() + g.cols() <= 26) t.stopping_map = io_map_ssef(g);
  t.generator = g;
  return t;
}

VariableNodeType VariableNodeType::from_enumerator(std::string name, double lambda, IOWeightEnumerator weight,
                                                   std::optional<IOWeightEnumerator> stopping_map) {
  weight.kind = EnumeratorKind::Weight;
  check_vn_enumerator(weight);
  VariableNodeType t;
  t.name = std::move(name);
  t.lambda = lambda;
  t.length = weight.out_length;
  t.dimension = weight.in_length;
  t.weight = std::move(weight);
  if (stopping_map) {
    stopping_map->kind = EnumeratorKind::StoppingMAP;
    if (stopping_map->in_length != t.dimension || stopping_map->out_length != t.length) {
      throw InvalidCode("IO stopping enumerator dimensions mismatch");
    }
    check_vn_enumerator(*stopping_map);
    t.stopping_map = std::move(stopping_map);
  }
  return t;
}

VariableNodeType VariableNodeType::repetition(std::string name, double lambda, int q) {
  return from_generator(std::move(name), lambda, BinaryMatrix::repetition(q));
}

bool VariableNodeType::has(EnumeratorKind kind) const noexcept {
  return kind == EnumeratorKind::Weight || stopping_map.has_value();
}

const IOWeightEnumerator& VariableNodeType::enumerator(EnumeratorKind kind) const {
  if (kind == EnumeratorKind::Weight) return weight;
  if (!stopping_map) throw EnsembleError("variable node '" + name + "' has no IO stopping-set enumerator");
  return *stopping_map;
}

Ensemble::Ensemble(std::vector<VariableNodeType> vns, std::vector<CheckNodeType> cns, EnumeratorKind kind,
                   std::string label)
    : vns_(std::move(vns)), cns_(std::move(cns)), kind_(kind), label_(std::move(label)) {
  if (vns_.empty()) throw EnsembleError("ensemble needs at least one variable-node type");
  if (cns_.empty()) throw EnsembleError("ensemble needs at least one check-node type");

  double lambda_sum = 0.0;
  for (std::size_t t = 0; t < vns_.size(); ++t) {
    const auto& v = vns_[t];
    if (!(v.lambda > 0.0 && v.lambda <= 1.0)) {
      throw EnsembleError("variable node '" + v.name + "': lambda must lie in (0, 1]", static_cast<int>(t));
    }
    if (!v.has(kind_)) {
      throw EnsembleError("variable node '" + v.name + "' lacks the " + to_string(kind_) + " enumerator",
                          static_cast<int>(t));
    }
    try {
      check_vn_enumerator(v.weight);
    } catch (const InvalidCode& ex) {
      throw EnsembleError("variable node '" + v.name + "': " + ex.what(), static_cast<int>(t));
    }
    lambda_sum += v.lambda;
  }
  double rho_sum = 0.0;
  for (std::size_t t = 0; t < cns_.size(); ++t) {
    const auto& c = cns_[t];
    if (!(c.rho > 0.0 && c.rho <= 1.0)) {
      throw EnsembleError("check node '" + c.name + "': rho must lie in (0, 1]", static_cast<int>(t));
    }
    if (!c.has(kind_)) {
      throw EnsembleError("check node '" + c.name + "' lacks the " + to_string(kind_) + " enumerator",
                          static_cast<int>(t));
    }
    try {
      check_cn_enumerator(c.weight, c.dimension);
    } catch (const InvalidCode& ex) {
      throw EnsembleError("check node '" + c.name + "': " + ex.what(), static_cast<int>(t));
    }
    rho_sum += c.rho;
  }
  if (std::abs(lambda_sum - 1.0) > kFractionTolerance) {
    throw EnsembleError("variable-node edge fractions sum to " + std::to_string(lambda_sum) + ", not 1");
  }
  if (std::abs(rho_sum - 1.0) > kFractionTolerance) {
    throw EnsembleError("check-node edge fractions sum to " + std::to_string(rho_sum) + ", not 1");
  }

  double vn_info = 0.0;  // sum lambda_t k_t / q_t
  for (const auto& v : vns_) {
    int_lambda_ += v.lambda / v.length;
    vn_info += v.lambda * v.dimension / v.length;
  }
  double cn_redundancy = 0.0;  // sum rho_t (1 - R_t)
  for (const auto& c : cns_) {
    int_rho_ += c.rho / c.length;
    cn_redundancy += c.rho * (1.0 - static_cast<double>(c.dimension) / c.length);
    m_bar_ += c.rho * c.enumerator(kind_).max_weight() / c.length;
  }
  for (const auto& v : vns_) delta_.push_back(v.lambda / (v.length * int_lambda_));
  for (const auto& c : cns_) gamma_.push_back(c.rho / (c.length * int_rho_));

  design_rate_ = 1.0 - cn_redundancy / vn_info;
  block_length_ratio_ = vn_info / int_lambda_;
  if (!(design_rate_ > 0.0 && design_rate_ < 1.0)) {
    throw EnsembleError("design rate " + std::to_string(design_rate_) + " is outside (0, 1)");
  }
}

Ensemble Ensemble::with_kind(EnumeratorKind kind) const { return Ensemble(vns_, cns_, kind, label_); }

double Ensemble::parity_checks_per_vn() const noexcept {
  double sum = 0.0;
  for (const auto& c : cns_) sum += c.rho * (c.length - c.dimension) / c.length;
  return sum / int_lambda_;
}

std::optional<int> Ensemble::check_hybrid_length() const {
  const int q = vns_.front().length;
  for (const auto& v : vns_) {
    if (v.length != q || !is_repetition(v.weight)) return std::nullopt;
  }
  return q;
}

long Ensemble::minimal_admissible_n(long limit) const {
  for (long n = 1; n <= limit; ++n) {
    const double edges = n / int_lambda_;
    if (!near_integer(edges)) continue;
    bool ok = true;
    for (const auto& v : vns_) {
      if (!near_integer(edges * v.lambda / v.length)) {
        ok = false;
        break;
      }
    }
    for (std::size_t t = 0; ok && t < cns_.size(); ++t) {
      ok = near_integer(edges * cns_[t].rho / cns_[t].length);
    }
    if (ok) return n;
  }
  return 0;
}

AssumptionReport validate_assumptions(const Ensemble& e) {
  AssumptionReport r;
  r.parity_checks_per_vn = e.parity_checks_per_vn();
  for (const auto& c : e.check_nodes()) {
    const int d = c.weight.min_distance();
    if (d < 2) {
      r.min_distance_ok = false;
      r.violations.push_back("check node '" + c.name + "' has minimum distance " + std::to_string(d) + " < 2");
    }
    if (d == 2) r.has_distance2_cn = true;
    if (!dual_distance_exceeds_one(c.weight.coeffs)) {
      r.dual_distance_ok = false;
      r.violations.push_back("check node '" + c.name + "' has a coordinate fixed to zero (dual distance 1)");
    }
  }
  for (const auto& v : e.variable_nodes()) {
    const int d = v.weight.min_output_weight();
    if (d < 2) {
      r.min_distance_ok = false;
      r.violations.push_back("variable node '" + v.name + "' has minimum distance " + std::to_string(d) + " < 2");
    }
    if (d == 2) r.has_distance2_vn = true;
    if (!dual_distance_exceeds_one(v.weight.output_marginal())) {
      r.dual_distance_ok = false;
      r.violations.push_back("variable node '" + v.name + "' has a coordinate fixed to zero (dual distance 1)");
    }
  }
  return r;
}

}  // namespace dgldpc
