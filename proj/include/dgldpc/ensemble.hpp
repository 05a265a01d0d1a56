#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgldpc/binary_matrix.hpp"
#include "dgldpc/enumerators.hpp"

namespace dgldpc {

/// A check-node type: local code plus the fraction of edges (rho) attached to it.
struct CheckNodeType {
  std::string name;
  double rho = 0.0;
  int length = 0;     // s
  int dimension = 0;  // h
  WeightEnumerator weight;
  WeightEnumerator stopping_bd;
  std::optional<WeightEnumerator> stopping_map;
  std::optional<BinaryMatrix> generator;

  /// All enumerators computed from g. When `expected_weight` is given it must match.
  static CheckNodeType from_generator(std::string name, double rho, const BinaryMatrix& g,
                                      const std::optional<WeightEnumerator>& expected_weight = std::nullopt);

  /// For codes known only through their weight enumerator. The MAP stopping-set enumerator
  /// is optional because it cannot be derived from the weight enumerator.
  static CheckNodeType from_enumerator(std::string name, double rho, int dimension, WeightEnumerator weight,
                                       std::optional<WeightEnumerator> stopping_map = std::nullopt);

  bool has(EnumeratorKind kind) const noexcept;
  const WeightEnumerator& enumerator(EnumeratorKind kind) const;
};

/// A variable-node type: local encoder plus the fraction of edges (lambda) attached to it.
struct VariableNodeType {
  std::string name;
  double lambda = 0.0;
  int length = 0;     // q
  int dimension = 0;  // k
  IOWeightEnumerator weight;
  std::optional<IOWeightEnumerator> stopping_map;
  std::optional<BinaryMatrix> generator;

  static VariableNodeType from_generator(std::string name, double lambda, const BinaryMatrix& g,
                                         const std::optional<IOWeightEnumerator>& expected_weight = std::nullopt);

  static VariableNodeType from_enumerator(std::string name, double lambda, IOWeightEnumerator weight,
                                          std::optional<IOWeightEnumerator> stopping_map = std::nullopt);

  /// Length-q repetition VN (B = 1 + x y^q for both the weight and the stopping kinds).
  static VariableNodeType repetition(std::string name, double lambda, int q);

  bool has(EnumeratorKind kind) const noexcept;
  /// The BD stopping kind is defined only at check nodes; VNs always use the MAP IO enumerator for it.
  const IOWeightEnumerator& enumerator(EnumeratorKind kind) const;
};

/// Irregular doubly-generalized LDPC ensemble with one active enumerator kind.
///
/// All derived quantities are normalized per variable node, e.g. `edges_per_vn()` is E/n.
class Ensemble {
 public:
  static constexpr double kFractionTolerance = 1e-12;

  Ensemble(std::vector<VariableNodeType> vns, std::vector<CheckNodeType> cns,
           EnumeratorKind kind = EnumeratorKind::Weight, std::string label = {});

  EnumeratorKind kind() const noexcept { return kind_; }
  /// Same node types with a different active enumerator kind.
  Ensemble with_kind(EnumeratorKind kind) const;

  const std::string& label() const noexcept { return label_; }
  std::span<const VariableNodeType> variable_nodes() const noexcept { return vns_; }
  std::span<const CheckNodeType> check_nodes() const noexcept { return cns_; }

  const IOWeightEnumerator& vn_enumerator(std::size_t t) const { return vns_.at(t).enumerator(kind_); }
  const WeightEnumerator& cn_enumerator(std::size_t t) const { return cns_.at(t).enumerator(kind_); }

  double int_lambda() const noexcept { return int_lambda_; }
  double int_rho() const noexcept { return int_rho_; }
  /// Fraction of CNs of type t.
  double gamma(std::size_t t) const { return gamma_.at(t); }
  /// Fraction of VNs of type t.
  double delta(std::size_t t) const { return delta_.at(t); }
  double design_rate() const noexcept { return design_rate_; }
  /// K_s = N / n.
  double block_length_ratio() const noexcept { return block_length_ratio_; }
  /// Maximum normalized edge weight the CN local codes support (active kind).
  double m_bar() const noexcept { return m_bar_; }
  double edges_per_vn() const noexcept { return 1.0 / int_lambda_; }
  double checks_per_vn() const noexcept { return int_rho_ / int_lambda_; }
  /// Number of parity-check equations per VN (distinct from m_bar()).
  double parity_checks_per_vn() const noexcept;

  /// Repetition length q when every VN is a length-q repetition code.
  std::optional<int> check_hybrid_length() const;

  /// Smallest n making every per-type node count and the edge count integral, or 0 if none <= limit.
  long minimal_admissible_n(long limit = 1000000) const;

 private:
  std::vector<VariableNodeType> vns_;
  std::vector<CheckNodeType> cns_;
  EnumeratorKind kind_;
  std::string label_;
  double int_lambda_ = 0.0;
  double int_rho_ = 0.0;
  std::vector<double> gamma_;
  std::vector<double> delta_;
  double design_rate_ = 0.0;
  double block_length_ratio_ = 0.0;
  double m_bar_ = 0.0;
};

inline Ensemble build_ensemble(std::vector<VariableNodeType> vns, std::vector<CheckNodeType> cns,
                               EnumeratorKind kind = EnumeratorKind::Weight) {
  return Ensemble(std::move(vns), std::move(cns), kind);
}

inline double block_length_ratio(const Ensemble& e) { return e.block_length_ratio(); }

struct AssumptionReport {
  std::vector<std::string> violations;
  bool min_distance_ok = true;
  /// Every local code has dual distance > 1, so the alpha = K_s/2 stationary point applies.
  bool dual_distance_ok = true;
  bool has_distance2_cn = false;
  bool has_distance2_vn = false;
  double parity_checks_per_vn = 0.0;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the standing assumptions on the weight enumerators (report only, never throws).
AssumptionReport validate_assumptions(const Ensemble& e);

}  // namespace dgldpc
