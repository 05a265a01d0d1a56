#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dgldpc/binary_matrix.hpp"

namespace dgldpc {

enum class EnumeratorKind { Weight, StoppingBD, StoppingMAP };

std::string to_string(EnumeratorKind kind);

using Count = std::int64_t;

/// Univariate enumerator A(z) = sum_u A_u z^u of a local code (CN side).
///
/// The same container holds a weight enumerator, a bounded-distance stopping-set
/// enumerator or a MAP stopping-set enumerator, distinguished by `kind`.
struct WeightEnumerator {
  EnumeratorKind kind = EnumeratorKind::Weight;
  std::vector<Count> coeffs;  // index u = 0..s

  int length() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  /// Smallest u > 0 with A_u > 0, or 0 if the enumerator is trivial.
  int min_distance() const noexcept;
  /// Largest u with A_u > 0.
  int max_weight() const noexcept;
  Count total() const noexcept;

  friend bool operator==(const WeightEnumerator&, const WeightEnumerator&) = default;
};

/// Bivariate enumerator B(x, y) = sum_{u,v} B_{u,v} x^u y^v of a VN encoder:
/// u counts information bits, v counts code bits.
struct IOWeightEnumerator {
  EnumeratorKind kind = EnumeratorKind::Weight;
  int in_length = 0;   // k
  int out_length = 0;  // q
  std::vector<Count> coeffs;  // row-major, (k+1) x (q+1)

  IOWeightEnumerator() = default;
  IOWeightEnumerator(EnumeratorKind kind, int k, int q)
      : kind(kind), in_length(k), out_length(q), coeffs(static_cast<std::size_t>((k + 1) * (q + 1)), 0) {}

  Count at(int u, int v) const { return coeffs[static_cast<std::size_t>(u * (out_length + 1) + v)]; }
  Count& at(int u, int v) { return coeffs[static_cast<std::size_t>(u * (out_length + 1) + v)]; }

  /// Smallest v > 0 with some B_{u,v} > 0 (the VN minimum distance p for the weight kind).
  int min_output_weight() const noexcept;
  /// Sum over u of B_{u,v}, i.e. the output-weight enumerator.
  std::vector<Count> output_marginal() const;
  Count total() const noexcept;

  friend bool operator==(const IOWeightEnumerator&, const IOWeightEnumerator&) = default;
};

/// A_u = number of information words whose codeword has weight u. Rejects codes with minimum distance 1.
WeightEnumerator weight_enumerator(const BinaryMatrix& g);

/// B_{u,v} = number of information words of weight u encoding to weight v. Rejects minimum distance 1.
IOWeightEnumerator io_weight_enumerator(const BinaryMatrix& g);

/// Bounded-distance stopping-set enumerator 1 + sum_{u>=r} C(s,u) z^u built from a weight enumerator.
WeightEnumerator bd_ssef(const WeightEnumerator& wef);

/// MAP stopping-set enumerator: erasure sets V such that every erased column of g lies outside
/// the span of the non-erased columns.
WeightEnumerator map_ssef(const BinaryMatrix& g);

/// Input-output MAP stopping-set enumerator: pairs (U, V) of erased information and code positions
/// such that, knowing the remaining information bits and code bits, none of the erased ones is
/// determined. Requires k + q <= 26.
IOWeightEnumerator io_map_ssef(const BinaryMatrix& g);

/// True iff the all-ones word lies in the row space of g.
bool has_all_ones_codeword(const BinaryMatrix& g);

/// True iff A_{ubar-u} = A_u for 0 <= u <= ubar.
bool is_symmetric(const WeightEnumerator& e);

/// True iff the enumerator is exactly 1 + x y^q (length-q repetition encoder).
bool is_repetition(const IOWeightEnumerator& e);

/// "1 + 7z^3 + 7z^4 + z^7" style rendering.
std::string to_polynomial_string(const WeightEnumerator& e, char var = 'z');
std::string to_polynomial_string(const IOWeightEnumerator& e);

}  // namespace dgldpc
