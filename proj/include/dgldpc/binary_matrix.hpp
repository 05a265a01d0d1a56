#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dgldpc {

/// Generator matrix of a binary linear local code.
///
/// Each row is packed into a 32-bit word; bit `c` of a row word holds column `c`.
/// Construction enforces 1 <= k <= q <= 24, full row rank and the absence of all-zero
/// columns (equivalently, dual distance greater than one).
class BinaryMatrix {
 public:
  static constexpr int kMaxLength = 24;

  BinaryMatrix(int rows, int cols, std::vector<std::uint32_t> row_bits);

  /// Parses rows written as strings of '0'/'1', leftmost character is column 0.
  static BinaryMatrix from_strings(const std::vector<std::string>& rows);

  /// 1 x q all-ones generator.
  static BinaryMatrix repetition(int length);
  /// (q-1) x q generator whose row i has ones at columns i and i+1.
  static BinaryMatrix spc_cyclic(int length);
  /// [I | 1].
  static BinaryMatrix spc_systematic(int length);
  /// Systematic form with the first q-1 columns complemented; only odd lengths give an SPC code.
  static BinaryMatrix spc_antisystematic(int length);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool bit(int row, int col) const noexcept { return (row_bits_[row] >> col) & 1u; }
  std::uint32_t row(int r) const noexcept { return row_bits_[r]; }
  std::span<const std::uint32_t> row_words() const noexcept { return row_bits_; }

  /// Column `c` as a k-bit word (bit r = entry in row r).
  std::uint32_t column(int c) const noexcept;

  /// Codeword for the information word `info` (bit r selects row r).
  std::uint32_t encode(std::uint32_t info) const noexcept;

  BinaryMatrix with_columns_permuted(std::span<const int> permutation) const;
  BinaryMatrix with_rows_swapped(int a, int b) const;

  std::vector<std::string> to_strings() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<std::uint32_t> row_bits_;
};

/// Rank over GF(2) of a set of packed vectors.
int gf2_rank(std::span<const std::uint32_t> vectors);

/// Incremental GF(2) row-echelon basis for span-membership queries on words of up to 32 bits.
class Gf2Basis {
 public:
  /// Adds `v` to the span; returns false if it was already a member.
  bool insert(std::uint32_t v) noexcept;
  bool contains(std::uint32_t v) const noexcept;
  int rank() const noexcept { return rank_; }

 private:
  std::uint32_t pivots_[32] = {};
  int rank_ = 0;
};

}  // namespace dgldpc
