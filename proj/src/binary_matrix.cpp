#include "dgldpc/binary_matrix.hpp"

#include <algorithm>
#include <bit>

#include "dgldpc/errors.hpp"

namespace dgldpc {

bool Gf2Basis::insert(std::uint32_t v) noexcept {
  while (v != 0) {
    const int top = 31 - std::countl_zero(v);
    if (pivots_[top] == 0) {
      pivots_[top] = v;
      ++rank_;
      return true;
    }
    v ^= pivots_[top];
  }
  return false;
}

bool Gf2Basis::contains(std::uint32_t v) const noexcept {
  while (v != 0) {
    const int top = 31 - std::countl_zero(v);
    if (pivots_[top] == 0) return false;
    v ^= pivots_[top];
  }
  return true;
}

int gf2_rank(std::span<const std::uint32_t> vectors) {
  Gf2Basis basis;
  for (auto v : vectors) basis.insert(v);
  return basis.rank();
}

BinaryMatrix::BinaryMatrix(int rows, int cols, std::vector<std::uint32_t> row_bits)
    : rows_(rows), cols_(cols), row_bits_(std::move(row_bits)) {
  if (rows_ < 1 || cols_ < rows_ || cols_ > kMaxLength) {
    throw InvalidCode("generator matrix must satisfy 1 <= k <= q <= 24 (got k=" +
                      std::to_string(rows_) + ", q=" + std::to_string(cols_) + ")");
  }
  if (static_cast<int>(row_bits_.size()) != rows_) {
    throw InvalidCode("generator matrix row count does not match k");
  }
  const std::uint32_t mask = (cols_ == 32) ? ~0u : ((1u << cols_) - 1u);
  std::uint32_t used = 0;
  for (auto r : row_bits_) {
    if (r & ~mask) throw InvalidCode("generator matrix row has bits beyond column q");
    used |= r;
  }
  if (used != mask) {
    const int zero_col = std::countr_zero(~used & mask);
    throw InvalidCode("generator matrix has an all-zero column (column " + std::to_string(zero_col) +
                      "); its dual code would have minimum distance 1");
  }
  if (gf2_rank(row_bits_) != rows_) {
    throw InvalidCode("generator matrix rows are linearly dependent over GF(2)");
  }
}

BinaryMatrix BinaryMatrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) throw InvalidCode("generator matrix needs at least one row");
  const auto q = rows.front().size();
  std::vector<std::uint32_t> bits;
  bits.reserve(rows.size());
  for (const auto& s : rows) {
    if (s.size() != q) throw InvalidCode("generator matrix rows have different lengths");
    if (q > static_cast<std::size_t>(kMaxLength)) {
      throw InvalidCode("generator matrix row longer than 24 columns");
    }
    std::uint32_t w = 0;
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (s[c] == '1') {
        w |= 1u << c;
      } else if (s[c] != '0') {
        throw InvalidCode("generator matrix rows may only contain '0' and '1'");
      }
    }
    bits.push_back(w);
  }
  return BinaryMatrix(static_cast<int>(rows.size()), static_cast<int>(q), std::move(bits));
}

BinaryMatrix BinaryMatrix::repetition(int length) {
  if (length < 1 || length > kMaxLength) throw InvalidCode("repetition length out of range");
  return BinaryMatrix(1, length, {(1u << length) - 1u});
}

BinaryMatrix BinaryMatrix::spc_cyclic(int length) {
  if (length < 2 || length > kMaxLength) throw InvalidCode("SPC length must be in [2, 24]");
  std::vector<std::uint32_t> rows;
  for (int i = 0; i + 1 < length; ++i) rows.push_back((1u << i) | (1u << (i + 1)));
  return BinaryMatrix(length - 1, length, std::move(rows));
}

BinaryMatrix BinaryMatrix::spc_systematic(int length) {
  if (length < 2 || length > kMaxLength) throw InvalidCode("SPC length must be in [2, 24]");
  std::vector<std::uint32_t> rows;
  const int k = length - 1;
  for (int i = 0; i < k; ++i) rows.push_back((1u << i) | (1u << k));
  return BinaryMatrix(k, length, std::move(rows));
}

BinaryMatrix BinaryMatrix::spc_antisystematic(int length) {
  if (length < 2 || length > kMaxLength) throw InvalidCode("SPC length must be in [2, 24]");
  if (length % 2 == 0) {
    throw InvalidCode("antisystematic SPC generator requires odd length; length " +
                      std::to_string(length) + " yields a minimum-distance-1 code");
  }
  const int k = length - 1;
  const std::uint32_t info_mask = (1u << k) - 1u;
  std::vector<std::uint32_t> rows;
  for (int i = 0; i < k; ++i) rows.push_back((info_mask & ~(1u << i)) | (1u << k));
  return BinaryMatrix(k, length, std::move(rows));
}

std::uint32_t BinaryMatrix::column(int c) const noexcept {
  std::uint32_t col = 0;
  for (int r = 0; r < rows_; ++r) col |= ((row_bits_[r] >> c) & 1u) << r;
  return col;
}

std::uint32_t BinaryMatrix::encode(std::uint32_t info) const noexcept {
  std::uint32_t cw = 0;
  while (info != 0) {
    const int r = std::countr_zero(info);
    cw ^= row_bits_[r];
    info &= info - 1;
  }
  return cw;
}

BinaryMatrix BinaryMatrix::with_columns_permuted(std::span<const int> permutation) const {
  if (static_cast<int>(permutation.size()) != cols_) {
    throw InvalidCode("column permutation has the wrong size");
  }
  std::vector<std::uint32_t> rows(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (bit(r, permutation[c])) rows[r] |= 1u << c;
    }
  }
  return BinaryMatrix(rows_, cols_, std::move(rows));
}

BinaryMatrix BinaryMatrix::with_rows_swapped(int a, int b) const {
  auto rows = row_bits_;
  std::swap(rows.at(a), rows.at(b));
  return BinaryMatrix(rows_, cols_, std::move(rows));
}

std::vector<std::string> BinaryMatrix::to_strings() const {
  std::vector<std::string> out;
  for (int r = 0; r < rows_; ++r) {
    std::string s(cols_, '0');
    for (int c = 0; c < cols_; ++c) {
      if (bit(r, c)) s[c] = '1';
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dgldpc
