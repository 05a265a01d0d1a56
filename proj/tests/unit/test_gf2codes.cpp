#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dgldpc/enumerators.hpp"
#include "dgldpc/errors.hpp"

using namespace dgldpc;

namespace {

BinaryMatrix hamming74() { return BinaryMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"}); }

std::vector<Count> c(std::initializer_list<Count> v) { return v; }

// Brute force: V is a MAP stopping set iff each erased column is outside the span of the known ones,
// tested here with ranks instead of an incremental basis.
std::vector<Count> map_ssef_by_rank(const BinaryMatrix& g) {
  const int q = g.cols();
  std::vector<Count> out(q + 1, 0);
  for (std::uint32_t v = 0; v < (1u << q); ++v) {
    std::vector<std::uint32_t> known;
    for (int j = 0; j < q; ++j)
      if (!((v >> j) & 1u)) known.push_back(g.column(j));
    const int base = gf2_rank(known);
    bool stopping = true;
    for (int j = 0; j < q && stopping; ++j) {
      if (!((v >> j) & 1u)) continue;
      auto with = known;
      with.push_back(g.column(j));
      if (gf2_rank(with) == base) stopping = false;
    }
    if (stopping) ++out[std::popcount(v)];
  }
  return out;
}

}  // namespace

TEST_CASE("hamming (7,4) enumerators") {
  const auto g = hamming74();
  const auto wef = weight_enumerator(g);
  CHECK(wef.coeffs == c({1, 0, 0, 7, 7, 0, 0, 1}));
  CHECK(wef.min_distance() == 3);
  CHECK(bd_ssef(wef).coeffs == c({1, 0, 0, 35, 35, 21, 7, 1}));
  const auto map = map_ssef(g);
  CHECK(map.coeffs == map_ssef_by_rank(g));
  CHECK(map.coeffs == c({1, 0, 0, 7, 7, 21, 7, 1}));
  CHECK(to_polynomial_string(wef) == "1 + 7z^3 + 7z^4 + z^7");
}

TEST_CASE("hamming MAP stopping 4-sets are the weight-4 codeword supports") {
  const auto g = hamming74();
  std::vector<std::uint32_t> supports;
  for (std::uint32_t u = 0; u < 16; ++u)
    if (std::popcount(g.encode(u)) == 4) supports.push_back(g.encode(u));
  REQUIRE(supports.size() == 7);
  for (std::uint32_t v = 0; v < 128; ++v) {
    if (std::popcount(v) != 4) continue;
    std::vector<std::uint32_t> known;
    for (int j = 0; j < 7; ++j)
      if (!((v >> j) & 1u)) known.push_back(g.column(j));
    Gf2Basis b;
    for (auto k : known) b.insert(k);
    bool stopping = true;
    for (int j = 0; j < 7; ++j)
      if (((v >> j) & 1u) && b.contains(g.column(j))) stopping = false;
    const bool is_support = std::find(supports.begin(), supports.end(), v) != supports.end();
    CHECK(stopping == is_support);
  }
}

TEST_CASE("single parity check and repetition codes") {
  CHECK(weight_enumerator(BinaryMatrix::spc_cyclic(7)).coeffs == c({1, 0, 21, 0, 35, 0, 7, 0}));
  CHECK(weight_enumerator(BinaryMatrix::spc_systematic(7)).coeffs == c({1, 0, 21, 0, 35, 0, 7, 0}));
  CHECK(weight_enumerator(BinaryMatrix::spc_antisystematic(7)).coeffs == c({1, 0, 21, 0, 35, 0, 7, 0}));
  CHECK(weight_enumerator(BinaryMatrix::repetition(5)).coeffs == c({1, 0, 0, 0, 0, 1}));

  const auto io = io_weight_enumerator(BinaryMatrix::spc_systematic(3));
  CHECK(io.at(0, 0) == 1);
  CHECK(io.at(1, 2) == 2);
  CHECK(io.at(2, 2) == 1);
  CHECK(io.total() == 4);
  CHECK(to_polynomial_string(io) == "1 + 2xy^2 + x^2y^2");

  CHECK(is_repetition(io_weight_enumerator(BinaryMatrix::repetition(4))));
  CHECK_FALSE(is_repetition(io));
}

TEST_CASE("antisystematic SPC needs odd length") {
  CHECK_THROWS_AS(BinaryMatrix::spc_antisystematic(4), InvalidCode);
  CHECK_NOTHROW(BinaryMatrix::spc_antisystematic(5));
}

TEST_CASE("invalid generators are rejected") {
  CHECK_THROWS_AS(BinaryMatrix::from_strings({"110", "110"}), InvalidCode);
  CHECK_THROWS_AS(BinaryMatrix::from_strings({"110", "101", "0"}), InvalidCode);
  CHECK_THROWS_AS(BinaryMatrix::from_strings({"1100"}), InvalidCode);  // zero column
  CHECK_THROWS_AS(BinaryMatrix::from_strings({"1x0"}), InvalidCode);
  CHECK_THROWS_AS(weight_enumerator(BinaryMatrix::from_strings({"100", "011"})), InvalidCode);
}

TEST_CASE("code without the all-ones word") {
  const auto g = BinaryMatrix::from_strings({"1100000", "0110000", "0001100", "0000011"});
  CHECK_FALSE(has_all_ones_codeword(g));
  const auto wef = weight_enumerator(g);
  CHECK(wef.coeffs == c({1, 0, 5, 0, 7, 0, 3, 0}));
  CHECK_FALSE(is_symmetric(wef));
  CHECK(has_all_ones_codeword(hamming74()));
}

TEST_CASE("symmetric enumerator iff the all-ones word is a codeword (random codes)") {
  std::mt19937 rng(20240611);
  int tested = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int q = 3 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % (q - 1));
    std::vector<std::uint32_t> rows(k);
    for (auto& r : rows) r = rng() & ((1u << q) - 1);
    try {
      const BinaryMatrix g(k, q, rows);
      const auto wef = weight_enumerator(g);
      const bool ones = has_all_ones_codeword(g);
      CHECK(is_symmetric(wef) == ones);
      if (ones) CHECK(wef.max_weight() == q);
      ++tested;
    } catch (const InvalidCode&) {
    }
  }
  CHECK(tested > 100);
}

TEST_CASE("enumerators are invariant under column permutation and row swaps") {
  std::mt19937 rng(7);
  const auto g = hamming74();
  std::vector<int> perm(7);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = g.with_columns_permuted(perm);
    CHECK(weight_enumerator(h) == weight_enumerator(g));
    CHECK(map_ssef(h) == map_ssef(g));
    CHECK(io_weight_enumerator(h) == io_weight_enumerator(g));
  }
  const auto s = g.with_rows_swapped(0, 3);
  CHECK(io_weight_enumerator(s) == io_weight_enumerator(g));
  CHECK(io_map_ssef(s) == io_map_ssef(g));
}

TEST_CASE("IO enumerator marginalizes to the weight enumerator") {
  for (const auto& g : {hamming74(), BinaryMatrix::spc_cyclic(6), BinaryMatrix::spc_antisystematic(7),
                        BinaryMatrix::from_strings({"11000", "01100", "00111"})}) {
    CHECK(io_weight_enumerator(g).output_marginal() == weight_enumerator(g).coeffs);
  }
}

TEST_CASE("MAP stopping sets are bounded by BD stopping sets") {
  for (const auto& g : {hamming74(), BinaryMatrix::spc_cyclic(6), BinaryMatrix::from_strings({"11000", "01100", "00111"}),
                        BinaryMatrix::from_strings({"1100000", "0110000", "0001100", "0000011"})}) {
    const auto wef = weight_enumerator(g);
    const auto map = map_ssef(g);
    const auto bd = bd_ssef(wef);
    CHECK(map.coeffs == map_ssef_by_rank(g));
    for (int u = 0; u <= g.cols(); ++u) {
      CHECK(map.coeffs[u] <= bd.coeffs[u]);
      CHECK(wef.coeffs[u] <= map.coeffs[u]);
    }
  }
}

TEST_CASE("SPC MAP stopping sets are all sets of size >= 2") {
  const auto map = map_ssef(BinaryMatrix::spc_cyclic(6));
  CHECK(map.coeffs == c({1, 0, 15, 20, 15, 6, 1}));
}

TEST_CASE("IO MAP stopping enumerator of a repetition code") {
  const auto io = io_map_ssef(BinaryMatrix::repetition(3));
  CHECK(io.at(0, 0) == 1);
  CHECK(io.at(1, 3) == 1);
  CHECK(io.total() == 2);
}
