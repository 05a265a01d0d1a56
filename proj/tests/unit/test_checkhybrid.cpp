#include <doctest.h>

#include <cmath>

#include "dgldpc/checkhybrid.hpp"
#include "dgldpc/errors.hpp"
#include "fixtures.hpp"

using namespace dgldpc;
using doctest::Approx;

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.1) == Approx(binary_entropy(0.9)).epsilon(1e-15));
}

TEST_CASE("f is increasing from 0 with f(1) = 1/2") {
  for (const auto& e : {fixtures::regular(3, 6), fixtures::tanner_hamming(), fixtures::mixed_checkhybrid()}) {
    CHECK(f_eval(e, 0.0) == 0.0);
    CHECK(f_eval(e, 1.0) == Approx(0.5).epsilon(1e-14));
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double z = std::exp(-10.0 + i * 0.1);
      const double f = f_eval(e, z);
      CHECK(f > prev);
      CHECK(f < e.m_bar());
      prev = f;
    }
  }
}

TEST_CASE("f inverse round trip") {
  const auto e = fixtures::mixed_checkhybrid();
  for (double a : {1e-6, 0.01, 0.3, 0.5, 0.8, 0.85}) {
    CHECK(std::abs(f_eval(e, f_inverse(e, a)) - a) < 1e-13);
  }
  CHECK(f_inverse(e, 0.0) == 0.0);
  CHECK_THROWS_AS(f_inverse(e, 6.0 / 7), DomainError);
  CHECK_THROWS_AS(f_inverse(fixtures::load_ensemble(fixtures::data("dgldpc_hamming_spc_1.json")), 0.1), NotCheckHybrid);
}

TEST_CASE("f inverse of symmetric codes is reciprocal under reflection") {
  for (const auto& e : {fixtures::regular(3, 6), fixtures::tanner_hamming(), fixtures::regular(3, 8)}) {
    for (double a : {0.05, 0.2, 0.45}) {
      CHECK(f_inverse(e, a) * f_inverse(e, e.m_bar() - a) == Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("ensemble closed form agrees with the single-code closed form") {
  const auto e = fixtures::tanner_hamming();
  const auto wef = weight_enumerator(fixtures::hamming74());
  for (double a : {0.02, 0.2, 0.5, 0.9}) {
    CHECK(checkhybrid_growth_rate(e, a) == Approx(tanner_growth_rate(2, wef, a)).epsilon(1e-13));
    CHECK(f_inverse(e, a) == Approx(tanner_f_inverse(wef, a)).epsilon(1e-12));
  }
  CHECK(tanner_growth_rate(2, wef, 0.5) == Approx((4.0 / 7 * 2 - 1) * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("cardano root of the (3,6) cubic") {
  const auto e = fixtures::regular(3, 6);
  int negative_mu = 0;
  int naive_branch_wrong = 0;
  for (int i = 1; i <= 100; ++i) {
    const double a = i / 101.0;
    const auto r = cardano_f_inverse_36(a);
    CHECK(r.discriminant < 0.0);
    CHECK(r.z == Approx(f_inverse(e, a)).epsilon(1e-10));
    if (r.mu < 0.0) {
      ++negative_mu;
      // atan(sqrt(-D)/mu) lands in (-pi/2, 0) here and gives a different root.
      const double theta = std::atan(std::sqrt(-r.discriminant) / r.mu);
      const double x_naive = std::cos(theta / 3.0);
      const double x_right = std::cos(std::atan2(std::sqrt(-r.discriminant), r.mu) / 3.0);
      if (std::abs(x_naive - x_right) > 1e-6) ++naive_branch_wrong;
    }
  }
  // mu changes sign near alpha = 0.66; below it only the atan2 branch is correct.
  CHECK(negative_mu == 66);
  CHECK(naive_branch_wrong == negative_mu);
  CHECK_THROWS_AS(cardano_f_inverse_36(0.0), DomainError);
  CHECK_THROWS_AS(cardano_f_inverse_36(1.0), DomainError);
}

TEST_CASE("symmetry report") {
  const auto sym_e = fixtures::tanner_hamming();
  const auto sym = symmetry_report(growth_curve(sym_e, 50), sym_e);
  CHECK(sym.all_cn_symmetric);
  CHECK(sym.max_deviation < 1e-9);
  CHECK(sym.consistent);

  const auto asym_e = fixtures::mixed_checkhybrid();
  const auto asym = symmetry_report(growth_curve(asym_e, 50), asym_e);
  CHECK_FALSE(asym.all_cn_symmetric);
  CHECK(asym.max_deviation > 1e-3);
  CHECK(asym.m_bar == Approx(6.0 / 7));
}
