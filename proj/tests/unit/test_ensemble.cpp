#include <doctest.h>

#include "dgldpc/errors.hpp"
#include "fixtures.hpp"

using namespace dgldpc;
using doctest::Approx;

TEST_CASE("regular LDPC ensembles") {
  for (int dc = 4; dc <= 10; ++dc) {
    const auto e = fixtures::regular(3, dc);
    CHECK(e.design_rate() == Approx(1.0 - 3.0 / dc).epsilon(1e-14));
    CHECK(e.block_length_ratio() == Approx(1.0).epsilon(1e-14));
    CHECK(e.m_bar() == Approx((dc % 2 == 0 ? dc : dc - 1) / static_cast<double>(dc)).epsilon(1e-14));
    CHECK(e.edges_per_vn() == Approx(3.0));
    CHECK(e.checks_per_vn() == Approx(3.0 / dc));
    CHECK(e.check_hybrid_length() == 3);
  }
}

TEST_CASE("D-GLDPC ensemble from a description file") {
  const auto e = load_ensemble(fixtures::data("dgldpc_hamming_spc_1.json"));
  // Hand computation from the edge fractions.
  const double l1 = 0.055646, l2 = 0.944354, r1 = 0.965221, r2 = 0.034779;
  const double int_lambda = l1 / 2 + l2 / 7;
  const double info = l1 / 2 + l2 * 6 / 7;
  const double redundancy = r1 * 3.0 / 7 + r2 * 1.0 / 7;
  CHECK(e.int_lambda() == Approx(int_lambda).epsilon(1e-14));
  CHECK(e.int_rho() == Approx(1.0 / 7).epsilon(1e-14));
  CHECK(e.design_rate() == Approx(1 - redundancy / info).epsilon(1e-13));
  CHECK(e.design_rate() == Approx(0.5).epsilon(1e-6));
  CHECK(e.block_length_ratio() == Approx(info / int_lambda).epsilon(1e-13));
  CHECK(e.m_bar() == Approx(r1 + r2 * 6.0 / 7).epsilon(1e-14));
  CHECK(e.delta(0) == Approx(l1 / 2 / int_lambda).epsilon(1e-14));
  CHECK(e.gamma(0) == Approx(r1).epsilon(1e-14));
  CHECK_FALSE(e.check_hybrid_length().has_value());
}

TEST_CASE("rate, block length ratio and parity-check count agree") {
  for (const auto& e : {fixtures::regular(3, 6), fixtures::tanner_hamming(), fixtures::mixed_checkhybrid(),
                        load_ensemble(fixtures::data("dgldpc_hamming_spc_2.json"))}) {
    CHECK(e.design_rate() == Approx(1.0 - e.parity_checks_per_vn() / e.block_length_ratio()).epsilon(1e-13));
    CHECK(e.edges_per_vn() * e.int_rho() == Approx(e.checks_per_vn()).epsilon(1e-14));
    double sum_delta = 0.0, sum_gamma = 0.0;
    for (std::size_t t = 0; t < e.variable_nodes().size(); ++t) sum_delta += e.delta(t);
    for (std::size_t t = 0; t < e.check_nodes().size(); ++t) sum_gamma += e.gamma(t);
    CHECK(sum_delta == Approx(1.0).epsilon(1e-14));
    CHECK(sum_gamma == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("check-hybrid ensemble with a non-symmetric code") {
  const auto e = fixtures::mixed_checkhybrid();
  CHECK(e.design_rate() == Approx(1.0 / 3).epsilon(1e-14));
  CHECK(e.m_bar() == Approx(6.0 / 7).epsilon(1e-14));
  CHECK(e.parity_checks_per_vn() == Approx(2.0 / 3).epsilon(1e-14));
  CHECK(e.minimal_admissible_n() == 42);
  CHECK(fixtures::regular(3, 6).minimal_admissible_n() == 2);
  CHECK(fixtures::tanner_hamming().minimal_admissible_n() == 7);
}

TEST_CASE("fraction errors") {
  auto rep = VariableNodeType::repetition("rep", 1.0, 3);
  auto spc = CheckNodeType::from_generator("spc", 1.0, BinaryMatrix::spc_cyclic(6));

  auto bad = rep;
  bad.lambda = 0.9;
  CHECK_THROWS_AS(Ensemble({bad}, {spc}), EnsembleError);

  bad.lambda = 0.0;
  try {
    Ensemble e({rep, bad}, {spc});
    FAIL("expected EnsembleError");
  } catch (const EnsembleError& ex) {
    CHECK(ex.type_index() == 1);
  }

  auto half = spc;
  half.rho = 0.5;
  CHECK_THROWS_AS(Ensemble({rep}, {half}), EnsembleError);
  CHECK_THROWS_AS(Ensemble({}, {spc}), EnsembleError);
}

TEST_CASE("rate outside (0,1) is rejected") {
  // Rate 1 - 4/4 = 0.
  CHECK_THROWS_AS(fixtures::regular(4, 4), EnsembleError);
}

TEST_CASE("stopping kinds need the matching enumerators") {
  const auto wef = weight_enumerator(fixtures::hamming74());
  auto cn = CheckNodeType::from_enumerator("ham", 1.0, 4, wef);
  auto vn = VariableNodeType::repetition("rep", 1.0, 2);
  CHECK_NOTHROW(Ensemble({vn}, {cn}, EnumeratorKind::StoppingBD));
  CHECK_THROWS_AS(Ensemble({vn}, {cn}, EnumeratorKind::StoppingMAP), EnsembleError);
  CHECK_NOTHROW(fixtures::tanner_hamming(EnumeratorKind::StoppingMAP));
}

TEST_CASE("assumption report") {
  const auto r = validate_assumptions(fixtures::regular(3, 6));
  CHECK(r.ok());
  CHECK(r.has_distance2_cn);
  CHECK_FALSE(r.has_distance2_vn);
  CHECK(validate_assumptions(fixtures::mixed_checkhybrid()).dual_distance_ok);

  const auto e1 = load_ensemble(fixtures::data("dgldpc_hamming_spc_1.json"));
  const auto r1 = validate_assumptions(e1);
  CHECK(r1.has_distance2_vn);
  CHECK(r1.has_distance2_cn);
  CHECK(r1.parity_checks_per_vn == Approx(e1.parity_checks_per_vn()));
}

TEST_CASE("explicit enumerators must be consistent") {
  WeightEnumerator bad{EnumeratorKind::Weight, {1, 0, 2, 0}};
  CHECK_THROWS_AS(CheckNodeType::from_enumerator("x", 1.0, 2, bad), InvalidCode);
  WeightEnumerator wrong{EnumeratorKind::Weight, {1, 0, 0, 6, 9, 0, 0, 0}};
  CHECK_THROWS_AS(CheckNodeType::from_generator("ham", 1.0, fixtures::hamming74(), wrong), InvalidCode);
}
