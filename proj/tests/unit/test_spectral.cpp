#include <doctest.h>

#include <cmath>

#include "dgldpc/checkhybrid.hpp"
#include "dgldpc/errors.hpp"
#include "dgldpc/spectral.hpp"
#include "fixtures.hpp"

using namespace dgldpc;
using doctest::Approx;

TEST_CASE("stationary point at half the block length ratio") {
  for (const char* name : {"dgldpc_hamming_spc_1.json", "dgldpc_hamming_spc_2.json"}) {
    const auto e = load_ensemble(fixtures::data(name));
    const auto p = solve_point(e, e.block_length_ratio() / 2);
    CHECK(p.x0 == Approx(1.0).epsilon(1e-12));
    CHECK(p.y0 == Approx(1.0).epsilon(1e-12));
    CHECK(p.z0 == Approx(1.0).epsilon(1e-12));
    CHECK(p.G == Approx(e.design_rate() * e.block_length_ratio() * std::log(2.0)).epsilon(1e-12));
  }
  const auto p = solve_point(fixtures::regular(3, 6), 0.5);
  CHECK(p.G == Approx(0.5 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("curve residuals and direct evaluation") {
  const auto e = load_ensemble(fixtures::data("dgldpc_hamming_spc_2.json"));
  const auto curve = growth_curve(e, 60);
  REQUIRE(curve.points.size() == 60);
  for (const auto& p : curve.points) {
    CHECK(p.residual < 1e-11);
    CHECK(system_residual(e, p) == Approx(p.residual).epsilon(1e-3).scale(1e-12));
    CHECK(growth_rate_at(e, p) == Approx(p.G).epsilon(1e-12));
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) CHECK(curve.points[i].alpha > curve.points[i - 1].alpha);
}

TEST_CASE("derivative is -log x0") {
  const auto e = load_ensemble(fixtures::data("dgldpc_hamming_spc_1.json"));
  const double h = 1e-5;
  for (double a : {0.01, 0.3, 1.0, 2.0, 4.0}) {
    const double fd = (solve_point(e, a + h).G - solve_point(e, a - h).G) / (2 * h);
    CHECK(fd == Approx(growth_derivative(solve_point(e, a))).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("regular (3,6) matches the closed form") {
  const auto e = fixtures::regular(3, 6);
  const auto wef = weight_enumerator(BinaryMatrix::spc_cyclic(6));
  for (double a : {0.01, 0.1, 0.3, 0.7, 0.95}) {
    CHECK(solve_point(e, a).G == Approx(tanner_growth_rate(3, wef, a)).epsilon(1e-10).scale(1.0));
  }
  CHECK(critical_exponent(e) == Approx(0.022733).epsilon(1e-6).scale(1.0));
}

TEST_CASE("stopping-set kinds of a Tanner code match the closed form") {
  const auto g = fixtures::hamming74();
  const auto bd = bd_ssef(weight_enumerator(g));
  const auto map = map_ssef(g);
  const auto ebd = fixtures::tanner_hamming(EnumeratorKind::StoppingBD);
  const auto emap = fixtures::tanner_hamming(EnumeratorKind::StoppingMAP);
  for (double a : {0.05, 0.2, 0.5, 0.8}) {
    CHECK(solve_point(ebd, a).G == Approx(tanner_growth_rate(2, bd, a)).epsilon(1e-10).scale(1.0));
    CHECK(solve_point(emap, a).G == Approx(tanner_growth_rate(2, map, a)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("H curve rescales the curve") {
  const auto e = load_ensemble(fixtures::data("dgldpc_hamming_spc_1.json"));
  const auto curve = growth_curve(e, 10);
  const auto h = h_curve(curve, e.block_length_ratio());
  REQUIRE(h.size() == curve.points.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(h[i].omega * e.block_length_ratio() == Approx(curve.points[i].alpha));
    CHECK(h[i].H * e.block_length_ratio() == Approx(curve.points[i].G));
  }
}

TEST_CASE("domain of the solver") {
  const auto e = fixtures::regular(3, 6);
  CHECK(support_max_alpha(e) == Approx(1.0));
  CHECK(support_max_alpha(fixtures::mixed_checkhybrid()) == Approx(6.0 / 7));
  CHECK_THROWS_AS(solve_point(e, 0.0), DomainError);
  CHECK_THROWS_AS(solve_point(e, 1.5), DomainError);
  const auto grid = default_grid(e, 5);
  CHECK(grid.front() == Approx(0.005));
  CHECK(grid.back() == Approx(0.995));
}

TEST_CASE("curve summary fields") {
  const auto curve = growth_curve(fixtures::tanner_hamming(), 100);
  REQUIRE(curve.alpha_star);
  CHECK(*curve.alpha_star == Approx(0.186500).epsilon(1e-6).scale(1.0));
  REQUIRE(curve.peak);
  CHECK(curve.peak->alpha == Approx(0.5));
  CHECK(curve.peak_is_grid_max);
  CHECK(curve.stationary_alphas.size() == 3);
}

TEST_CASE("unsorted grids come back ascending") {
  const std::vector<double> grid{0.4, 0.1, 0.25};
  const auto curve = growth_curve(fixtures::regular(3, 6), grid);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].alpha == Approx(0.1));
  CHECK(curve.points[2].alpha == Approx(0.4));
}

TEST_CASE("folded stopping-set branch takes the dominant solution") {
  const auto e = load_ensemble(fixtures::data("dgldpc_hamming_spc_2.json"), EnumeratorKind::StoppingMAP);
  const auto curve = growth_curve(e, 100);
  CHECK(curve.points.size() == 100);
  REQUIRE(curve.multi_solution_ranges.size() == 1);
  const auto [lo, hi] = curve.multi_solution_ranges.front();
  CHECK(lo == Approx(0.7398).epsilon(2e-3));
  CHECK(hi == Approx(0.8064).epsilon(2e-3));
  REQUIRE(curve.alpha_star);
  CHECK(*curve.alpha_star == Approx(0.002163).epsilon(1e-3));
  for (const auto& p : curve.points) CHECK(p.residual < 1e-9);

  // G stays continuous across the range even though G' jumps at the switch between branches.
  const double mid = 0.5 * (lo + hi);
  const auto p = solve_point(e, mid);
  CHECK(growth_rate_at(e, p) == Approx(p.G));
  CHECK(std::abs(solve_point(e, mid + 1e-6).G - p.G) < 1e-5);
}
