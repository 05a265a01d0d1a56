#include <doctest.h>

#include <sstream>

#include "dgldpc/errors.hpp"
#include "fixtures.hpp"

using namespace dgldpc;
using nlohmann::json;

namespace {

std::string csv_of(const Ensemble& e, int points) {
  std::ostringstream os;
  write_curve_csv(os, growth_curve(e, points));
  return os.str();
}

json regular_doc() {
  return json::parse(R"({
    "variable_nodes": [{"name": "v", "lambda": 1.0, "code": {"kind": "repetition", "length": 3}}],
    "check_nodes": [{"name": "c", "rho": 1.0, "code": {"kind": "spc_cyclic", "length": 6}}]
  })");
}

}  // namespace

TEST_CASE("explicit enumerators reproduce the curve bit for bit") {
  for (const char* name : {"dgldpc_hamming_spc_2.json", "checkhybrid_spc7_mixed.json", "tanner_hamming74_rep2.json"}) {
    const auto e = load_ensemble(fixtures::data(name));
    const auto doc = to_explicit_json(e);
    const auto again = ensemble_from_json(json::parse(doc.dump()));
    CHECK(csv_of(again, 25) == csv_of(e, 25));
  }
  const auto map = load_ensemble(fixtures::data("tanner_hamming74_rep2.json"), EnumeratorKind::StoppingMAP);
  const auto again = ensemble_from_json(to_explicit_json(map), EnumeratorKind::StoppingMAP);
  CHECK(csv_of(again, 10) == csv_of(map, 10));
}

TEST_CASE("csv format") {
  std::ostringstream os;
  SpectralCurve c;
  c.points.push_back({.alpha = 0.25, .beta = 0.75, .G = 0.5, .residual = 0.0});
  write_curve_csv(os, c);
  CHECK(os.str() == "alpha,G,x0,y0,z0,beta,residual\n0.25,0.5,1,1,1,0.75,0\n");
}

TEST_CASE("kinds") {
  CHECK(parse_kind("weight") == EnumeratorKind::Weight);
  CHECK(parse_kind("ss-bd") == EnumeratorKind::StoppingBD);
  CHECK(parse_kind("ss-map") == EnumeratorKind::StoppingMAP);
  CHECK_THROWS_AS(parse_kind("map"), SpecError);
}

TEST_CASE("well-formed inline description") {
  const auto e = ensemble_from_json(regular_doc());
  CHECK(e.design_rate() == doctest::Approx(0.5));
}

TEST_CASE("malformed descriptions") {
  auto doc = regular_doc();
  doc.erase("check_nodes");
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);

  doc = regular_doc();
  doc["variable_nodes"][0]["lambda"] = "one";
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);

  doc = regular_doc();
  doc["variable_nodes"][0]["lambda"] = 0.9;
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);

  doc = regular_doc();
  doc["check_nodes"][0]["code"]["kind"] = "turbo";
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);

  doc = regular_doc();
  doc["check_nodes"][0]["code"] = {{"kind", "generator"}, {"rows", {"110", 7}}};
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);

  doc = regular_doc();
  doc["check_nodes"][0]["code"] = {{"kind", "generator"}, {"rows", {"1100", "0111"}}, {"length", 5}};
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);

  doc = regular_doc();
  doc["check_nodes"][0]["code"] = {{"kind", "spc_antisystematic"}, {"length", 4}};
  CHECK_THROWS_AS(ensemble_from_json(doc), InvalidCode);

  doc = regular_doc();
  doc["check_nodes"][0]["code"] = {{"kind", "generator"}, {"rows", {"11000", "01100", "00111"}}, {"coeffs", {1, 0, 3, 3, 1, 0}}};
  CHECK_THROWS_AS(ensemble_from_json(doc), InvalidCode);

  CHECK_THROWS_AS(ensemble_from_json(json::array()), SpecError);
  CHECK_THROWS_AS(load_ensemble("/nonexistent/ensemble.json"), SpecError);
}

TEST_CASE("fractions within the file tolerance are renormalized") {
  auto doc = json::parse(R"({
    "variable_nodes": [{"lambda": 0.4999999999, "code": {"kind": "repetition", "length": 3}},
                       {"lambda": 0.5, "code": {"kind": "repetition", "length": 4}}],
    "check_nodes": [{"rho": 1.0, "code": {"kind": "spc_cyclic", "length": 8}}]
  })");
  const auto e = ensemble_from_json(doc);
  CHECK(e.variable_nodes()[0].lambda + e.variable_nodes()[1].lambda == doctest::Approx(1.0).epsilon(1e-15));
  doc["variable_nodes"][0]["lambda"] = 0.49;
  CHECK_THROWS_AS(ensemble_from_json(doc), SpecError);
}

TEST_CASE("single code from an inline object") {
  const auto g = code_from_json(json{{"kind", "spc_systematic"}, {"length", 4}});
  CHECK(g.rows() == 3);
  CHECK(g.cols() == 4);
  CHECK_THROWS_AS(code_from_json(json{{"kind", "repetition"}}), SpecError);
}
