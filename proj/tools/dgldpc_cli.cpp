// dgldpc: spectral shapes, critical exponents, enumerators and exact finite-length checks
// for D-GLDPC ensembles described in JSON.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "dgldpc/checkhybrid.hpp"
#include "dgldpc/oracle.hpp"
#include "dgldpc/smallalpha.hpp"
#include "dgldpc/spec_file.hpp"
#include "dgldpc/spectral.hpp"

using namespace dgldpc;
using nlohmann::json;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitSolver = 3;

json point_json(const SpectralPoint& p) {
  return {{"alpha", p.alpha}, {"G", p.G}, {"x0", p.x0}, {"y0", p.y0}, {"z0", p.z0}, {"beta", p.beta}};
}

json ensemble_summary(const Ensemble& e) {
  const auto report = validate_assumptions(e);
  return {{"label", e.label()},
          {"kind", to_string(e.kind())},
          {"design_rate", e.design_rate()},
          {"block_length_ratio", e.block_length_ratio()},
          {"m_bar", e.m_bar()},
          {"parity_checks_per_vn", report.parity_checks_per_vn},
          {"assumption_violations", report.violations},
          {"dual_distance_above_one", report.dual_distance_ok}};
}

json classification_json(const Ensemble& e) {
  const auto g = classify_growth(e);
  json j{{"classification", to_string(g.behavior)}, {"C", g.C}, {"V", g.V}, {"CV", g.product()}};
  if (e.kind() != EnumeratorKind::Weight) j["note"] = "stopping-set extension of the weight-kind classifier";
  return j;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw SpecError("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw SpecError("empty list");
  return out;
}

int run_curve(const std::string& spec, const std::string& kind, int points, const std::string& grid,
              const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = load_ensemble(spec, parse_kind(kind));
  const auto opts = SolverOptions::from_environment();
  const auto curve = grid.empty() ? growth_curve(e, points, opts) : growth_curve(e, parse_list(grid), opts);

  json summary = ensemble_summary(e);
  summary["alpha_max"] = curve.alpha_max;
  summary["points"] = curve.points.size();
  summary["alpha_star"] = curve.alpha_star ? json(*curve.alpha_star) : json(nullptr);
  if (!curve.alpha_star_note.empty()) summary["alpha_star_note"] = curve.alpha_star_note;
  summary["stationary_alphas"] = curve.stationary_alphas;
  if (curve.peak) {
    summary["peak"] = point_json(*curve.peak);
    summary["peak"]["is_grid_max"] = curve.peak_is_grid_max;
  }
  if (!curve.multi_solution_ranges.empty()) {
    summary["multi_solution_ranges"] = json::array();
    for (const auto& [lo, hi] : curve.multi_solution_ranges) summary["multi_solution_ranges"].push_back({lo, hi});
  }
  if (e.check_hybrid_length()) {
    const auto sym = symmetry_report(curve, e);
    summary["symmetry"] = {{"all_cn_symmetric", sym.all_cn_symmetric},
                           {"m_bar", sym.m_bar},
                           {"max_deviation", sym.max_deviation},
                           {"compared", sym.compared},
                           {"consistent", sym.consistent}};
  }

  std::ostringstream csv;
  write_curve_csv(csv, curve);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw SpecError("cannot write " + out_path);
    f << csv.str();
  }
  summary["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  (out_path.empty() || out_path == "-" ? std::cerr : std::cout) << summary.dump(2) << "\n";
  return 0;
}

int run_alpha_star(const std::string& spec, const std::string& kind, bool approx) {
  const auto e = load_ensemble(spec, parse_kind(kind));
  json report = ensemble_summary(e);
  report.update(classification_json(e));
  double exact = 0.0;
  try {
    exact = critical_exponent(e, SolverOptions::from_environment());
    report["exact"] = exact;
  } catch (const ClassifierInconclusive& ex) {
    report["exact"] = nullptr;
    report["note"] = ex.what();
  }
  if (approx) {
    try {
      const auto a = alpha_star_approx(e);
      report["approx"] = a.value;
      report["approx_formula"] = a.formula;
      report["approx_general"] = a.general;
      if (report["exact"].is_number() && exact > 0.0) report["relative_error"] = std::abs(a.value - exact) / exact;
    } catch (const ExpansionUnavailable& ex) {
      report["approx"] = nullptr;
      report["approx_note"] = ex.what();
    }
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

json single_code_json(const BinaryMatrix& g) {
  json j;
  j["length"] = g.cols();
  j["dimension"] = g.rows();
  const auto wef = weight_enumerator(g);
  j["wef"] = to_polynomial_string(wef);
  j["ssef_bd"] = to_polynomial_string(bd_ssef(wef));
  j["ssef_map"] = to_polynomial_string(map_ssef(g));
  j["iowef"] = to_polynomial_string(io_weight_enumerator(g));
  if (g.rows() + g.cols() <= 26) j["io_ssef_map"] = to_polynomial_string(io_map_ssef(g));
  j["symmetric"] = is_symmetric(wef);
  j["all_ones_codeword"] = has_all_ones_codeword(g);
  return j;
}

int run_enumerate(const std::string& spec, const std::string& code) {
  json out;
  if (!code.empty()) {
    json c;
    try {
      c = json::parse(code);
    } catch (const json::parse_error& ex) {
      throw SpecError(std::string("--code: ") + ex.what());
    }
    out = single_code_json(code_from_json(c));
  } else {
    const auto e = load_ensemble(spec);
    out["variable_nodes"] = json::array();
    for (const auto& v : e.variable_nodes()) out["variable_nodes"].push_back(enumerators_json(v));
    out["check_nodes"] = json::array();
    for (const auto& c : e.check_nodes()) out["check_nodes"].push_back(enumerators_json(c));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_oracle(const std::string& spec, const std::string& kind, const std::string& ns, double alpha) {
  const auto e = load_ensemble(spec, parse_kind(kind));
  std::vector<long> sizes;
  for (double v : parse_list(ns)) {
    if (v != std::floor(v) || v < 1) throw SpecError("--n values must be positive integers");
    sizes.push_back(static_cast<long>(v));
  }
  const auto rows = empirical_growth(e, sizes, alpha);
  json out{{"alpha", alpha}, {"kind", to_string(e.kind())}, {"rows", json::array()}};
  for (const auto& r : rows) {
    out["rows"].push_back({{"n", r.n},
                           {"target_weight", r.target},
                           {"w_low", r.w_low},
                           {"w_high", r.w_high},
                           {"exponent", r.exponent ? json(*r.exponent) : json(nullptr)}});
  }
  const auto amax = support_max_alpha(e);
  if (alpha > 1e-9 && alpha < amax - 1e-9) out["G"] = solve_point(e, alpha).G;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral shapes of D-GLDPC code ensembles"};
  app.require_subcommand(1);

  std::string spec, kind = "weight", grid, out_path, code, ns;
  int points = 100;
  bool approx = false;
  double alpha = 0.0;

  auto* curve = app.add_subcommand("curve", "solve G(alpha) on a grid; CSV to --out, summary JSON");
  curve->add_option("spec", spec, "ensemble JSON file")->required();
  curve->add_option("--kind", kind, "weight | ss-bd | ss-map");
  auto* pts = curve->add_option("--points", points, "uniform grid size")->check(CLI::Range(2, 100000));
  curve->add_option("--grid", grid, "comma-separated alpha values")->excludes(pts);
  curve->add_option("--out", out_path, "CSV output path ('-' for stdout)");

  auto* star = app.add_subcommand("alpha-star", "critical exponent and small-alpha approximation");
  star->add_option("spec", spec, "ensemble JSON file")->required();
  star->add_option("--kind", kind, "weight | ss-bd | ss-map");
  star->add_flag("--approx", approx, "also evaluate the small-alpha approximations");

  auto* enumerate = app.add_subcommand("enumerate", "enumerators of every node type, or of one --code");
  enumerate->add_option("spec", spec, "ensemble JSON file");
  enumerate->add_option("--code", code, "inline code object, e.g. '{\"kind\":\"repetition\",\"length\":5}'");

  auto* oracle = app.add_subcommand("oracle", "exact finite-n exponents (1/n) log E[A_w]");
  oracle->add_option("spec", spec, "ensemble JSON file")->required();
  oracle->add_option("--kind", kind, "weight | ss-bd | ss-map");
  oracle->add_option("--n", ns, "comma-separated VN counts")->required();
  oracle->add_option("--alpha", alpha, "normalized weight")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int rc = app.exit(ex);
    return rc == 0 ? 0 : kExitSchema;
  }

  try {
    if (*curve) return run_curve(spec, kind, points, grid, out_path);
    if (*star) return run_alpha_star(spec, kind, approx);
    if (*enumerate) {
      if (spec.empty() == code.empty()) throw SpecError("enumerate needs exactly one of a spec file or --code");
      return run_enumerate(spec, code);
    }
    if (*oracle) return run_oracle(spec, kind, ns, alpha);
  } catch (const ConvergenceError& ex) {
    std::cerr << "solver failure at alpha = " << ex.alpha() << ": " << ex.what() << "\n";
    return kExitSolver;
  } catch (const IntegralityError& ex) {
    std::cerr << "error: " << ex.what() << " (smallest admissible n: " << ex.minimal_n() << ")\n";
    return kExitSchema;
  } catch (const ClassifierInconclusive& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitSolver;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitSchema;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: bad number: " << ex.what() << "\n";
    return kExitSchema;
  }
  return 0;
}
