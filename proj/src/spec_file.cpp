#include "dgldpc/spec_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace dgldpc {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw SpecError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw SpecError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

double require_fraction(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw SpecError(where + ": \"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!(x > 0.0 && x <= 1.0 + kSpecFractionTolerance)) throw SpecError(where + ": \"" + key + "\" must lie in (0, 1]");
  return x;
}

std::vector<Count> int_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw SpecError(where + ": expected a non-empty integer list");
  std::vector<Count> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw SpecError(where + ": coefficients must be integers");
    out.push_back(x.get<Count>());
  }
  return out;
}

IOWeightEnumerator io_from_json(const json& v, EnumeratorKind kind, const std::string& where) {
  if (!v.is_array() || v.empty()) throw SpecError(where + ": expected a list of rows indexed by input weight");
  const auto first = int_list(v.front(), where);
  IOWeightEnumerator e(kind, static_cast<int>(v.size()) - 1, static_cast<int>(first.size()) - 1);
  for (std::size_t u = 0; u < v.size(); ++u) {
    const auto row = int_list(v[u], where);
    if (row.size() != first.size()) throw SpecError(where + ": rows of the IO enumerator differ in length");
    for (std::size_t j = 0; j < row.size(); ++j) e.at(static_cast<int>(u), static_cast<int>(j)) = row[j];
  }
  return e;
}

json io_to_json(const IOWeightEnumerator& e) {
  json rows = json::array();
  for (int u = 0; u <= e.in_length; ++u) {
    json row = json::array();
    for (int v = 0; v <= e.out_length; ++v) row.push_back(e.at(u, v));
    rows.push_back(row);
  }
  return rows;
}

void check_length(const json& code, const BinaryMatrix& g, const std::string& where) {
  if (code.contains("length") && code.at("length") != g.cols()) {
    throw SpecError(where + ": \"length\" does not match the generator matrix");
  }
  if (code.contains("dimension") && code.at("dimension") != g.rows()) {
    throw SpecError(where + ": \"dimension\" does not match the generator matrix");
  }
}

bool is_explicit(const json& code) { return code.is_object() && code.value("kind", "") == "wef"; }

CheckNodeType check_node(const json& node, double rho, const std::string& where) {
  const auto name = node.value("name", where);
  const auto& code = require(node, "code", where);
  if (is_explicit(code)) {
    const int dim = require_int(code, "dimension", where);
    WeightEnumerator wef{EnumeratorKind::Weight, int_list(require(code, "coeffs", where), where)};
    std::optional<WeightEnumerator> map;
    if (code.contains("map_coeffs")) map = WeightEnumerator{EnumeratorKind::StoppingMAP, int_list(code.at("map_coeffs"), where)};
    if (code.contains("length") && code.at("length") != wef.length()) {
      throw SpecError(where + ": \"length\" does not match the coefficient list");
    }
    return CheckNodeType::from_enumerator(name, rho, dim, std::move(wef), std::move(map));
  }
  const auto g = code_from_json(code);
  check_length(code, g, where);
  std::optional<WeightEnumerator> expected;
  if (code.contains("coeffs")) expected = WeightEnumerator{EnumeratorKind::Weight, int_list(code.at("coeffs"), where)};
  return CheckNodeType::from_generator(name, rho, g, expected);
}

VariableNodeType variable_node(const json& node, double lambda, const std::string& where) {
  const auto name = node.value("name", where);
  const auto& code = require(node, "code", where);
  if (is_explicit(code)) {
    auto wef = io_from_json(require(code, "coeffs", where), EnumeratorKind::Weight, where);
    std::optional<IOWeightEnumerator> map;
    if (code.contains("map_coeffs")) map = io_from_json(code.at("map_coeffs"), EnumeratorKind::StoppingMAP, where);
    if (code.contains("length") && code.at("length") != wef.out_length) {
      throw SpecError(where + ": \"length\" does not match the coefficient array");
    }
    return VariableNodeType::from_enumerator(name, lambda, std::move(wef), std::move(map));
  }
  const auto g = code_from_json(code);
  check_length(code, g, where);
  std::optional<IOWeightEnumerator> expected;
  if (code.contains("coeffs")) expected = io_from_json(code.at("coeffs"), EnumeratorKind::Weight, where);
  return VariableNodeType::from_generator(name, lambda, g, expected);
}

template <class Build>
auto node_list(const json& doc, const char* key, const char* fraction_key, Build build) {
  const auto& arr = require(doc, key, "ensemble");
  if (!arr.is_array() || arr.empty()) throw SpecError(std::string("\"") + key + "\" must be a non-empty list");
  std::vector<double> fractions;
  double sum = 0.0;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    fractions.push_back(require_fraction(arr[i], fraction_key, std::string(key) + "[" + std::to_string(i) + "]"));
    sum += fractions.back();
  }
  if (std::abs(sum - 1.0) > kSpecFractionTolerance) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "\"%s\" fractions sum to %.12g, not 1", fraction_key, sum);
    throw SpecError(std::string(key) + ": " + buf);
  }
  using Node = decltype(build(arr[0], 0.0, std::string()));
  std::vector<Node> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(build(arr[i], fractions[i] / sum, std::string(key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

EnumeratorKind parse_kind(const std::string& s) {
  if (s == "weight") return EnumeratorKind::Weight;
  if (s == "ss-bd") return EnumeratorKind::StoppingBD;
  if (s == "ss-map") return EnumeratorKind::StoppingMAP;
  throw SpecError("unknown enumerator kind '" + s + "' (expected weight, ss-bd or ss-map)");
}

BinaryMatrix code_from_json(const json& code) {
  if (!code.is_object()) throw SpecError("\"code\" must be an object");
  const auto kind = code.value("kind", "");
  try {
    if (kind == "generator") {
      const auto& rows = require(code, "rows", "generator code");
      if (!rows.is_array()) throw SpecError("\"rows\" must be a list of 0/1 strings");
      std::vector<std::string> r;
      for (const auto& row : rows) {
        if (!row.is_string()) throw SpecError("\"rows\" must be a list of 0/1 strings");
        r.push_back(row.get<std::string>());
      }
      return BinaryMatrix::from_strings(r);
    }
    const int length = require_int(code, "length", kind + " code");
    if (kind == "repetition") return BinaryMatrix::repetition(length);
    if (kind == "spc_cyclic") return BinaryMatrix::spc_cyclic(length);
    if (kind == "spc_systematic") return BinaryMatrix::spc_systematic(length);
    if (kind == "spc_antisystematic") return BinaryMatrix::spc_antisystematic(length);
  } catch (const json::exception& ex) {
    throw SpecError(std::string("bad code description: ") + ex.what());
  }
  throw SpecError("unknown code kind '" + kind + "'");
}

Ensemble ensemble_from_json(const json& doc, EnumeratorKind kind) {
  if (!doc.is_object()) throw SpecError("ensemble description must be a JSON object");
  try {
    auto vns = node_list(doc, "variable_nodes", "lambda",
                         [](const json& n, double f, const std::string& w) { return variable_node(n, f, w); });
    auto cns = node_list(doc, "check_nodes", "rho",
                         [](const json& n, double f, const std::string& w) { return check_node(n, f, w); });
    std::string label;
    if (doc.contains("metadata") && doc.at("metadata").is_object()) label = doc.at("metadata").value("label", "");
    return Ensemble(std::move(vns), std::move(cns), kind, label);
  } catch (const json::exception& ex) {
    throw SpecError(std::string("bad ensemble description: ") + ex.what());
  }
}

Ensemble load_ensemble(const std::string& path, EnumeratorKind kind) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw SpecError(path + ": " + ex.what());
  }
  return ensemble_from_json(doc, kind);
}

json enumerators_json(const CheckNodeType& c) {
  json j;
  j["name"] = c.name;
  j["length"] = c.length;
  j["dimension"] = c.dimension;
  j["wef"] = to_polynomial_string(c.weight);
  j["wef_coeffs"] = c.weight.coeffs;
  j["ssef_bd"] = to_polynomial_string(c.stopping_bd);
  j["ssef_bd_coeffs"] = c.stopping_bd.coeffs;
  if (c.stopping_map) {
    j["ssef_map"] = to_polynomial_string(*c.stopping_map);
    j["ssef_map_coeffs"] = c.stopping_map->coeffs;
  }
  j["symmetric"] = is_symmetric(c.weight);
  if (c.generator) j["all_ones_codeword"] = has_all_ones_codeword(*c.generator);
  return j;
}

json enumerators_json(const VariableNodeType& v) {
  json j;
  j["name"] = v.name;
  j["length"] = v.length;
  j["dimension"] = v.dimension;
  j["iowef"] = to_polynomial_string(v.weight);
  j["iowef_coeffs"] = io_to_json(v.weight);
  WeightEnumerator out{EnumeratorKind::Weight, v.weight.output_marginal()};
  j["wef"] = to_polynomial_string(out);
  if (v.stopping_map) {
    j["io_ssef_map"] = to_polynomial_string(*v.stopping_map);
    j["io_ssef_map_coeffs"] = io_to_json(*v.stopping_map);
  }
  return j;
}

json to_explicit_json(const Ensemble& e) {
  json doc;
  doc["metadata"] = {{"label", e.label()}};
  doc["variable_nodes"] = json::array();
  for (const auto& v : e.variable_nodes()) {
    json code{{"kind", "wef"}, {"length", v.length}, {"coeffs", io_to_json(v.weight)}};
    if (v.stopping_map) code["map_coeffs"] = io_to_json(*v.stopping_map);
    doc["variable_nodes"].push_back({{"name", v.name}, {"lambda", v.lambda}, {"code", code}});
  }
  doc["check_nodes"] = json::array();
  for (const auto& c : e.check_nodes()) {
    json code{{"kind", "wef"}, {"length", c.length}, {"dimension", c.dimension}, {"coeffs", c.weight.coeffs}};
    if (c.stopping_map) code["map_coeffs"] = c.stopping_map->coeffs;
    doc["check_nodes"].push_back({{"name", c.name}, {"rho", c.rho}, {"code", code}});
  }
  return doc;
}

void write_curve_csv(std::ostream& os, const SpectralCurve& c) {
  os << "alpha,G,x0,y0,z0,beta,residual\n";
  char buf[512];
  for (const auto& p : c.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.alpha, p.G, p.x0, p.y0, p.z0,
                  p.beta, p.residual);
    os << buf;
  }
}

}  // namespace dgldpc
