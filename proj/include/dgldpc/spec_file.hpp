#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/errors.hpp"
#include "dgldpc/spectral.hpp"

namespace dgldpc {

/// The ensemble description file is malformed or violates the schema.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Edge fractions in a description file must sum to 1 within this; they are then renormalized.
constexpr double kSpecFractionTolerance = 1e-9;

EnumeratorKind parse_kind(const std::string& s);

/// Builds one local code from a `code` object such as
/// {"kind": "spc_cyclic", "length": 6} or {"kind": "generator", "rows": ["1100", "0111"]}.
BinaryMatrix code_from_json(const nlohmann::json& code);

Ensemble ensemble_from_json(const nlohmann::json& doc, EnumeratorKind kind = EnumeratorKind::Weight);
Ensemble load_ensemble(const std::string& path, EnumeratorKind kind = EnumeratorKind::Weight);

/// The same ensemble with every node given by explicit enumerator coefficients ("wef" codes).
nlohmann::json to_explicit_json(const Ensemble& e);

nlohmann::json enumerators_json(const CheckNodeType& c);
nlohmann::json enumerators_json(const VariableNodeType& v);

/// Header "alpha,G,x0,y0,z0,beta,residual", one row per point, %.17g, '\n' line endings.
void write_curve_csv(std::ostream& os, const SpectralCurve& c);

}  // namespace dgldpc
