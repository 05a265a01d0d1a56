#pragma once

#include <string>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/spec_file.hpp"

namespace fixtures {

using namespace dgldpc;

inline std::string data(const std::string& name) { return std::string(DGLDPC_DATA_DIR) + "/" + name; }

inline BinaryMatrix hamming74() { return BinaryMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"}); }

inline BinaryMatrix code74_no_ones() {
  return BinaryMatrix::from_strings({"1100000", "0110000", "0001100", "0000011"});
}

inline Ensemble regular(int dv, int dc, EnumeratorKind kind = EnumeratorKind::Weight) {
  return Ensemble({VariableNodeType::repetition("rep", 1.0, dv)},
                  {CheckNodeType::from_generator("spc", 1.0, BinaryMatrix::spc_cyclic(dc))}, kind);
}

inline Ensemble tanner_hamming(EnumeratorKind kind = EnumeratorKind::Weight) {
  return Ensemble({VariableNodeType::repetition("rep2", 1.0, 2)}, {CheckNodeType::from_generator("ham", 1.0, hamming74())},
                  kind);
}

inline Ensemble mixed_checkhybrid(EnumeratorKind kind = EnumeratorKind::Weight) {
  return Ensemble({VariableNodeType::repetition("rep3", 1.0, 3)},
                  {CheckNodeType::from_generator("spc7", 13.0 / 18.0, BinaryMatrix::spc_cyclic(7)),
                   CheckNodeType::from_generator("code74", 5.0 / 18.0, code74_no_ones())},
                  kind);
}

}  // namespace fixtures
