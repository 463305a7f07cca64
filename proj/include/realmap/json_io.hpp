// JSON wire formats.
//
// Matrix: {"rows": n, "cols": m, "field": "R"|"C", "re": [[...]], "im": [[...]]}
// with "im" present exactly when field is "C". Bipartite operators add
// "dimLeft"/"dimRight"; maps are {"dimIn","dimOut","field","choi",...} with an
// optional "kraus" list. Verdicts carry status, value, witness, certifiedBy
// and the trial count.

#ifndef REALMAP_JSON_IO_HPP
#define REALMAP_JSON_IO_HPP

#include <json.hpp>

#include "realmap/cones.hpp"
#include "realmap/ebreak.hpp"

namespace realmap {

nlohmann::json toJson(const Matrix& m);
Matrix matrixFromJson(const nlohmann::json& j);

nlohmann::json toJson(const BipartiteOperator& p);
BipartiteOperator bipartiteFromJson(const nlohmann::json& j);

nlohmann::json toJson(const LinearMapRep& map);
LinearMapRep mapFromJson(const nlohmann::json& j);

nlohmann::json toJson(const SolverConfig& cfg);

nlohmann::json toJson(const Verdict& v);
nlohmann::json toJson(const FactoredVector& fv);

nlohmann::json toJson(const cones::SepDecomposition& dec);
nlohmann::json toJson(const cones::StateClassification& cls);

nlohmann::json toJson(const ebreak::EBVerdictBundle& b);
nlohmann::json toJson(const ebreak::PptIptReport& r);
nlohmann::json toJson(const ebreak::IterationStep& s);
nlohmann::json toJson(const ebreak::Ipt2ProbeReport& r);

/// Parse a JSON document, mapping parse failures to ErrorCode::ParseError.
nlohmann::json parseJsonText(const std::string& text);

}  // namespace realmap

#endif
