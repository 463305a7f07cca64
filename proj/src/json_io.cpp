#include "realmap/json_io.hpp"

#include <cmath>

#include "realmap/linalg.hpp"

namespace realmap {

using nlohmann::json;

namespace {

json gridOf(const Matrix& m, bool imagPart) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(imagPart ? m.im(i, j) : m.re(i, j));
    rows.push_back(row);
  }
  return rows;
}

void requireFinite(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "matrix entries must be finite");
}

}  // namespace

json toJson(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["field"] = field_name(m.field());
  j["re"] = gridOf(m, false);
  if (m.field() == Field::Complex) j["im"] = gridOf(m, true);
  return j;
}

Matrix matrixFromJson(const json& j) {
  try {
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    std::string f = j.at("field").get<std::string>();
    if (f != "R" && f != "C") throw Error(ErrorCode::ParseError, "field must be \"R\" or \"C\"");
    Field field = f == "C" ? Field::Complex : Field::Real;
    if (field == Field::Real && j.contains("im"))
      throw Error(ErrorCode::ParseError, "real matrix must not carry an \"im\" grid");
    if (field == Field::Complex && !j.contains("im"))
      throw Error(ErrorCode::ParseError, "complex matrix requires an \"im\" grid");
    if (rows < 1 || cols < 1) throw Error(ErrorCode::ParseError, "matrix shape must be positive");
    Matrix m(rows, cols, field);
    const json& re = j.at("re");
    if (static_cast<int>(re.size()) != rows) throw Error(ErrorCode::ParseError, "re: row count mismatch");
    for (int i = 0; i < rows; ++i) {
      if (static_cast<int>(re[i].size()) != cols)
        throw Error(ErrorCode::ParseError, "re: column count mismatch");
      for (int jj = 0; jj < cols; ++jj) {
        double v = re[i][jj].get<double>();
        requireFinite(v);
        m.setRe(i, jj, v);
      }
    }
    if (field == Field::Complex) {
      const json& im = j.at("im");
      if (static_cast<int>(im.size()) != rows) throw Error(ErrorCode::ParseError, "im: row count mismatch");
      for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(im[i].size()) != cols)
          throw Error(ErrorCode::ParseError, "im: column count mismatch");
        for (int jj = 0; jj < cols; ++jj) {
          double v = im[i][jj].get<double>();
          requireFinite(v);
          m.setIm(i, jj, v);
        }
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix json: ") + e.what());
  }
}

json toJson(const BipartiteOperator& p) {
  json j = toJson(p.mat());
  j["dimLeft"] = p.dimLeft();
  j["dimRight"] = p.dimRight();
  return j;
}

BipartiteOperator bipartiteFromJson(const json& j) {
  try {
    int dl = j.at("dimLeft").get<int>();
    int dr = j.at("dimRight").get<int>();
    Matrix m = matrixFromJson(j);
    if (m.rows() != dl * dr)
      throw Error(ErrorCode::DimensionMismatch, "bipartite json: matrix size must equal dimLeft*dimRight");
    return BipartiteOperator(dl, dr, std::move(m));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bipartite json: ") + e.what());
  }
}

json toJson(const LinearMapRep& map) {
  json j;
  j["dimIn"] = map.dimIn();
  j["dimOut"] = map.dimOut();
  j["field"] = field_name(map.field());
  j["choi"] = toJson(map.choi());
  if (map.krausList()) {
    json list = json::array();
    for (const Matrix& k : *map.krausList()) list.push_back(toJson(k));
    j["kraus"] = list;
    j["krausRankBound"] = map.krausRankBound();
  }
  return j;
}

LinearMapRep mapFromJson(const json& j) {
  try {
    int dimIn = j.at("dimIn").get<int>();
    int dimOut = j.at("dimOut").get<int>();
    BipartiteOperator choi = bipartiteFromJson(j.at("choi"));
    if (choi.dimLeft() != dimIn || choi.dimRight() != dimOut)
      throw Error(ErrorCode::DimensionMismatch, "map json: choi dims disagree with dimIn/dimOut");
    LinearMapRep map = LinearMapRep::fromChoi(std::move(choi));
    if (j.contains("kraus")) {
      std::vector<Matrix> kraus;
      for (const json& k : j.at("kraus")) kraus.push_back(matrixFromJson(k));
      LinearMapRep check = LinearMapRep::fromKraus(kraus, map.field());
      Matrix a = check.choi().mat(), b = map.choi().mat();
      if (a.field() != b.field()) {
        a = a.asComplex();
        b = b.asComplex();
      }
      if ((a - b).frobeniusNorm() > 1e-10 * (1.0 + b.frobeniusNorm()))
        throw Error(ErrorCode::ParseError, "map json: kraus list does not reproduce the choi matrix");
      int bound = j.contains("krausRankBound") ? j.at("krausRankBound").get<int>() : 0;
      if (bound == 0)
        for (const Matrix& k : kraus) bound = std::max(bound, matrixRank(k));
      map.attachKraus(std::move(kraus), bound);
    }
    return map;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("map json: ") + e.what());
  }
}

json toJson(const SolverConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["restarts"] = cfg.restarts;
  j["maxIters"] = cfg.maxIters;
  j["convergenceTol"] = cfg.convergenceTol;
  j["psdTol"] = cfg.psdTol;
  j["rankTol"] = cfg.rankTol;
  j["decompTol"] = cfg.decompTol;
  j["maxFactors"] = cfg.maxFactors;
  return j;
}

json toJson(const FactoredVector& fv) {
  json j;
  j["X"] = toJson(fv.x);
  j["Y"] = toJson(fv.y);
  return j;
}

json toJson(const Verdict& v) {
  json j;
  j["status"] = statusName(v.status);
  if (v.value) j["value"] = *v.value;
  if (v.certifiedBy) j["certifiedBy"] = certifiedByName(*v.certifiedBy);
  if (v.witnessFactored)
    j["witness"] = toJson(*v.witnessFactored);
  else if (v.witnessMatrix)
    j["witness"] = toJson(*v.witnessMatrix);
  j["trials"] = v.trials;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json toJson(const cones::SepDecomposition& dec) {
  json j;
  j["rankBound"] = dec.rankBound;
  j["field"] = field_name(dec.field);
  j["conjugatePaired"] = dec.conjugatePaired;
  j["residual"] = dec.residual;
  json factors = json::array();
  for (const Matrix& a : dec.factors) factors.push_back(toJson(a));
  j["factors"] = factors;
  return j;
}

json toJson(const cones::StateClassification& cls) {
  json j;
  j["psd"] = toJson(cls.psd);
  j["ppt"] = toJson(cls.ppt);
  j["iptDefect"] = cls.ipt.defect;
  j["ipt"] = cls.ipt.ipt;
  j["ball"] = toJson(cls.ball);
  json sep = json::array();
  for (const cones::SepVerdict& sv : cls.sep) {
    json e;
    e["field"] = field_name(sv.request.field);
    e["p"] = sv.request.schmidt;
    e["verdict"] = toJson(sv.verdict);
    if (sv.decomposition) e["decomposition"] = toJson(*sv.decomposition);
    sep.push_back(e);
  }
  j["sep"] = sep;
  json wit = json::array();
  for (const auto& [id, val] : cls.witnesses) wit.push_back({{"map", id}, {"value", val}});
  j["witnesses"] = wit;
  return j;
}

json toJson(const ebreak::EBVerdictBundle& b) {
  json j;
  j["field"] = field_name(b.field);
  j["p"] = b.schmidt;
  j["choiSep"] = toJson(b.choiSep);
  if (b.decomposition) j["decomposition"] = toJson(*b.decomposition);
  if (b.krausRankCertificate) {
    json list = json::array();
    for (const Matrix& k : *b.krausRankCertificate) list.push_back(toJson(k));
    j["krausRankCertificate"] = list;
    j["krausReconstructionResidual"] = b.krausReconstructionResidual;
  }
  json probe = json::array();
  for (const auto& [id, val] : b.compositionProbe) probe.push_back({{"map", id}, {"minEig", val}});
  j["compositionProbe"] = probe;
  return j;
}

json toJson(const ebreak::PptIptReport& r) {
  json j;
  j["cp"] = toJson(r.cp);
  j["ppt"] = toJson(r.ppt);
  j["ipt"] = r.ipt;
  j["iptDefect"] = r.iptDefect;
  j["asymAnnihilation"] = r.asymAnnihilation;
  return j;
}

json toJson(const ebreak::IterationStep& s) {
  json j;
  j["k"] = s.k;
  j["iptDefect"] = s.iptDefect;
  if (std::isnan(s.pptMinEigenvalue))
    j["pptMinEigenvalue"] = nullptr;
  else
    j["pptMinEigenvalue"] = s.pptMinEigenvalue;
  if (std::isfinite(s.sepResidual)) j["sepResidual"] = s.sepResidual;
  j["sepCertified"] = s.sepCertified;
  return j;
}

json toJson(const ebreak::Ipt2ProbeReport& r) {
  json j;
  j["realEb"] = toJson(r.realEb);
  j["csepEb"] = toJson(r.csepEb);
  j["counterexampleFlag"] = r.counterexampleFlag;
  return j;
}

json parseJsonText(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ParseError, "invalid json");
  return j;
}

}  // namespace realmap
