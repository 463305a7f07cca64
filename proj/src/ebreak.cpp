#include "realmap/ebreak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "realmap/linalg.hpp"

namespace realmap {
namespace ebreak {

namespace {

std::vector<Matrix> krausFromDecomposition(const cones::SepDecomposition& dec) {
  std::vector<Matrix> kraus;
  for (const Matrix& a : dec.factors) {
    kraus.push_back(a.transpose());
    if (dec.conjugatePaired) kraus.push_back(a.conj().transpose());
  }
  return kraus;
}

}  // namespace

EBVerdictBundle checkEbP(const LinearMapRep& map, int schmidt, Field field, const SolverConfig& cfg,
                         std::span<const cones::WitnessEntry> probeFamily,
                         std::span<const cones::WitnessEntry> witnessBattery) {
  if (field == Field::Real && map.field() == Field::Complex)
    throw Error(ErrorCode::FieldMismatch, "checkEbP: real-breaking request on a complex map");
  EBVerdictBundle out;
  out.field = field;
  out.schmidt = schmidt;

  cones::SepRequest req{field, schmidt};
  cones::StateClassification cls =
      cones::classifyState(map.choi(), std::span<const cones::SepRequest>(&req, 1), cfg, witnessBattery);
  out.choiSep = cls.sep.front().verdict;
  out.decomposition = cls.sep.front().decomposition;

  if (out.decomposition && !out.decomposition->factors.empty()) {
    std::vector<Matrix> kraus = krausFromDecomposition(*out.decomposition);
    Field krausField = kraus.front().field();
    LinearMapRep rebuilt = LinearMapRep::fromKraus(kraus, krausField);
    Matrix a = rebuilt.choi().mat();
    Matrix b = map.choi().mat();
    if (a.field() != b.field()) {
      a = a.asComplex();
      b = b.asComplex();
    }
    out.krausReconstructionResidual = (a - b).frobeniusNorm();
    bool ranksOk = true;
    for (const Matrix& c : kraus)
      if (matrixRank(c, cfg.rankTol) > schmidt) ranksOk = false;
    if (ranksOk && out.krausReconstructionResidual <= 1e-10 * (1.0 + b.frobeniusNorm()))
      out.krausRankCertificate = std::move(kraus);
  }

  // Composition probe: for a certified p-breaking map, Psi o Phi must be
  // completely positive for every p-positive Psi in the family.
  for (const cones::WitnessEntry& w : probeFamily) {
    int level = (field == Field::Complex) ? w.complexLevel : w.realLevel;
    if (level < schmidt) continue;
    if (w.map.dimIn() != map.dimOut()) continue;
    LinearMapRep phi = map;
    LinearMapRep psi = w.map;
    if (field == Field::Complex) {
      if (phi.field() == Field::Real) phi = phi.complexify();
      if (psi.field() == Field::Real) psi = psi.complexify();
    }
    LinearMapRep comp = psi.compose(phi);
    double lmin = minEigHermitian(comp.choi().mat().hermitized(), 1.0);
    out.compositionProbe.emplace_back(w.id, lmin);
  }
  return out;
}

PptIptReport classifyMapPptIpt(const LinearMapRep& map, const SolverConfig& cfg) {
  PptIptReport rep;
  rep.cp = isCompletelyPositive(map, cfg);
  rep.ppt = cones::isPpt(map.choi(), cfg.psdTol);
  cones::IptReport ipt = cones::isIpt(map.choi(), cfg.psdTol);
  rep.ipt = ipt.ipt;
  rep.iptDefect = ipt.defect;
  int n = map.dimIn();
  rep.asymAnnihilation = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix asym = Matrix::unit(n, i, j, map.field()) - Matrix::unit(n, j, i, map.field());
      rep.asymAnnihilation = std::max(rep.asymAnnihilation, map.apply(asym).frobeniusNorm());
    }
  return rep;
}

Ipt2ProbeReport runIptSquaredProbe(const LinearMapRep& map, const SolverConfig& cfg,
                                   std::span<const cones::WitnessEntry> probeFamily,
                                   std::span<const cones::WitnessEntry> witnessBattery) {
  PptIptReport cls = classifyMapPptIpt(map, cfg);
  if (!cls.ipt || !cls.cp.certified())
    throw Error(ErrorCode::NotIpt, "runIptSquaredProbe: map must be completely positive and IPT");
  LinearMapRep square = map.compose(map);
  Ipt2ProbeReport rep;
  rep.realEb = checkEbP(square, 1, Field::Real, cfg, probeFamily, witnessBattery);
  rep.csepEb = checkEbP(square, 1, Field::Complex, cfg, probeFamily, witnessBattery);
  rep.counterexampleFlag = rep.realEb.choiSep.refuted() || rep.csepEb.choiSep.refuted();
  return rep;
}

namespace {

std::pair<double, bool> sepStatusOf(const BipartiteOperator& choi, const SolverConfig& cfg) {
  cones::SearchResult sr = cones::searchSepDecompositionDetailed(choi, 1, Field::Real, cfg);
  bool certified = sr.certificate.has_value();
  if (!certified) {
    cones::IptReport ipt = cones::isIpt(choi, cfg.psdTol);
    if (ipt.ipt && cones::isPsd(choi.mat(), cfg.psdTol).certified() &&
        cones::gurvitsBarnumCertify(choi).certified())
      certified = true;
  }
  return {sr.bestResidual, certified};
}

}  // namespace

std::vector<IterationStep> iterateAndTrack(const LinearMapRep& map, int kMax, const SolverConfig& cfg) {
  if (map.dimIn() != map.dimOut())
    throw Error(ErrorCode::DimensionMismatch, "iterateAndTrack: map must be square");
  std::vector<IterationStep> steps;
  LinearMapRep cur = map;
  for (int k = 1; k <= kMax; ++k) {
    IterationStep st;
    st.k = k;
    st.iptDefect = iptDefect(cur.choi());
    Matrix pt = cur.choi().partialTransposeLeft().mat();
    st.pptMinEigenvalue = (pt.hermitianDefect() <= 1e-9 * (1.0 + pt.frobeniusNorm()))
                              ? minEigHermitian(pt)
                              : std::numeric_limits<double>::quiet_NaN();
    auto [residual, certified] = sepStatusOf(cur.choi(), cfg);
    st.sepResidual = residual;
    st.sepCertified = certified;
    steps.push_back(st);
    if (k < kMax) cur = map.compose(cur);
  }
  return steps;
}

EbDistanceSurrogates distanceToEbSurrogates(const LinearMapRep& map, const SolverConfig& cfg) {
  EbDistanceSurrogates out;
  out.iptDefect = iptDefect(map.choi()) / 2.0;
  Matrix pt = map.choi().partialTransposeLeft().mat();
  if (pt.hermitianDefect() <= 1e-9 * (1.0 + pt.frobeniusNorm()))
    out.pptNegativity = std::abs(std::min(0.0, minEigHermitian(pt)));
  else
    out.pptNegativity = std::numeric_limits<double>::quiet_NaN();
  auto [residual, certified] = sepStatusOf(map.choi(), cfg);
  out.sepUpperBound = residual;
  (void)certified;
  return out;
}

}  // namespace ebreak
}  // namespace realmap
