// Entanglement-p-breaking classification of maps, PPT/IPT map classification,
// Kraus-rank certificate extraction from Choi decompositions, and the
// channel-iteration experiments (squares and long products of maps whose Choi
// matrix is invariant under partial transposition).

#ifndef REALMAP_EBREAK_HPP
#define REALMAP_EBREAK_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "realmap/cones.hpp"

namespace realmap {
namespace ebreak {

struct EBVerdictBundle {
  Field field = Field::Real;
  int schmidt = 1;
  Verdict choiSep;
  std::optional<cones::SepDecomposition> decomposition;
  /// Kraus operators C_j = A_j^t extracted from certified decompositions;
  /// each has rank <= schmidt and the list reconstructs the Choi matrix.
  std::optional<std::vector<Matrix>> krausRankCertificate;
  double krausReconstructionResidual = 0;
  /// (probe map id, lambda_min of Choi(Psi o Phi)) for the p-positive family.
  std::vector<std::pair<std::string, double>> compositionProbe;
};

/// Entanglement p-breaking over the requested field: classifies the Choi
/// matrix against the rank-p cone, converts certified factors into a Kraus
/// certificate, and probes compositions with p-positive maps.
EBVerdictBundle checkEbP(const LinearMapRep& map, int schmidt, Field field, const SolverConfig& cfg,
                         std::span<const cones::WitnessEntry> probeFamily = {},
                         std::span<const cones::WitnessEntry> witnessBattery = {});

struct PptIptReport {
  Verdict cp;
  Verdict ppt;
  bool ipt = false;
  double iptDefect = 0;
  /// max over i<j of ||Phi(E_ij - E_ji)||_F; for CP maps this vanishes
  /// exactly when the map is IPT.
  double asymAnnihilation = 0;
};

PptIptReport classifyMapPptIpt(const LinearMapRep& map, const SolverConfig& cfg);

struct Ipt2ProbeReport {
  EBVerdictBundle realEb;
  EBVerdictBundle csepEb;
  /// True when the square of a certified-IPT completely positive map was
  /// REFUTED as entanglement breaking: a potential counterexample, flagged
  /// loudly and never passed silently.
  bool counterexampleFlag = false;
};

/// Pre: the map is completely positive and IPT (throws NotIpt otherwise).
Ipt2ProbeReport runIptSquaredProbe(const LinearMapRep& map, const SolverConfig& cfg,
                                   std::span<const cones::WitnessEntry> probeFamily = {},
                                   std::span<const cones::WitnessEntry> witnessBattery = {});

struct IterationStep {
  int k = 0;
  double iptDefect = 0;
  double pptMinEigenvalue = 0;
  double sepResidual = 0;  // best real rank-1 decomposition residual found
  bool sepCertified = false;
};

/// Diagnostics of Phi^k for k = 1..kMax; requires a square map. Reported raw,
/// no smoothing. sepCertified combines the constructive real search with the
/// ball-plus-IPT certificate.
std::vector<IterationStep> iterateAndTrack(const LinearMapRep& map, int kMax, const SolverConfig& cfg);

struct EbDistanceSurrogates {
  double iptDefect = 0;      // ||C - PT(C)||_F / 2, a lower-bound surrogate
  double pptNegativity = 0;  // |min(0, lambda_min(PT(C)))|
  double sepUpperBound = 0;  // Frobenius distance to the best found separable sum
};

EbDistanceSurrogates distanceToEbSurrogates(const LinearMapRep& map, const SolverConfig& cfg);

}  // namespace ebreak
}  // namespace realmap

#endif
