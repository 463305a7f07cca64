// Classification of bipartite PSD matrices against the Schmidt-rank-bounded
// separability cones, over R (plain rank-p factors) and over C on real
// matrices (conjugate-paired factors), plus witness evaluation under the
// trace duality Tr(C_Phi P) >= 0, constructive decomposition search, and the
// separable-ball certificate.
//
// Refutations are sound (IPT violation, negative partial transpose, negative
// witness against a map of sufficient positivity level); certifications are
// constructive (verified decomposition) or analytic (ball, IPT-plus-CSEP at
// p = 1). Decomposition search failure is silence, never refutation.

#ifndef REALMAP_CONES_HPP
#define REALMAP_CONES_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "realmap/posit.hpp"

namespace realmap {
namespace cones {

struct SepDecomposition {
  int rankBound = 1;
  Field field = Field::Real;
  /// Complex factors on a real target: reconstruction is
  /// Re(sum_j vec(A_j) vec(A_j)*) = sum_j vec(X_j)vec(X_j)^t + vec(Y_j)vec(Y_j)^t
  /// with A_j = X_j + i Y_j, rank(A_j) <= rankBound.
  bool conjugatePaired = false;
  std::vector<Matrix> factors;  // n x m each
  double residual = 0;
};

Matrix reconstruct(const SepDecomposition& dec, int n, int m);

struct DecompositionCheck {
  double residual = 0;
  int maxFactorRank = 0;
  bool ok = false;
};

/// Recompute residual and per-factor ranks from the stored factors.
DecompositionCheck verifyDecomposition(const BipartiteOperator& p, const SepDecomposition& dec,
                                       double residualTol, double rankTol = 1e-9);

Verdict isPsd(const Matrix& p, double tol);

/// Pre: P PSD. CERTIFIED iff lambda_min(PT(P)) >= -tol * scale.
Verdict isPpt(const BipartiteOperator& p, double tol);

struct IptReport {
  bool ipt = false;
  double defect = 0;  // ||P - PT(P)||_F
};

IptReport isIpt(const BipartiteOperator& p, double tol);

/// Tr(C_Phi P); negative with Phi p-positive certifies P outside SEP_p.
double witnessValue(const LinearMapRep& phi, const BipartiteOperator& p);

/// (Phi (x) id_m)(P) computed blockwise on the left factor.
Matrix applyToLeftFactor(const LinearMapRep& phi, const BipartiteOperator& p);

/// A witness-battery entry: a map together with its declared positivity
/// levels (how far it can refute). realLevel = largest p with the real map
/// p-positive; complexLevel = largest p with p-positive complexification.
struct WitnessEntry {
  std::string id;
  LinearMapRep map;
  int realLevel = 0;
  int complexLevel = 0;
};

/// Applies each family map (tensored with the identity on the right factor)
/// to P; REFUTED when some output has an eigenvalue below -tol * scale.
/// coneField selects which declared positivity level qualifies a family map:
/// the real level refutes rank-p membership over R, the complexification
/// level refutes membership in the complex cone. The family is never
/// exhaustive, so the non-refuted outcome is UNDECIDED.
Verdict horodeckiCheck(const BipartiteOperator& p, int schmidt, Field coneField,
                       std::span<const WitnessEntry> family, const SolverConfig& cfg);

/// Alternating least squares over factors projected to rank <= p after every
/// sweep. Success certifies membership constructively; failure returns
/// nullopt. Over Field::Complex on a real target the factors come back
/// conjugate-paired (CSEP form).
std::optional<SepDecomposition> searchSepDecomposition(const BipartiteOperator& p, int schmidt,
                                                       Field field, const SolverConfig& cfg);

struct SearchResult {
  std::optional<SepDecomposition> certificate;  // verified success only
  double bestResidual = 0;                      // best attempt, success or not
};

SearchResult searchSepDecompositionDetailed(const BipartiteOperator& p, int schmidt, Field field,
                                            const SolverConfig& cfg);

/// Writes P = c (I + H); CERTIFIED (ANALYTIC, complex separability) iff
/// c > 0 and ||H||_F <= 1. The verdict value carries ||H||_F.
Verdict gurvitsBarnumCertify(const BipartiteOperator& p, double tol = 1e-9);

struct SepRequest {
  Field field = Field::Real;
  int schmidt = 1;
};

struct SepVerdict {
  SepRequest request;
  Verdict verdict;
  std::optional<SepDecomposition> decomposition;
};

struct StateClassification {
  Verdict psd;
  Verdict ppt;
  IptReport ipt;
  Verdict ball;
  std::vector<SepVerdict> sep;
  std::vector<std::pair<std::string, double>> witnesses;  // (map id, Tr(C_Phi P))
};

StateClassification classifyState(const BipartiteOperator& p, std::span<const SepRequest> requests,
                                  const SolverConfig& cfg,
                                  std::span<const WitnessEntry> battery = {});

/// Prop-6.3-style conversion: a conjugate-paired complex rank-p certificate
/// becomes a plain real rank-2p certificate by splitting each factor into
/// real and imaginary parts.
SepDecomposition csepToRealSep(const SepDecomposition& dec);

}  // namespace cones
}  // namespace realmap

#endif
