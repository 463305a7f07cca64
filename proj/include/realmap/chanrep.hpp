// Linear maps Phi: M_n(K) -> M_m(K), stored canonically by their Choi matrix
// C_Phi = sum_ij E_ij (x) Phi(E_ij). Kraus lists are optional certificates
// attached when known; they are never the authoritative representation.

#ifndef REALMAP_CHANREP_HPP
#define REALMAP_CHANREP_HPP

#include <optional>
#include <vector>

#include "realmap/bipartite.hpp"

namespace realmap {

struct MapDiagnostics {
  double hermitianChoiDefect = 0;  // ||C - C*||_F
  double iptDefect = 0;            // ||C - PT(C)||_F
  double pptMinEigenvalue = 0;     // lambda_min(PT(C)); NaN if PT(C) is not Hermitian
  double unitalDefect = 0;         // ||Phi(I) - I||_F
  double traceDefect = 0;          // max_ij |Tr Phi(E_ij) - Tr E_ij|
};

enum class Side { Left, Right };

class LinearMapRep {
 public:
  LinearMapRep() = default;

  /// images[i][j] = Phi(E_ij); all m x m over one field.
  static LinearMapRep fromBasisImages(const std::vector<std::vector<Matrix>>& images);
  /// Phi(X) = sum_i C_i X C_i*; Choi becomes sum_i vec(C_i^t) vec(C_i^t)*.
  static LinearMapRep fromKraus(const std::vector<Matrix>& kraus, Field field);
  static LinearMapRep fromChoi(BipartiteOperator choi);
  static LinearMapRep identityMap(int n, Field field = Field::Real);
  /// X -> Tr(X) I_n.
  static LinearMapRep traceMap(int n, Field field = Field::Real);
  /// The transpose map tau_n.
  static LinearMapRep transposeMap(int n, Field field = Field::Real);

  int dimIn() const { return choi_.dimLeft(); }
  int dimOut() const { return choi_.dimRight(); }
  Field field() const { return choi_.field(); }
  const BipartiteOperator& choi() const { return choi_; }
  const std::optional<std::vector<Matrix>>& krausList() const { return kraus_; }
  int krausRankBound() const { return krausRankBound_; }

  void attachKraus(std::vector<Matrix> kraus, int rankBound);

  /// Phi(X) = sum_ij X_ij * (Choi block (i,j)).
  Matrix apply(const Matrix& x) const;

  /// this composed after inner: (this o inner)(X) = this(inner(X)).
  LinearMapRep compose(const LinearMapRep& inner) const;

  /// Trace-pairing adjoint: Tr(Phi(A) B) = Tr(A Phi*(B)); Choi via S* C^t S.
  LinearMapRep adjointMap() const;

  /// Complex-linear extension of a real map; same Choi matrix, retagged.
  LinearMapRep complexify() const;

  /// Phi (x) id_r (side Right) or id_r (x) Phi (side Left).
  LinearMapRep tensorWithIdentity(int r, Side side) const;

  /// k-fold composition, k >= 1; requires dimIn == dimOut.
  LinearMapRep iterate(int k) const;

  MapDiagnostics diagnostics() const;

 private:
  BipartiteOperator choi_;
  std::optional<std::vector<Matrix>> kraus_;
  int krausRankBound_ = 0;
};

}  // namespace realmap

#endif
