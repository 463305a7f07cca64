// Dense decompositions and the bipartite Schmidt tools built on them.
//
// sym_eig and svd are contracts: backward-stable decompositions with
// reconstruction residual <= 1e-12 * (1 + ||A||). The implementation
// delegates to a dense kernel behind this interface.

#ifndef REALMAP_LINALG_HPP
#define REALMAP_LINALG_HPP

#include <vector>

#include "realmap/matrix.hpp"

namespace realmap {

struct EigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix vectors;                   // columns are orthonormal eigenvectors
};

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
/// ||A - A*||_F > tol * (1 + ||A||_F); the decomposition itself is computed
/// from the Hermitized (A + A*)/2.
EigDecomposition symEig(const Matrix& a, double tol = 1e-9);

double minEigHermitian(const Matrix& a, double tol = 1e-9);
double maxEigHermitian(const Matrix& a, double tol = 1e-9);

struct SvdResult {
  Matrix u;                   // rows x k, orthonormal columns (k = min shape)
  std::vector<double> sigma;  // descending, nonnegative
  Matrix v;                   // cols x k, orthonormal columns; A = U diag(sigma) V*
};

SvdResult svd(const Matrix& a);

/// Largest singular value.
double operatorNorm(const Matrix& a);

/// Rank against a relative threshold: #{ sigma_i > tol * sigma_max }.
int matrixRank(const Matrix& a, double tol = 1e-9);

/// Schmidt rank of v in K^n (x) K^m: rank of unvec(v).
int schmidtRank(const Matrix& v, int n, int m, double tol = 1e-9);

struct SchmidtFactors {
  Matrix w;  // vector in K^n (x) K^p
  Matrix s;  // m x p, S* S = I_p
};

/// Factor v = (I_n (x) S) w for a vector of Schmidt rank <= p.
/// Throws RankExceeded when the (p+1)-th singular value of unvec(v) is above
/// tol * sigma_max.
SchmidtFactors schmidtFactorize(const Matrix& v, int n, int m, int p, double tol = 1e-9);

/// Orthonormal basis for the column space, padded to exactly want columns.
Matrix orthonormalColumns(const Matrix& a, int want);

/// Orthogonal (unitary) polar factor of a square matrix.
Matrix polarFactor(const Matrix& a);

}  // namespace realmap

#endif
