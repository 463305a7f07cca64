#include "realmap/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace realmap {

namespace {

Eigen::MatrixXd toEigenReal(const Matrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a.re(i, j);
  return m;
}

Eigen::MatrixXcd toEigenComplex(const Matrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a.get(i, j);
  return m;
}

Matrix fromEigen(const Eigen::MatrixXd& m) {
  Matrix a(static_cast<int>(m.rows()), static_cast<int>(m.cols()), Field::Real);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a.setRe(i, j, m(i, j));
  return a;
}

Matrix fromEigen(const Eigen::MatrixXcd& m) {
  Matrix a(static_cast<int>(m.rows()), static_cast<int>(m.cols()), Field::Complex);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a.set(i, j, {m(i, j).real(), m(i, j).imag()});
  return a;
}

}  // namespace

EigDecomposition symEig(const Matrix& a, double tol) {
  if (!a.isSquare()) throw Error(ErrorCode::DimensionMismatch, "symEig: matrix not square");
  double defect = a.hermitianDefect();
  if (defect > tol * (1.0 + a.frobeniusNorm()))
    throw Error(ErrorCode::NotHermitian, "symEig: matrix not Hermitian within tolerance");
  Matrix h = a.hermitized();
  EigDecomposition out;
  if (h.isReal()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(toEigenReal(h));
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
    out.vectors = fromEigen(Eigen::MatrixXd(es.eigenvectors()));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toEigenComplex(h));
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
    out.vectors = fromEigen(Eigen::MatrixXcd(es.eigenvectors()));
  }
  return out;
}

double minEigHermitian(const Matrix& a, double tol) { return symEig(a, tol).eigenvalues.front(); }
double maxEigHermitian(const Matrix& a, double tol) { return symEig(a, tol).eigenvalues.back(); }

SvdResult svd(const Matrix& a) {
  SvdResult out;
  if (a.isReal()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> s(toEigenReal(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = fromEigen(Eigen::MatrixXd(s.matrixU()));
    out.v = fromEigen(Eigen::MatrixXd(s.matrixV()));
    out.sigma.assign(s.singularValues().data(), s.singularValues().data() + s.singularValues().size());
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> s(toEigenComplex(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = fromEigen(Eigen::MatrixXcd(s.matrixU()));
    out.v = fromEigen(Eigen::MatrixXcd(s.matrixV()));
    out.sigma.assign(s.singularValues().data(), s.singularValues().data() + s.singularValues().size());
  }
  return out;
}

double operatorNorm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return svd(a).sigma.front();
}

int matrixRank(const Matrix& a, double tol) {
  SvdResult s = svd(a);
  if (s.sigma.empty() || s.sigma.front() == 0.0) return 0;
  double cut = tol * s.sigma.front();
  int r = 0;
  for (double v : s.sigma)
    if (v > cut) ++r;
  return r;
}

int schmidtRank(const Matrix& v, int n, int m, double tol) {
  return matrixRank(unvec(v, n, m), tol);
}

SchmidtFactors schmidtFactorize(const Matrix& v, int n, int m, int p, double tol) {
  if (p < 1 || p > std::min(n, m))
    throw Error(ErrorCode::ParamRange, "schmidtFactorize: p out of range");
  Matrix a = unvec(v, n, m);
  SvdResult s = svd(a);
  double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  if (static_cast<int>(s.sigma.size()) > p && s.sigma[static_cast<size_t>(p)] > tol * smax)
    throw Error(ErrorCode::RankExceeded, "schmidtFactorize: Schmidt rank exceeds p");
  // vec(A) = sum_k sigma_k u_k (x) conj(v_k); take S = conj(V[:, :p]),
  // w = sum_k sigma_k u_k (x) e_k.
  SchmidtFactors out;
  out.s = Matrix::zero(m, p, a.field());
  out.w = Matrix::zero(n * p, 1, a.field());
  for (int k = 0; k < p && k < static_cast<int>(s.sigma.size()); ++k) {
    for (int j = 0; j < m; ++j) out.s.set(j, k, std::conj(s.v.get(j, k)));
    for (int i = 0; i < n; ++i) out.w.set(i * p + k, 0, s.sigma[static_cast<size_t>(k)] * s.u.get(i, k));
  }
  return out;
}

Matrix orthonormalColumns(const Matrix& a, int want) {
  if (want < 1 || want > a.rows())
    throw Error(ErrorCode::ParamRange, "orthonormalColumns: want out of range");
  SvdResult s = svd(a);
  int have = std::min<int>(static_cast<int>(s.sigma.size()), want);
  Matrix q = Matrix::zero(a.rows(), want, a.field() == Field::Complex ? Field::Complex : Field::Real);
  int filled = 0;
  double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  for (int k = 0; k < have; ++k) {
    if (smax > 0.0 && s.sigma[static_cast<size_t>(k)] > 1e-13 * smax) {
      for (int i = 0; i < a.rows(); ++i) q.set(i, filled, s.u.get(i, k));
      ++filled;
    }
  }
  // Pad a rank-deficient input with canonical basis vectors, Gram-Schmidt'd
  // against what is already there.
  for (int e = 0; filled < want; ++e) {
    if (e >= a.rows())
      throw Error(ErrorCode::Internal, "orthonormalColumns: completion failed");
    Matrix cand = Matrix::zero(a.rows(), 1, q.field());
    cand.setRe(e, 0, 1.0);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < filled; ++k) {
        Matrix qk = q.column(k);
        cand = cand - qk.scaled(Matrix::dot(qk, cand));
      }
    double nrm = cand.frobeniusNorm();
    if (nrm < 1e-8) continue;
    cand = cand.scaled(1.0 / nrm);
    q.setColumn(filled, cand);
    ++filled;
  }
  return q;
}

Matrix polarFactor(const Matrix& a) {
  if (!a.isSquare()) throw Error(ErrorCode::DimensionMismatch, "polarFactor: matrix not square");
  SvdResult s = svd(a);
  return s.u * s.v.adjoint();
}

}  // namespace realmap
