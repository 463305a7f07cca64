#include "realmap/chanrep.hpp"

#include <cmath>
#include <limits>

#include "realmap/linalg.hpp"

namespace realmap {

LinearMapRep LinearMapRep::fromBasisImages(const std::vector<std::vector<Matrix>>& images) {
  int n = static_cast<int>(images.size());
  if (n == 0 || static_cast<int>(images[0].size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "fromBasisImages: need an n x n array of images");
  int m = images[0][0].rows();
  Field f = images[0][0].field();
  for (const auto& row : images) {
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "fromBasisImages: ragged image array");
    for (const Matrix& img : row) {
      if (img.rows() != m || img.cols() != m)
        throw Error(ErrorCode::DimensionMismatch, "fromBasisImages: image shape mismatch");
      f = joinField(f, img.field());
    }
  }
  BipartiteOperator choi = BipartiteOperator::zero(n, m, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) choi.setBlockAt(i, j, f == Field::Complex ? images[i][j].asComplex() : images[i][j]);
  LinearMapRep rep;
  rep.choi_ = std::move(choi);
  return rep;
}

LinearMapRep LinearMapRep::fromKraus(const std::vector<Matrix>& kraus, Field field) {
  if (kraus.empty()) throw Error(ErrorCode::EmptyKraus, "fromKraus: empty Kraus list");
  int m = kraus[0].rows(), n = kraus[0].cols();
  Field f = field;
  for (const Matrix& c : kraus) {
    if (c.rows() != m || c.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "fromKraus: Kraus operators must share a shape");
    f = joinField(f, c.field());
  }
  BipartiteOperator choi = BipartiteOperator::zero(n, m, f);
  int rankBound = 0;
  for (const Matrix& c : kraus) {
    Matrix v = vec(c.transpose());
    if (f == Field::Complex) v = v.asComplex();
    choi.mat() = choi.mat() + v * v.adjoint();
    rankBound = std::max(rankBound, matrixRank(c));
  }
  LinearMapRep rep;
  rep.choi_ = std::move(choi);
  rep.kraus_ = kraus;
  rep.krausRankBound_ = rankBound;
  return rep;
}

LinearMapRep LinearMapRep::fromChoi(BipartiteOperator choi) {
  LinearMapRep rep;
  rep.choi_ = std::move(choi);
  return rep;
}

LinearMapRep LinearMapRep::identityMap(int n, Field field) {
  std::vector<Matrix> kraus{Matrix::identity(n, field)};
  return fromKraus(kraus, field);
}

LinearMapRep LinearMapRep::traceMap(int n, Field field) {
  BipartiteOperator choi(n, n, Matrix::identity(n * n, field));
  return fromChoi(std::move(choi));
}

LinearMapRep LinearMapRep::transposeMap(int n, Field field) {
  std::vector<std::vector<Matrix>> images(n, std::vector<Matrix>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) images[i][j] = Matrix::unit(n, j, i, field);
  return fromBasisImages(images);
}

void LinearMapRep::attachKraus(std::vector<Matrix> kraus, int rankBound) {
  kraus_ = std::move(kraus);
  krausRankBound_ = rankBound;
}

Matrix LinearMapRep::apply(const Matrix& x) const {
  int n = dimIn(), m = dimOut();
  if (x.rows() != n || x.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "apply: input must be dimIn x dimIn");
  if (field() == Field::Real && x.field() == Field::Complex)
    throw Error(ErrorCode::FieldMismatch, "apply: complex input into a real map (complexify first)");
  Field f = joinField(field(), x.field());
  Matrix out = Matrix::zero(m, m, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex c = x.get(i, j);
      if (c == Complex(0, 0)) continue;
      Matrix img = choi_.blockAt(i, j);
      if (f == Field::Complex) img = img.asComplex();
      out = out + img.scaled(c);
    }
  return out;
}

LinearMapRep LinearMapRep::compose(const LinearMapRep& inner) const {
  if (inner.dimOut() != dimIn())
    throw Error(ErrorCode::DimensionMismatch, "compose: inner output dim must match outer input dim");
  if (inner.field() != field())
    throw Error(ErrorCode::FieldMismatch, "compose: fields differ");
  int n = inner.dimIn();
  std::vector<std::vector<Matrix>> images(n, std::vector<Matrix>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) images[i][j] = apply(inner.choi().blockAt(i, j));
  return fromBasisImages(images);
}

LinearMapRep LinearMapRep::adjointMap() const {
  int n = dimIn(), m = dimOut();
  Matrix s = swapOperator(n, m);
  if (field() == Field::Complex) s = s.asComplex();
  Matrix cAdj = s.adjoint() * choi_.mat().transpose() * s;
  return fromChoi(BipartiteOperator(m, n, std::move(cAdj)));
}

LinearMapRep LinearMapRep::complexify() const {
  if (field() == Field::Complex)
    throw Error(ErrorCode::AlreadyComplex, "complexify: map is already complex");
  return fromChoi(BipartiteOperator(dimIn(), dimOut(), choi_.mat().asComplex()));
}

LinearMapRep LinearMapRep::tensorWithIdentity(int r, Side side) const {
  if (r < 1) throw Error(ErrorCode::ParamRange, "tensorWithIdentity: r must be >= 1");
  int n = dimIn(), m = dimOut();
  int nIn = (side == Side::Right) ? n * r : r * n;
  int nOut = (side == Side::Right) ? m * r : r * m;
  BipartiteOperator choi = BipartiteOperator::zero(nIn, nOut, field());
  // Basis unit of the composite input: E_{(i,a),(j,b)} = E_ij (x) E_ab for
  // side Right (Phi acts on the left tensor factor of the input), and
  // E_ab (x) E_ij for side Left.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix img = choi_.blockAt(i, j);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          Matrix e = Matrix::unit(r, a, b, field());
          Matrix big = (side == Side::Right) ? kron(img, e) : kron(e, img);
          int row = (side == Side::Right) ? i * r + a : a * n + i;
          int col = (side == Side::Right) ? j * r + b : b * n + j;
          choi.setBlockAt(row, col, big);
        }
    }
  return fromChoi(std::move(choi));
}

LinearMapRep LinearMapRep::iterate(int k) const {
  if (dimIn() != dimOut()) throw Error(ErrorCode::DimensionMismatch, "iterate: map must be square");
  if (k < 1) throw Error(ErrorCode::ParamRange, "iterate: k must be >= 1");
  LinearMapRep acc = *this;
  for (int i = 1; i < k; ++i) acc = compose(acc);
  return acc;
}

MapDiagnostics LinearMapRep::diagnostics() const {
  MapDiagnostics d;
  const Matrix& c = choi_.mat();
  d.hermitianChoiDefect = c.hermitianDefect();
  BipartiteOperator pt = choi_.partialTransposeLeft();
  d.iptDefect = (c - pt.mat()).frobeniusNorm();
  double ptDefect = pt.mat().hermitianDefect();
  if (ptDefect <= 1e-9 * (1.0 + pt.mat().frobeniusNorm()))
    d.pptMinEigenvalue = minEigHermitian(pt.mat());
  else
    d.pptMinEigenvalue = std::numeric_limits<double>::quiet_NaN();
  int n = dimIn();
  Matrix id = Matrix::identity(n, field());
  d.unitalDefect = (apply(id) - Matrix::identity(dimOut(), field())).frobeniusNorm();
  d.traceDefect = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex t = choi_.blockAt(i, j).trace();
      Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
      d.traceDefect = std::max(d.traceDefect, std::abs(t - want));
    }
  return d;
}

}  // namespace realmap
