#include "realmap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace realmap {

Matrix::Matrix(int rows, int cols, Field field) : rows_(rows), cols_(cols), field_(field) {
  if (rows < 0 || cols < 0) throw Error(ErrorCode::DimensionMismatch, "negative matrix shape");
  re_.assign(static_cast<size_t>(rows) * cols, 0.0);
  if (field == Field::Complex) im_.assign(static_cast<size_t>(rows) * cols, 0.0);
}

int Matrix::idx(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix index out of range");
  return i * cols_ + j;
}

Matrix Matrix::of(std::initializer_list<std::initializer_list<double>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Matrix m(r, c, Field::Real);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
    int j = 0;
    for (double v : row) m.setRe(i, j++, v);
    ++i;
  }
  return m;
}

Matrix Matrix::zero(int rows, int cols, Field field) { return Matrix(rows, cols, field); }

Matrix Matrix::identity(int n, Field field) {
  Matrix m(n, n, field);
  for (int i = 0; i < n; ++i) m.setRe(i, i, 1.0);
  return m;
}

Matrix Matrix::unit(int n, int i, int j, Field field) {
  Matrix m(n, n, field);
  m.setRe(i, j, 1.0);
  return m;
}

Matrix Matrix::complexFrom(const Matrix& re, const Matrix& im) {
  requireSameShape(re, im, "complexFrom");
  if (!re.isReal() || !im.isReal())
    throw Error(ErrorCode::FieldMismatch, "complexFrom: parts must be real matrices");
  Matrix m(re.rows(), re.cols(), Field::Complex);
  for (int i = 0; i < re.rows(); ++i)
    for (int j = 0; j < re.cols(); ++j) m.set(i, j, {re.re(i, j), im.re(i, j)});
  return m;
}

Matrix Matrix::columnVector(const std::vector<double>& entries) {
  Matrix m(static_cast<int>(entries.size()), 1, Field::Real);
  for (int i = 0; i < m.rows(); ++i) m.setRe(i, 0, entries[static_cast<size_t>(i)]);
  return m;
}

void Matrix::setIm(int i, int j, double v) {
  if (isReal()) {
    if (v == 0.0) return;
    throw Error(ErrorCode::FieldMismatch, "imaginary write into a real matrix");
  }
  im_[idx(i, j)] = v;
}

void Matrix::set(int i, int j, Complex v) {
  setRe(i, j, v.real());
  setIm(i, j, v.imag());
}

Matrix Matrix::asComplex() const {
  if (!isReal()) return *this;
  Matrix m(rows_, cols_, Field::Complex);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.setRe(i, j, re(i, j));
  return m;
}

Matrix Matrix::realPart() const {
  Matrix m(rows_, cols_, Field::Real);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.setRe(i, j, re(i, j));
  return m;
}

Matrix Matrix::imagPart() const {
  Matrix m(rows_, cols_, Field::Real);
  if (!isReal())
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.setRe(i, j, im(i, j));
  return m;
}

Matrix Matrix::conj() const {
  if (isReal()) return *this;
  Matrix m = *this;
  for (double& v : m.im_) v = -v;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.set(j, i, get(i, j));
  return m;
}

Matrix Matrix::adjoint() const { return transpose().conj(); }

Matrix Matrix::operator+(const Matrix& o) const {
  requireSameShape(*this, o, "operator+");
  Matrix m(rows_, cols_, joinField(field_, o.field_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.set(i, j, get(i, j) + o.get(i, j));
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  requireSameShape(*this, o, "operator-");
  Matrix m(rows_, cols_, joinField(field_, o.field_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.set(i, j, get(i, j) - o.get(i, j));
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw Error(ErrorCode::DimensionMismatch, "operator*: inner dimensions differ");
  Field f = joinField(field_, o.field_);
  Matrix m(rows_, o.cols_, f);
  if (f == Field::Real) {
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double a = re(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) m.re_[i * o.cols_ + j] += a * o.re(k, j);
      }
  } else {
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double ar = re(i, k), ai = im(i, k);
        if (ar == 0.0 && ai == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          double br = o.re(k, j), bi = o.im(k, j);
          m.re_[i * o.cols_ + j] += ar * br - ai * bi;
          m.im_[i * o.cols_ + j] += ar * bi + ai * br;
        }
      }
  }
  return m;
}

Matrix Matrix::operator-() const { return scaled(-1.0); }

Matrix Matrix::scaled(double s) const {
  Matrix m = *this;
  for (double& v : m.re_) v *= s;
  for (double& v : m.im_) v *= s;
  return m;
}

Matrix Matrix::scaled(Complex s) const {
  if (s.imag() == 0.0) return scaled(s.real());
  Matrix m = asComplex();
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.set(i, j, get(i, j) * s);
  return m;
}

Complex Matrix::trace() const {
  if (!isSquare()) throw Error(ErrorCode::DimensionMismatch, "trace of non-square matrix");
  Complex t = 0;
  for (int i = 0; i < rows_; ++i) t += get(i, i);
  return t;
}

double Matrix::frobeniusNorm() const {
  double s = 0;
  for (double v : re_) s += v * v;
  for (double v : im_) s += v * v;
  return std::sqrt(s);
}

double Matrix::maxAbs() const {
  double s = 0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) s = std::max(s, std::abs(get(i, j)));
  return s;
}

double Matrix::hermitianDefect() const {
  if (!isSquare()) throw Error(ErrorCode::DimensionMismatch, "hermitianDefect of non-square");
  double s = 0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      Complex d = get(i, j) - std::conj(get(j, i));
      s += std::norm(d);
    }
  return std::sqrt(s);
}

Matrix Matrix::hermitized() const { return (*this + adjoint()).scaled(0.5); }

Matrix Matrix::block(int i0, int j0, int r, int c) const {
  if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
    throw Error(ErrorCode::DimensionMismatch, "block out of range");
  Matrix m(r, c, field_);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, get(i0 + i, j0 + j));
  return m;
}

void Matrix::setBlock(int i0, int j0, const Matrix& b) {
  if (i0 < 0 || j0 < 0 || i0 + b.rows() > rows_ || j0 + b.cols() > cols_)
    throw Error(ErrorCode::DimensionMismatch, "setBlock out of range");
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) set(i0 + i, j0 + j, b.get(i, j));
}

Matrix Matrix::column(int j) const { return block(0, j, rows_, 1); }

void Matrix::setColumn(int j, const Matrix& v) {
  if (v.cols() != 1 || v.rows() != rows_)
    throw Error(ErrorCode::DimensionMismatch, "setColumn: bad column shape");
  setBlock(0, j, v);
}

double Matrix::maxAbsDiff(const Matrix& a, const Matrix& b) {
  requireSameShape(a, b, "maxAbsDiff");
  double s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a.get(i, j) - b.get(i, j)));
  return s;
}

Complex Matrix::dot(const Matrix& a, const Matrix& b) {
  requireSameShape(a, b, "dot");
  Complex s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::conj(a.get(i, j)) * b.get(i, j);
  return s;
}

std::string Matrix::toString(int precision) const {
  std::ostringstream os;
  os.precision(precision);
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < cols_; ++j) {
      if (isReal())
        os << re(i, j);
      else
        os << re(i, j) << (im(i, j) < 0 ? "-" : "+") << std::abs(im(i, j)) << "i";
      if (j + 1 < cols_) os << ", ";
    }
    os << (i + 1 == rows_ ? "]" : ";\n");
  }
  return os.str();
}

Field joinField(Field a, Field b) {
  return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols(), joinField(a.field(), b.field()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      Complex v = a.get(i, j);
      if (v == Complex(0, 0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          m.set(i * b.rows() + k, j * b.cols() + l, v * b.get(k, l));
    }
  return m;
}

Matrix vec(const Matrix& a) {
  Matrix v(a.rows() * a.cols(), 1, a.field());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v.set(i * a.cols() + j, 0, a.get(i, j));
  return v;
}

Matrix unvec(const Matrix& v, int n, int m) {
  if (v.cols() != 1 || v.rows() != n * m)
    throw Error(ErrorCode::DimensionMismatch, "unvec: length must equal n*m");
  Matrix a(n, m, v.field());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a.set(i, j, v.get(i * m + j, 0));
  return a;
}

Matrix swapOperator(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::DimensionMismatch, "swapOperator: dims must be >= 1");
  // S e_{i*m+j} = e_{j*n+i}: sends basis of K^n (x) K^m to K^m (x) K^n swapped back,
  // i.e. S (w (x) v) = v (x) w for v in K^n, w in K^m, as an nm x nm matrix.
  Matrix s(n * m, n * m, Field::Real);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) s.setRe(i * m + j, j * n + i, 1.0);
  return s;
}

}  // namespace realmap
