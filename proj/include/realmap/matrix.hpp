// Dense field-tagged matrices over R and C.
//
// Complex matrices are stored as separate real/imaginary entry arrays so the
// real and complex code paths run through one arithmetic engine; a matrix
// tagged Field::Real carries no imaginary storage at all, and any attempt to
// write an imaginary part into it throws. Entries are row-major doubles.

#ifndef REALMAP_MATRIX_HPP
#define REALMAP_MATRIX_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace realmap {

enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "R" : "C"; }

enum class ErrorCode {
  DimensionMismatch,
  FieldMismatch,
  NotHermitian,
  RankExceeded,
  AlreadyComplex,
  EmptyKraus,
  UnknownId,
  ParamRange,
  NotIpt,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using Complex = std::complex<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Field field);

  /// Real matrix from row-major nested braces: Matrix::of({{1,2},{3,4}}).
  static Matrix of(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix zero(int rows, int cols, Field field = Field::Real);
  static Matrix identity(int n, Field field = Field::Real);
  /// n x n matrix unit E_ij (0-based indices).
  static Matrix unit(int n, int i, int j, Field field = Field::Real);
  static Matrix complexFrom(const Matrix& re, const Matrix& im);
  /// Column vector from entries.
  static Matrix columnVector(const std::vector<double>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Field field() const { return field_; }
  bool isReal() const { return field_ == Field::Real; }
  bool isSquare() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  int size() const { return rows_ * cols_; }

  double re(int i, int j) const { return re_[idx(i, j)]; }
  double im(int i, int j) const { return isReal() ? 0.0 : im_[idx(i, j)]; }
  Complex get(int i, int j) const { return {re(i, j), im(i, j)}; }

  void setRe(int i, int j, double v) { re_[idx(i, j)] = v; }
  void setIm(int i, int j, double v);
  void set(int i, int j, Complex v);
  void add(int i, int j, Complex v) { set(i, j, get(i, j) + v); }

  /// Retag as complex (zero imaginary part); the real entries are copied bit-for-bit.
  Matrix asComplex() const;
  Matrix realPart() const;
  Matrix imagPart() const;
  Matrix conj() const;
  Matrix transpose() const;
  /// Conjugate transpose; plain transpose over R.
  Matrix adjoint() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(double s) const;
  Matrix scaled(Complex s) const;

  Complex trace() const;
  double frobeniusNorm() const;
  double maxAbs() const;
  /// ||A - A*||_F, the deviation from being Hermitian.
  double hermitianDefect() const;
  /// (A + A*)/2.
  Matrix hermitized() const;

  Matrix block(int i0, int j0, int r, int c) const;
  void setBlock(int i0, int j0, const Matrix& b);
  Matrix column(int j) const;
  void setColumn(int j, const Matrix& v);

  /// Largest entrywise |a_ij - b_ij| (complex modulus); throws on shape mismatch.
  static double maxAbsDiff(const Matrix& a, const Matrix& b);

  /// Entrywise inner product <A,B> = sum conj(a_ij) b_ij.
  static Complex dot(const Matrix& a, const Matrix& b);

  std::string toString(int precision = 6) const;

 private:
  int idx(int i, int j) const;
  void requireComplexStorage();

  int rows_ = 0;
  int cols_ = 0;
  Field field_ = Field::Real;
  std::vector<double> re_;
  std::vector<double> im_;  // empty when field_ == Field::Real
};

Matrix kron(const Matrix& a, const Matrix& b);

/// Row-major vectorization: vec(A) has component i*m + j equal to a_ij
/// (0-based), so vec(A) = sum_ij a_ij e_i (x) e_j. Returns an nm x 1 column.
Matrix vec(const Matrix& a);

/// Inverse of vec for declared shape n x m.
Matrix unvec(const Matrix& v, int n, int m);

/// The nm x nm 0/1 matrix S with S (w (x) v) = v (x) w for v in K^n, w in K^m.
Matrix swapOperator(int n, int m);

inline void requireSameShape(const Matrix& a, const Matrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": shape mismatch");
}

Field joinField(Field a, Field b);

}  // namespace realmap

#endif
