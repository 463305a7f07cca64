// Square operators on K^n (x) K^m with declared factor dimensions.
//
// Block convention, fixed repo-wide and derived from the row-major vec
// ordering: the (i,j) block (each dimRight x dimRight) is the coefficient of
// the left-factor matrix unit E_ij, so a Choi matrix stores Phi(E_ij) in
// block (i,j).

#ifndef REALMAP_BIPARTITE_HPP
#define REALMAP_BIPARTITE_HPP

#include "realmap/matrix.hpp"

namespace realmap {

class BipartiteOperator {
 public:
  BipartiteOperator() = default;
  BipartiteOperator(int dimLeft, int dimRight, Matrix mat);

  static BipartiteOperator zero(int dimLeft, int dimRight, Field field = Field::Real);

  int dimLeft() const { return dimLeft_; }
  int dimRight() const { return dimRight_; }
  const Matrix& mat() const { return mat_; }
  Matrix& mat() { return mat_; }
  Field field() const { return mat_.field(); }

  Matrix blockAt(int i, int j) const;
  void setBlockAt(int i, int j, const Matrix& b);

  /// (tau (x) id): transposes the left tensor factor, i.e. swaps blocks (i,j) <-> (j,i).
  BipartiteOperator partialTransposeLeft() const;

  BipartiteOperator operator+(const BipartiteOperator& o) const;
  BipartiteOperator operator-(const BipartiteOperator& o) const;
  BipartiteOperator scaled(double s) const;

 private:
  int dimLeft_ = 0;
  int dimRight_ = 0;
  Matrix mat_;
};

/// Frobenius distance between P and its left partial transpose.
double iptDefect(const BipartiteOperator& p);

}  // namespace realmap

#endif
