#include "realmap/bipartite.hpp"

namespace realmap {

BipartiteOperator::BipartiteOperator(int dimLeft, int dimRight, Matrix mat)
    : dimLeft_(dimLeft), dimRight_(dimRight), mat_(std::move(mat)) {
  if (dimLeft < 1 || dimRight < 1)
    throw Error(ErrorCode::DimensionMismatch, "bipartite factor dims must be >= 1");
  if (mat_.rows() != dimLeft * dimRight || mat_.cols() != dimLeft * dimRight)
    throw Error(ErrorCode::DimensionMismatch, "bipartite matrix must be square of size nm");
}

BipartiteOperator BipartiteOperator::zero(int dimLeft, int dimRight, Field field) {
  return BipartiteOperator(dimLeft, dimRight, Matrix::zero(dimLeft * dimRight, dimLeft * dimRight, field));
}

Matrix BipartiteOperator::blockAt(int i, int j) const {
  return mat_.block(i * dimRight_, j * dimRight_, dimRight_, dimRight_);
}

void BipartiteOperator::setBlockAt(int i, int j, const Matrix& b) {
  if (b.rows() != dimRight_ || b.cols() != dimRight_)
    throw Error(ErrorCode::DimensionMismatch, "block must be dimRight x dimRight");
  Matrix bb = (mat_.field() == Field::Complex) ? b.asComplex() : b;
  if (mat_.field() == Field::Real && bb.field() == Field::Complex)
    throw Error(ErrorCode::FieldMismatch, "complex block into real bipartite operator");
  mat_.setBlock(i * dimRight_, j * dimRight_, bb);
}

BipartiteOperator BipartiteOperator::partialTransposeLeft() const {
  BipartiteOperator out = BipartiteOperator::zero(dimLeft_, dimRight_, mat_.field());
  for (int i = 0; i < dimLeft_; ++i)
    for (int j = 0; j < dimLeft_; ++j) out.setBlockAt(i, j, blockAt(j, i));
  return out;
}

BipartiteOperator BipartiteOperator::operator+(const BipartiteOperator& o) const {
  if (dimLeft_ != o.dimLeft_ || dimRight_ != o.dimRight_)
    throw Error(ErrorCode::DimensionMismatch, "bipartite shape mismatch");
  return BipartiteOperator(dimLeft_, dimRight_, mat_ + o.mat_);
}

BipartiteOperator BipartiteOperator::operator-(const BipartiteOperator& o) const {
  if (dimLeft_ != o.dimLeft_ || dimRight_ != o.dimRight_)
    throw Error(ErrorCode::DimensionMismatch, "bipartite shape mismatch");
  return BipartiteOperator(dimLeft_, dimRight_, mat_ - o.mat_);
}

BipartiteOperator BipartiteOperator::scaled(double s) const {
  return BipartiteOperator(dimLeft_, dimRight_, mat_.scaled(s));
}

double iptDefect(const BipartiteOperator& p) {
  return (p.mat() - p.partialTransposeLeft().mat()).frobeniusNorm();
}

}  // namespace realmap
