// Test-only oracles, independent of the library's decomposition kernels.

#ifndef REALMAP_TESTS_ORACLE_HELPERS_HPP
#define REALMAP_TESTS_ORACLE_HELPERS_HPP

#include <cmath>
#include <vector>

#include "realmap/matrix.hpp"
#include "realmap/rng.hpp"

namespace oracle {

// Rank by Gaussian elimination with partial pivoting. Intended for small
// integer matrices where pivots are exact.
inline int gaussRank(realmap::Matrix a, double tol = 1e-9) {
  int rank = 0;
  int rows = a.rows(), cols = a.cols();
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::abs(a.re(r, col)) > best) {
        best = std::abs(a.re(r, col));
        pivot = r;
      }
    if (pivot < 0) continue;
    for (int c = 0; c < cols; ++c) {
      double tmp = a.re(rank, c);
      a.setRe(rank, c, a.re(pivot, c));
      a.setRe(pivot, c, tmp);
    }
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = a.re(r, col) / a.re(rank, col);
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) a.setRe(r, c, a.re(r, c) - f * a.re(rank, c));
    }
    ++rank;
  }
  return rank;
}

// Brute-force minimum of <x (x) y | C | x (x) y> over unit x, y in R^2,
// parameterized by angles on a grid. Only for 2x2 factors.
inline double gridMinRankOne2x2(const realmap::Matrix& c, int points = 720) {
  double best = 1e300;
  for (int i = 0; i < points; ++i) {
    double a = 2.0 * M_PI * i / points;
    for (int j = 0; j < points; ++j) {
      double b = 2.0 * M_PI * j / points;
      realmap::Matrix v(4, 1, realmap::Field::Real);
      v.setRe(0, 0, std::cos(a) * std::cos(b));
      v.setRe(1, 0, std::cos(a) * std::sin(b));
      v.setRe(2, 0, std::sin(a) * std::cos(b));
      v.setRe(3, 0, std::sin(a) * std::sin(b));
      double val = realmap::Matrix::dot(v, c * v).real();
      best = std::min(best, val);
    }
  }
  return best;
}

// Random real PSD matrix of unit-ish scale.
inline realmap::Matrix randomPsd(realmap::Rng& rng, int n) {
  realmap::Matrix g = rng.gaussianMatrix(n, n, realmap::Field::Real);
  return (g * g.transpose()).scaled(1.0 / n);
}

inline realmap::Matrix randomIntegerMatrix(realmap::Rng& rng, int rows, int cols, int loRank) {
  // Product of integer factors forces rank <= loRank exactly.
  realmap::Matrix left(rows, loRank, realmap::Field::Real);
  realmap::Matrix right(loRank, cols, realmap::Field::Real);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < loRank; ++k)
      left.setRe(i, k, static_cast<double>(static_cast<int>(rng.next() % 7) - 3));
  for (int k = 0; k < loRank; ++k)
    for (int j = 0; j < cols; ++j)
      right.setRe(k, j, static_cast<double>(static_cast<int>(rng.next() % 7) - 3));
  return left * right;
}

}  // namespace oracle

#endif
