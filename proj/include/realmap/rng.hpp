// Deterministic RNG: splitmix64 streams with Box-Muller gaussians.
// Restart r of a solve draws from the stream mixed from (seed, r), so a
// parallel schedule and the serial one see identical draws.

#ifndef REALMAP_RNG_HPP
#define REALMAP_RNG_HPP

#include <cmath>
#include <cstdint>

#include "realmap/matrix.hpp"

namespace realmap {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng forRestart(std::uint64_t seed, std::uint64_t restartIndex) {
    Rng base(seed ^ (0x9e3779b97f4a7c15ULL * (restartIndex + 1)));
    base.next();
    return base;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1].
  double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  double gaussian() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    double u = uniform(), v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 2.0 * M_PI * v;
    spare_ = r * std::sin(a);
    haveSpare_ = true;
    return r * std::cos(a);
  }

  Matrix gaussianMatrix(int rows, int cols, Field field) {
    Matrix m(rows, cols, field);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        m.setRe(i, j, gaussian());
        if (field == Field::Complex) m.setIm(i, j, gaussian());
      }
    return m;
  }

 private:
  std::uint64_t state_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace realmap

#endif
