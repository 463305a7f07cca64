#include "realmap/posit.hpp"

#include <algorithm>
#include <cmath>

#include "realmap/linalg.hpp"
#include "realmap/rng.hpp"

namespace realmap {

const char* statusName(Status s) {
  switch (s) {
    case Status::Certified: return "CERTIFIED";
    case Status::Refuted: return "REFUTED";
    default: return "UNDECIDED";
  }
}

const char* certifiedByName(CertifiedBy c) {
  switch (c) {
    case CertifiedBy::ChoiPsd: return "CHOI_PSD";
    case CertifiedBy::FullSchmidt: return "FULL_SCHMIDT";
    case CertifiedBy::Analytic: return "ANALYTIC";
    default: return "DECOMPOSITION";
  }
}

Matrix FactoredVector::assemble() const {
  int n = x.rows(), m = y.rows(), p = x.cols();
  Matrix v = Matrix::zero(n * m, 1, joinField(x.field(), y.field()));
  for (int k = 0; k < p; ++k) v = v + kron(x.column(k), y.column(k));
  return v;
}

double choiQuadraticForm(const BipartiteOperator& c, const FactoredVector& fv) {
  Matrix v = fv.assemble();
  double nrm = v.frobeniusNorm();
  if (nrm == 0) return 0;
  v = v.scaled(1.0 / nrm);
  Matrix cv = (c.field() == Field::Complex || v.field() == Field::Complex)
                  ? c.mat().asComplex() * v.asComplex()
                  : c.mat() * v;
  return Matrix::dot(v.field() == cv.field() ? v : v.asComplex(), cv).real();
}

AdjointCommutation commutesWithAdjoint(const LinearMapRep& map, double tol) {
  AdjointCommutation out;
  out.choiDefect = map.choi().mat().hermitianDefect();
  double scale = 1.0 + map.choi().mat().frobeniusNorm();
  out.commutes = out.choiDefect <= tol * scale;
  if (map.field() == Field::Real) {
    // Cross-validation: Phi must map Sym into Sym and Asym into Asym.
    int n = map.dimIn();
    double worst = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Matrix sym = Matrix::unit(n, i, j) + Matrix::unit(n, j, i);
        Matrix out1 = map.apply(sym);
        worst = std::max(worst, (out1 - out1.transpose()).frobeniusNorm() / 2.0);
        if (i != j) {
          Matrix asym = Matrix::unit(n, i, j) - Matrix::unit(n, j, i);
          Matrix out2 = map.apply(asym);
          worst = std::max(worst, (out2 + out2.transpose()).frobeniusNorm() / 2.0);
        }
      }
    out.worstBasisViolation = worst;
  }
  return out;
}

Verdict isCompletelyPositive(const LinearMapRep& map, const SolverConfig& cfg) {
  Verdict v;
  const Matrix& c = map.choi().mat();
  double scale = 1.0 + c.frobeniusNorm();
  double defect = c.hermitianDefect();
  if (defect > cfg.psdTol * scale) {
    v.status = Status::Refuted;
    v.witnessMatrix = c - c.adjoint();
    v.note = "choi matrix is not Hermitian";
    return v;
  }
  EigDecomposition eig = symEig(c, cfg.psdTol);
  v.value = eig.eigenvalues.front();
  if (eig.eigenvalues.front() >= -cfg.psdTol * scale) {
    v.status = Status::Certified;
    v.certifiedBy = CertifiedBy::ChoiPsd;
  } else {
    v.status = Status::Refuted;
    v.witnessMatrix = eig.vectors.column(0);
    v.note = "negative Choi eigenvalue";
  }
  return v;
}

namespace {

// B_Y = [I (x) y_1 | ... | I (x) y_p]: maps the stacked x-factors to
// sum_k x_k (x) y_k. Returns B*_Y C B_Y (np x np).
Matrix compressFixedY(const Matrix& cmat, const Matrix& yo, int n, int m) {
  int p = yo.cols();
  Field f = joinField(cmat.field(), yo.field());
  Matrix b(n * m, n * p, f);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < m; ++r) b.set(i * m + r, k * n + i, yo.get(r, k));
  Matrix cb = (f == Field::Complex ? cmat.asComplex() : cmat) * b;
  return (b.adjoint() * cb).hermitized();
}

// B_X = [x_1 (x) I | ... | x_p (x) I]: maps stacked y-factors to the vector.
Matrix compressFixedX(const Matrix& cmat, const Matrix& xo, int n, int m) {
  int p = xo.cols();
  Field f = joinField(cmat.field(), xo.field());
  Matrix b(n * m, m * p, f);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < m; ++r) b.set(i * m + r, k * m + r, xo.get(i, k));
  Matrix cb = (f == Field::Complex ? cmat.asComplex() : cmat) * b;
  return (b.adjoint() * cb).hermitized();
}

Matrix unstackColumns(const Matrix& stacked, int rows, int p) {
  Matrix out(rows, p, stacked.field());
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < rows; ++i) out.set(i, k, stacked.get(k * rows + i, 0));
  return out;
}

// Split a vector into Schmidt factors truncated to p columns; the natural
// warm start for refutation is the bottom of the spectrum of C.
std::pair<Matrix, Matrix> schmidtSplit(const Matrix& v, int n, int m, int p, Field f) {
  Matrix a = unvec(f == Field::Complex ? v.asComplex() : v, n, m);
  SvdResult s = svd(a);
  Matrix x = Matrix::zero(n, p, a.field()), y = Matrix::zero(m, p, a.field());
  for (int k = 0; k < p && k < static_cast<int>(s.sigma.size()); ++k) {
    double w = std::sqrt(std::max(s.sigma[static_cast<size_t>(k)], 1e-6));
    for (int i = 0; i < n; ++i) x.set(i, k, w * s.u.get(i, k));
    for (int j = 0; j < m; ++j) y.set(j, k, w * std::conj(s.v.get(j, k)));
  }
  return {x, y};
}

}  // namespace

void validateConfig(const SolverConfig& cfg) {
  if (cfg.restarts < 1 || cfg.maxIters < 1 || cfg.convergenceTol <= 0 || cfg.psdTol <= 0 ||
      cfg.rankTol <= 0 || cfg.decompTol <= 0 || cfg.maxFactors < 0)
    throw Error(ErrorCode::ParamRange, "solver configuration fields must be positive");
}

SeesawResult seesawMinSchmidt(const BipartiteOperator& c, int p, const SolverConfig& cfg) {
  validateConfig(cfg);
  int n = c.dimLeft(), m = c.dimRight();
  if (p < 1 || p > std::min(n, m))
    throw Error(ErrorCode::ParamRange, "seesawMinSchmidt: p out of range");
  double scale = 1.0 + c.mat().frobeniusNorm();
  if (c.mat().hermitianDefect() > cfg.psdTol * scale)
    throw Error(ErrorCode::NotHermitian, "seesawMinSchmidt: Choi matrix must be Hermitian");
  Matrix cmat = c.mat().hermitized();
  Field f = cmat.field();

  EigDecomposition spectrum = symEig(cmat, 1e-6);

  SeesawResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.restarts = cfg.restarts;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::forRestart(cfg.seed, static_cast<std::uint64_t>(r));
    Matrix xo, y;
    if (r < 3) {
      // Warm starts from the bottom of the spectrum: the bottom eigenvector,
      // the second one, and (over C) their complex combination.
      Matrix v0 = spectrum.vectors.column(0);
      if (r == 1 && n * m >= 2) v0 = spectrum.vectors.column(1);
      if (r == 2) {
        if (f == Field::Complex && n * m >= 2)
          v0 = (spectrum.vectors.column(0).asComplex() +
                spectrum.vectors.column(1).asComplex().scaled(Complex(0, 1)))
                   .scaled(1.0 / std::sqrt(2.0));
        else
          v0 = rng.gaussianMatrix(n * m, 1, f);
      }
      auto [x0, y0] = schmidtSplit(v0, n, m, p, f);
      xo = orthonormalColumns(x0, p);
      y = y0;
    } else {
      xo = orthonormalColumns(rng.gaussianMatrix(n, p, f), p);
      y = rng.gaussianMatrix(m, p, f);
    }
    double prev = std::numeric_limits<double>::infinity();
    double value = prev;
    for (int it = 0; it < cfg.maxIters; ++it) {
      Matrix yo = orthonormalColumns(y, p);
      Matrix mx = compressFixedY(cmat, yo, n, m);
      EigDecomposition ex = symEig(mx, 1e-7);
      Matrix x = unstackColumns(ex.vectors.column(0), n, p);
      y = yo;  // keep factor pair consistent while x is fresh
      xo = orthonormalColumns(x, p);
      Matrix my = compressFixedX(cmat, xo, n, m);
      EigDecomposition ey = symEig(my, 1e-7);
      y = unstackColumns(ey.vectors.column(0), m, p);
      value = ey.eigenvalues.front();
      if (prev - value < cfg.convergenceTol) break;
      prev = value;
    }
    FactoredVector fv{xo, y};
    double direct = choiQuadraticForm(c, fv);
    if (direct < best.value) {
      best.value = direct;
      best.factors = fv;
    }
  }
  return best;
}

Verdict checkPPositive(const LinearMapRep& map, int p, const SolverConfig& cfg) {
  Verdict v;
  v.trials = cfg.restarts;
  const Matrix& c = map.choi().mat();
  double scale = 1.0 + c.frobeniusNorm();
  if (c.hermitianDefect() > cfg.psdTol * scale) {
    v.status = Status::Refuted;
    v.witnessMatrix = c - c.adjoint();
    v.note = "choi matrix is not Hermitian (map does not commute with the adjoint)";
    return v;
  }
  int n = map.dimIn(), m = map.dimOut();
  EigDecomposition eig = symEig(c, cfg.psdTol);
  double lmin = eig.eigenvalues.front();
  if (lmin >= -cfg.psdTol * scale) {
    v.status = Status::Certified;
    v.certifiedBy = (p >= std::min(n, m)) ? CertifiedBy::FullSchmidt : CertifiedBy::ChoiPsd;
    v.value = lmin;
    return v;
  }
  if (p >= std::min(n, m)) {
    // Any vector has Schmidt rank <= min(n,m); the bottom eigenvector refutes.
    v.status = Status::Refuted;
    v.value = lmin;
    Matrix ev = eig.vectors.column(0);
    Matrix a = unvec(ev, n, m);
    SvdResult s = svd(a);
    int k = static_cast<int>(s.sigma.size());
    Matrix x = Matrix::zero(n, k, a.field()), y = Matrix::zero(m, k, a.field());
    for (int t = 0; t < k; ++t) {
      for (int i = 0; i < n; ++i) x.set(i, t, s.sigma[static_cast<size_t>(t)] * s.u.get(i, t));
      for (int j = 0; j < m; ++j) y.set(j, t, std::conj(s.v.get(j, t)));
    }
    v.witnessFactored = FactoredVector{x, y};
    v.witnessMatrix = ev;
    return v;
  }
  SeesawResult sw = seesawMinSchmidt(map.choi(), p, cfg);
  v.value = sw.value;
  if (sw.value < -cfg.psdTol * scale) {
    v.status = Status::Refuted;
    v.witnessFactored = sw.factors;
    Matrix vv = sw.factors.assemble();
    v.witnessMatrix = vv.scaled(1.0 / vv.frobeniusNorm());
  } else {
    v.status = Status::Undecided;
    v.note = "no Schmidt-rank-" + std::to_string(p) + " refutation found; certification at this level is out of reach";
  }
  return v;
}

Verdict checkComplexificationPPositive(const LinearMapRep& map, int p, const SolverConfig& cfg) {
  if (map.field() != Field::Real)
    throw Error(ErrorCode::FieldMismatch, "checkComplexificationPPositive: map must be real");
  LinearMapRep tilde = map.complexify();
  Verdict v = checkPPositive(tilde, p, cfg);
  if (v.refuted() && v.witnessFactored) {
    // Report the witness as the complex matrix X + iY with rank <= p; the
    // violated inequality is <vec X|C vec X> + <vec Y|C vec Y> < 0.
    Matrix vv = v.witnessFactored->assemble();
    vv = vv.scaled(1.0 / vv.frobeniusNorm());
    Matrix a = unvec(vv, map.dimIn(), map.dimOut());
    v.witnessMatrix = a;
    Matrix vx = vec(a.realPart()), vy = vec(a.imagPart());
    const Matrix& c = map.choi().mat();
    double val = Matrix::dot(vx, c * vx).real() + Matrix::dot(vy, c * vy).real();
    v.value = val;
  }
  return v;
}

Corollary2pReport checkCorollary2pConsistency(const LinearMapRep& map, int p, const SolverConfig& cfg) {
  if (map.field() != Field::Real)
    throw Error(ErrorCode::FieldMismatch, "checkCorollary2pConsistency: map must be real");
  Corollary2pReport rep;
  int full = std::min(map.dimIn(), map.dimOut());
  rep.realAt2p = checkPPositive(map, std::min(2 * p, full), cfg);
  rep.complexAtP = checkComplexificationPPositive(map, p, cfg);
  rep.consistent = !(rep.realAt2p.status != Status::Refuted && rep.complexAtP.refuted());
  return rep;
}

NormEstimate estimateMapNorm(const LinearMapRep& map, const SolverConfig& cfg) {
  int n = map.dimIn();
  Field f = map.field();
  NormEstimate est;
  Matrix id = Matrix::identity(n, f);
  est.normAtIdentity = operatorNorm(map.apply(id));
  est.lowerBound = est.normAtIdentity;
  est.argmax = id;

  int samples = std::max(32, cfg.restarts);
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::forRestart(cfg.seed ^ 0xabcdef, static_cast<std::uint64_t>(s));
    Matrix u = polarFactor(rng.gaussianMatrix(n, n, f));
    double val = operatorNorm(map.apply(u));
    if (val > est.lowerBound) {
      est.lowerBound = val;
      est.argmax = u;
    }
    // Local ascent by polar retraction of random perturbations.
    Matrix cur = u;
    double curVal = val;
    double eps = 0.3;
    for (int step = 0; step < 60 && eps > 1e-6; ++step) {
      Matrix cand = polarFactor(cur + rng.gaussianMatrix(n, n, f).scaled(eps));
      double cv = operatorNorm(map.apply(cand));
      if (cv > curVal + 1e-14) {
        cur = cand;
        curVal = cv;
      } else {
        eps *= 0.7;
      }
    }
    if (curVal > est.lowerBound) {
      est.lowerBound = curVal;
      est.argmax = cur;
    }
  }
  return est;
}

}  // namespace realmap
