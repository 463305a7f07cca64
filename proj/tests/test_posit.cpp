#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_helpers.hpp"
#include "realmap/gallery.hpp"
#include "realmap/linalg.hpp"
#include "realmap/posit.hpp"

using namespace realmap;

namespace {

SolverConfig quickCfg() {
  SolverConfig cfg;
  cfg.restarts = 24;
  return cfg;
}

LinearMapRep randomCpMap(Rng& rng, int n, int m, int krausCount) {
  std::vector<Matrix> kraus;
  for (int i = 0; i < krausCount; ++i) kraus.push_back(rng.gaussianMatrix(m, n, Field::Real));
  return LinearMapRep::fromKraus(kraus, Field::Real);
}

}  // namespace

TEST_CASE("adjoint commutation checks") {
  SolverConfig cfg = quickCfg();
  CHECK(commutesWithAdjoint(LinearMapRep::identityMap(3)).commutes);

  AdjointCommutation bad = commutesWithAdjoint(gallery::buildMap("sec2-posnotadj", {}));
  CHECK(!bad.commutes);
  CHECK(bad.worstBasisViolation > 0.1);

  AdjointCommutation bad2 = commutesWithAdjoint(gallery::buildMap("sec2-diagtrick", {}));
  CHECK(!bad2.commutes);
  CHECK(bad2.worstBasisViolation > 0.1);

  // A + s(A - A^t) preserves both the symmetric and the antisymmetric
  // subspace, so it commutes with the adjoint for every s.
  CHECK(commutesWithAdjoint(gallery::buildMap("phi-s", {{"n", 2}, {"s", 0.3}})).commutes);
  CHECK(commutesWithAdjoint(gallery::buildMap("phi-s", {{"n", 2}, {"s", 0.0}})).commutes);
  (void)cfg;
}

TEST_CASE("complete positivity") {
  SolverConfig cfg = quickCfg();

  Verdict ok = isCompletelyPositive(gallery::buildMap("ex8-3", {{"p", 1}}), cfg);
  CHECK(ok.certified());
  CHECK(*ok.certifiedBy == CertifiedBy::ChoiPsd);

  LinearMapRep lam15 = gallery::buildMap("lambda-q", {{"n", 2}, {"q", 1.5}});
  Verdict bad = isCompletelyPositive(lam15, cfg);
  CHECK(bad.refuted());
  CHECK(*bad.value == doctest::Approx(1.0 - 2.0 * 1.5).epsilon(1e-10));
  // The eigenvector witness re-verifies.
  Matrix w = *bad.witnessMatrix;
  CHECK(Matrix::dot(w, lam15.choi().mat() * w).real() == doctest::Approx(*bad.value).epsilon(1e-10));

  Verdict tau = isCompletelyPositive(LinearMapRep::transposeMap(2), cfg);
  CHECK(tau.refuted());
  CHECK(*tau.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("seesaw on the identity choi") {
  SolverConfig cfg = quickCfg();
  BipartiteOperator c(2, 2, Matrix::identity(4));
  for (int p : {1, 2}) {
    SeesawResult r = seesawMinSchmidt(c, p, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(seesawMinSchmidt(c, 3, cfg), Error);
}

TEST_CASE("seesaw reproduces the trace-map ladder") {
  SolverConfig cfg = quickCfg();
  for (double q : {0.3, 0.6, 1.0}) {
    LinearMapRep lam = gallery::buildMap("lambda-q", {{"n", 3}, {"q", q}});
    SeesawResult r = seesawMinSchmidt(lam.choi(), 2, cfg);
    CHECK(r.value == doctest::Approx(1.0 - 2.0 * q).epsilon(1e-8));
  }
}

TEST_CASE("seesaw matches the brute-force grid on random choi matrices") {
  SolverConfig cfg = quickCfg();
  Rng rng(211);
  for (int t = 0; t < 5; ++t) {
    Matrix h = rng.gaussianMatrix(4, 4, Field::Real).hermitized();
    BipartiteOperator c(2, 2, h);
    double grid = oracle::gridMinRankOne2x2(c.mat(), 400);
    SeesawResult r = seesawMinSchmidt(c, 1, cfg);
    // The seesaw must do at least as well as the grid, and the grid covers
    // the feasible set to within its resolution.
    CHECK(r.value <= grid + 1e-9);
    CHECK(r.value >= grid - 1e-3);
  }
}

TEST_CASE("complex seesaw is at least as strong as a product-state grid") {
  SolverConfig cfg = quickCfg();
  Rng rng(223);
  for (int t = 0; t < 2; ++t) {
    Matrix h = rng.gaussianMatrix(4, 4, Field::Complex).hermitized();
    BipartiteOperator c(2, 2, h);
    // Coarse grid over complex product states (two angles + two phases).
    double best = 1e300;
    int nn = 24;
    for (int ia = 0; ia <= nn / 2; ++ia)
      for (int ip = 0; ip < nn; ++ip)
        for (int ib = 0; ib <= nn / 2; ++ib)
          for (int iq = 0; iq < nn; ++iq) {
            double a = M_PI * ia / nn, b = M_PI * ib / nn;
            double ph = 2 * M_PI * ip / nn, qh = 2 * M_PI * iq / nn;
            Matrix x(2, 1, Field::Complex), y(2, 1, Field::Complex);
            x.set(0, 0, {std::cos(a), 0});
            x.set(1, 0, {std::sin(a) * std::cos(ph), std::sin(a) * std::sin(ph)});
            y.set(0, 0, {std::cos(b), 0});
            y.set(1, 0, {std::sin(b) * std::cos(qh), std::sin(b) * std::sin(qh)});
            Matrix v = kron(x, y);
            best = std::min(best, Matrix::dot(v, c.mat().asComplex() * v).real());
          }
    SeesawResult r = seesawMinSchmidt(c, 1, cfg);
    CHECK(r.value <= best + 1e-9);
    CHECK(r.value >= best - 2e-2);
    CHECK(r.value >= minEigHermitian(c.mat()) - 1e-9);
  }
}

TEST_CASE("seesaw matches the brute-force grid on the conjugation family") {
  // The cap-1 floor of the q = 0.6 member on M_2 against an independent
  // 518400-point grid over both factor circles.
  SolverConfig cfg = quickCfg();
  LinearMapRep gamma = gallery::buildMap("gamma-q", {{"p", 1}, {"q", 0.6}});
  double grid = oracle::gridMinRankOne2x2(gamma.choi().mat());
  SeesawResult r = seesawMinSchmidt(gamma.choi(), 1, cfg);
  CHECK(r.value == doctest::Approx(grid).epsilon(1e-7));
  CHECK(r.value == doctest::Approx(0.4).epsilon(1e-8));
  // One-sided closed-form floor: never below 1 - q sqrt(2).
  CHECK(r.value >= 1.0 - 0.6 * std::sqrt(2.0) - 1e-9);
}

TEST_CASE("seesaw determinism and witness re-verification") {
  SolverConfig cfg = quickCfg();
  LinearMapRep lam = gallery::buildMap("lambda-q", {{"n", 3}, {"q", 0.8}});
  SeesawResult a = seesawMinSchmidt(lam.choi(), 2, cfg);
  SeesawResult b = seesawMinSchmidt(lam.choi(), 2, cfg);
  CHECK(a.value == b.value);  // bitwise identical under one seed
  CHECK(choiQuadraticForm(lam.choi(), a.factors) == doctest::Approx(a.value).epsilon(1e-10));

  SolverConfig other = cfg;
  other.seed = 999;
  SeesawResult c = seesawMinSchmidt(lam.choi(), 2, other);
  CHECK(c.value == doctest::Approx(a.value).epsilon(1e-7));
}

TEST_CASE("seesaw is monotone in the cap and exact at full cap") {
  SolverConfig cfg = quickCfg();
  Rng rng(71);
  for (int t = 0; t < 4; ++t) {
    Matrix h = rng.gaussianMatrix(9, 9, Field::Real).hermitized();
    BipartiteOperator c(3, 3, h);
    double prev = 1e300;
    for (int p = 1; p <= 3; ++p) {
      SeesawResult r = seesawMinSchmidt(c, p, cfg);
      CHECK(r.value <= prev + 1e-9);
      prev = r.value;
    }
    CHECK(prev == doctest::Approx(minEigHermitian(h)).epsilon(1e-7));
  }
}

TEST_CASE("seesaw respects the shifted-form floor") {
  // C = alpha I + beta Q with Q PSD: every value is >= alpha - |beta| ||Q||
  // and >= lambda_min(C).
  Rng rng(73);
  SolverConfig cfg = quickCfg();
  for (int t = 0; t < 4; ++t) {
    Matrix q = oracle::randomPsd(rng, 4);
    double alpha = 0.3, beta = (t % 2) ? -0.8 : 0.8;
    Matrix c = Matrix::identity(4).scaled(alpha) + q.scaled(beta);
    BipartiteOperator cc(2, 2, c);
    SeesawResult r = seesawMinSchmidt(cc, 1, cfg);
    CHECK(r.value >= alpha - std::abs(beta) * operatorNorm(q) - 1e-9);
    CHECK(r.value >= minEigHermitian(c) - 1e-9);
  }
}

TEST_CASE("p-positivity verdicts on the trace-minus family") {
  SolverConfig cfg = quickCfg();

  Verdict boundary = checkPPositive(gallery::buildMap("lambda-q", {{"n", 3}, {"q", 1.0}}), 1, cfg);
  CHECK(!boundary.refuted());
  CHECK(*boundary.value == doctest::Approx(0.0).epsilon(1e-8));

  Verdict refuted = checkPPositive(gallery::buildMap("lambda-q", {{"n", 3}, {"q", 0.6}}), 2, cfg);
  CHECK(refuted.refuted());
  CHECK(*refuted.value == doctest::Approx(-0.2).epsilon(1e-7));
  CHECK(refuted.witnessFactored.has_value());
  CHECK(choiQuadraticForm(gallery::buildMap("lambda-q", {{"n", 3}, {"q", 0.6}}).choi(),
                          *refuted.witnessFactored) == doctest::Approx(-0.2).epsilon(1e-7));

  // Conjugation family on M_4 at its positivity threshold: the cap-3 floor
  // stays nonnegative, so no refutation.
  double q = 1.0 / std::sqrt(12.0);
  Verdict undecided = checkPPositive(gallery::buildMap("gamma-q", {{"p", 2}, {"q", q}}), 3, cfg);
  CHECK(!undecided.refuted());
  CHECK(*undecided.value >= -1e-9);

  // A PSD choi certifies every cap.
  Verdict cp = checkPPositive(gallery::buildMap("ex8-3", {{"p", 1}}), 1, cfg);
  CHECK(cp.certified());
  CHECK(*cp.certifiedBy == CertifiedBy::ChoiPsd);
}

TEST_CASE("complexification p-positivity") {
  SolverConfig cfg = quickCfg();

  LinearMapRep gammaMap = gallery::buildMap("gamma-q", {{"p", 1}, {"q", 0.6}});
  Verdict g = checkComplexificationPPositive(gammaMap, 1, cfg);
  CHECK(g.refuted());
  CHECK(*g.value == doctest::Approx(-0.2).epsilon(1e-6));
  // Witness comes back as a complex matrix X + iY of rank <= 1 whose split
  // quadratic form reproduces the value.
  REQUIRE(g.witnessMatrix.has_value());
  Matrix a = *g.witnessMatrix;
  CHECK(matrixRank(a) == 1);
  Matrix vx = vec(a.realPart()), vy = vec(a.imagPart());
  double val = Matrix::dot(vx, gammaMap.choi().mat() * vx).real() +
               Matrix::dot(vy, gammaMap.choi().mat() * vy).real();
  CHECK(val == doctest::Approx(*g.value).epsilon(1e-10));

  Rng rng(79);
  Verdict cp = checkComplexificationPPositive(randomCpMap(rng, 3, 3, 4), 2, cfg);
  CHECK(cp.certified());

  Verdict rho = checkComplexificationPPositive(gallery::buildMap("rho-t", {{"t", 0.8}}), 1, cfg);
  CHECK(rho.refuted());
  CHECK(*rho.value < -1e-4);

  CHECK_THROWS_AS(
      checkComplexificationPPositive(LinearMapRep::identityMap(2, Field::Complex), 1, cfg), Error);
}

TEST_CASE("doubled-cap consistency probe") {
  SolverConfig cfg = quickCfg();
  Rng rng(83);

  Corollary2pReport cp = checkCorollary2pConsistency(randomCpMap(rng, 2, 2, 3), 1, cfg);
  CHECK(cp.realAt2p.certified());
  CHECK(cp.complexAtP.certified());
  CHECK(cp.consistent);

  Corollary2pReport g = checkCorollary2pConsistency(gallery::buildMap("gamma-q", {{"p", 1}, {"q", 0.6}}), 1, cfg);
  CHECK(g.realAt2p.refuted());  // implication vacuous
  CHECK(g.complexAtP.refuted());
  CHECK(g.consistent);

  Corollary2pReport lam = checkCorollary2pConsistency(gallery::buildMap("lambda-q", {{"n", 4}, {"q", 0.25}}), 2, cfg);
  CHECK(!lam.realAt2p.refuted());
  CHECK(!lam.complexAtP.refuted());
  CHECK(lam.consistent);
}

TEST_CASE("map norm estimation") {
  SolverConfig cfg = quickCfg();

  NormEstimate diag = estimateMapNorm(gallery::buildMap("sec2-diagtrick", {}), cfg);
  CHECK(diag.normAtIdentity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(diag.lowerBound == doctest::Approx(1.0).epsilon(1e-6));

  NormEstimate psi = estimateMapNorm(gallery::buildMap("psi-5", {}), cfg);
  CHECK(psi.normAtIdentity == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(psi.lowerBound == doctest::Approx(2.0).epsilon(1e-6));

  for (double t : {0.25, 1.0}) {
    NormEstimate rho = estimateMapNorm(gallery::buildMap("rho-t", {{"t", t}}), cfg);
    CHECK(rho.normAtIdentity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.lowerBound == doctest::Approx(1.0).epsilon(1e-6));
  }

  // A map whose norm exceeds its value at the identity: the ascent must
  // climb past the identity sample. Here sup |cos - sin| = sqrt(2) over
  // rotations while the identity gives 1.
  NormEstimate pna = estimateMapNorm(gallery::buildMap("sec2-posnotadj", {}), cfg);
  CHECK(pna.normAtIdentity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pna.lowerBound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(pna.lowerBound >= pna.normAtIdentity);
}

TEST_CASE("solver configuration is validated") {
  SolverConfig cfg = quickCfg();
  cfg.restarts = 0;
  BipartiteOperator c(2, 2, Matrix::identity(4));
  CHECK_THROWS_AS(seesawMinSchmidt(c, 1, cfg), Error);
}

TEST_CASE("pointedness probe on the antisymmetrizer") {
  SolverConfig cfg = quickCfg();
  LinearMapRep skew = gallery::buildMap("skew-sym", {{"n", 2}});
  LinearMapRep negSkew = LinearMapRep::fromChoi(
      BipartiteOperator(2, 2, skew.choi().mat().scaled(-1.0)));

  CHECK(!checkPPositive(skew, 1, cfg).refuted());
  CHECK(!checkPPositive(negSkew, 1, cfg).refuted());

  Verdict p2 = checkPPositive(skew, 2, cfg);
  Verdict n2 = checkPPositive(negSkew, 2, cfg);
  CHECK(p2.refuted());
  CHECK(n2.refuted());
  CHECK(*p2.value == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(*n2.value == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("non-hermitian choi is refused with a re-checkable witness") {
  SolverConfig cfg = quickCfg();
  Verdict v = checkPPositive(gallery::buildMap("sec2-diagtrick", {}), 1, cfg);
  CHECK(v.refuted());
  CHECK(v.witnessMatrix.has_value());
  CHECK(v.witnessMatrix->frobeniusNorm() > 0.1);

  // A + s(A - A^t) keeps a symmetric Choi matrix; its cap-1 floor is zero.
  Verdict ps = checkPPositive(gallery::buildMap("phi-s", {{"n", 2}, {"s", 0.3}}), 1, cfg);
  CHECK(!ps.refuted());
  CHECK(*ps.value == doctest::Approx(0.0).epsilon(1e-8));
}
