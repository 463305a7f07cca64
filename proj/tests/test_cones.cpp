#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_helpers.hpp"
#include "realmap/cones.hpp"
#include "realmap/gallery.hpp"
#include "realmap/linalg.hpp"

using namespace realmap;
using cones::SepRequest;

namespace {

SolverConfig quickCfg() {
  SolverConfig cfg;
  cfg.restarts = 24;
  return cfg;
}

BipartiteOperator randomSeparable(Rng& rng, int n, int m, int terms) {
  Matrix sum = Matrix::zero(n * m, n * m, Field::Real);
  for (int k = 0; k < terms; ++k)
    sum = sum + kron(oracle::randomPsd(rng, n), oracle::randomPsd(rng, m));
  return BipartiteOperator(n, m, sum);
}

}  // namespace

TEST_CASE("psd verdicts") {
  CHECK(cones::isPsd(Matrix::identity(4), 1e-9).certified());

  Verdict w = cones::isPsd(swapOperator(2, 2), 1e-9);
  CHECK(w.refuted());
  // The witness is the antisymmetric eigenvector; it re-verifies.
  Matrix v = *w.witnessMatrix;
  CHECK(Matrix::dot(v, swapOperator(2, 2) * v).real() == doctest::Approx(-1.0).epsilon(1e-10));

  BipartiteOperator ex71 = gallery::buildState("ex7-1", {{"p", 1}});
  CHECK(cones::isPsd(ex71.mat(), 1e-9).certified());
}

TEST_CASE("ppt verdicts on the swap-symmetric family") {
  for (double s : {0.0, 0.3, 0.5, 0.75}) {
    BipartiteOperator p = gallery::buildState("werner", {{"n", 2}, {"s", s}});
    Verdict v = cones::isPpt(p, 1e-9);
    double want = (2.0 * s - 1.0) / 2.0;
    if (s < 0.5) {
      CHECK(v.refuted());
      CHECK(*v.value == doctest::Approx(want).epsilon(1e-10));
    } else {
      CHECK(v.certified());
    }
  }
  CHECK(cones::isPpt(gallery::buildMap("ex9-7", {}).choi(), 1e-9).certified());
}

TEST_CASE("invariance under partial transpose") {
  Rng rng(89);
  Matrix a = oracle::randomPsd(rng, 3);
  Matrix sym = (a + a.transpose()).scaled(0.5);
  BipartiteOperator el(3, 2, kron(sym, oracle::randomPsd(rng, 2)));
  cones::IptReport r = cones::isIpt(el, 1e-10);
  CHECK(r.ipt);
  CHECK(r.defect < 1e-12);

  for (double s : {0.6, 0.75, 0.9}) {
    cones::IptReport w = cones::isIpt(gallery::buildState("werner", {{"n", 2}, {"s", s}}), 1e-10);
    CHECK(w.ipt == (s == 0.75));
  }

  cones::IptReport e97 = cones::isIpt(gallery::buildMap("ex9-7", {}).choi(), 1e-10);
  CHECK(!e97.ipt);
  CHECK(e97.defect == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("witness values under the trace pairing") {
  Rng rng(97);
  LinearMapRep id2 = LinearMapRep::identityMap(2);
  for (int t = 0; t < 10; ++t) {
    BipartiteOperator p = randomSeparable(rng, 2, 2, 2);
    double val = cones::witnessValue(id2, p);
    Matrix vi = vec(Matrix::identity(2));
    CHECK(val == doctest::Approx(Matrix::dot(vi, p.mat() * vi).real()).epsilon(1e-12));
    CHECK(val >= -1e-12);
  }

  LinearMapRep gamma = gallery::buildMap("gamma-q", {{"p", 1}, {"q", 0.6}});
  BipartiteOperator ex71 = gallery::buildState("ex7-1", {{"p", 1}});
  CHECK(cones::witnessValue(gamma, ex71) == doctest::Approx(-0.2).epsilon(1e-12));

  LinearMapRep lam = gallery::buildMap("lambda-q", {{"n", 2}, {"q", 1.0}});
  Matrix vi = vec(Matrix::identity(2));
  BipartiteOperator maxEnt(2, 2, (vi * vi.transpose()).scaled(0.5));
  CHECK(cones::witnessValue(lam, maxEnt) == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(cones::witnessValue(LinearMapRep::identityMap(3), maxEnt), Error);
}

TEST_CASE("tensored-application detection") {
  SolverConfig cfg = quickCfg();
  auto battery = gallery::standardWitnessBattery(2);

  Rng rng(101);
  BipartiteOperator sep = randomSeparable(rng, 2, 2, 3);
  CHECK(!cones::horodeckiCheck(sep, 1, Field::Real, battery, cfg).refuted());

  BipartiteOperator w03 = gallery::buildState("werner", {{"n", 2}, {"s", 0.3}});
  Verdict v = cones::horodeckiCheck(w03, 1, Field::Complex, battery, cfg);
  CHECK(v.refuted());  // the transpose member reproduces the PPT test

  auto battery3 = gallery::standardWitnessBattery(3);
  Matrix vi = vec(Matrix::identity(3));
  BipartiteOperator maxEnt(3, 3, (vi * vi.transpose()).scaled(1.0 / 3.0));
  Verdict h = cones::horodeckiCheck(maxEnt, 2, Field::Complex, battery3, cfg);
  CHECK(h.refuted());

  // Pinned value through the 2-positive reduction-style map alone.
  std::vector<cones::WitnessEntry> choiOnly = {
      {"choi-map", gallery::buildMap("choi-map", {{"n", 3}}), 2, 2}};
  Verdict hc = cones::horodeckiCheck(maxEnt, 2, Field::Complex, choiOnly, cfg);
  CHECK(hc.refuted());
  CHECK(*hc.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("decomposition search certifies separable sums") {
  SolverConfig cfg = quickCfg();
  Rng rng(103);
  BipartiteOperator p = randomSeparable(rng, 2, 2, 3);
  auto dec = cones::searchSepDecomposition(p, 1, Field::Real, cfg);
  REQUIRE(dec.has_value());
  double target = cfg.decompTol * std::max(1.0, p.mat().frobeniusNorm());
  CHECK(dec->residual <= target);
  cones::DecompositionCheck chk = cones::verifyDecomposition(p, *dec, target, cfg.rankTol);
  CHECK(chk.ok);
  CHECK(chk.maxFactorRank <= 1);

  // The idempotent-map choi matrix needs genuinely complex paired factors.
  BipartiteOperator c97 = gallery::buildMap("ex9-7", {}).choi();
  auto cdec = cones::searchSepDecomposition(c97, 1, Field::Complex, cfg);
  REQUIRE(cdec.has_value());
  CHECK(cdec->conjugatePaired);
  CHECK(cones::verifyDecomposition(c97, *cdec, 1e-7, cfg.rankTol).ok);

  // And no real rank-1 decomposition exists for it; same for the projector
  // state, whose real refutation is delegated to the invariance test and
  // witness values.
  CHECK(!cones::searchSepDecomposition(c97, 1, Field::Real, cfg).has_value());
  BipartiteOperator ex71 = gallery::buildState("ex7-1", {{"p", 1}});
  CHECK(!cones::searchSepDecomposition(ex71, 1, Field::Real, cfg).has_value());

  // The paired certificate converts to a real rank-2 certificate.
  cones::SepDecomposition real2 = cones::csepToRealSep(*cdec);
  CHECK(real2.rankBound == 2);
  Matrix rec = cones::reconstruct(real2, 2, 2);
  CHECK((rec - c97.mat()).frobeniusNorm() < 1e-7);
}

TEST_CASE("separable-ball certificate") {
  BipartiteOperator idid(2, 2, Matrix::identity(4));
  Verdict ball = cones::gurvitsBarnumCertify(idid);
  CHECK(ball.certified());
  CHECK(*ball.value == doctest::Approx(0.0));

  Verdict w6 = cones::gurvitsBarnumCertify(gallery::buildState("werner", {{"n", 2}, {"s", 0.6}}));
  CHECK(w6.certified());
  CHECK(*w6.value == doctest::Approx(2.0 * std::abs(4 * 0.6 - 3) / std::sqrt(3.0)).epsilon(1e-10));

  Verdict r73 = cones::gurvitsBarnumCertify(gallery::buildState("remark7-3", {{"n", 2}, {"m", 2}}));
  CHECK(!r73.certified());
  CHECK(*r73.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("state classification drives every route") {
  SolverConfig cfg = quickCfg();
  auto battery = gallery::standardWitnessBattery(2);

  // Swap-symmetric family at s = 0.6: complex-separable by the ball, real
  // refuted by the invariance defect.
  BipartiteOperator w6 = gallery::buildState("werner", {{"n", 2}, {"s", 0.6}});
  std::vector<SepRequest> reqs = {{Field::Complex, 1}, {Field::Real, 1}};
  cones::StateClassification cls = cones::classifyState(w6, reqs, cfg, battery);
  CHECK(cls.sep[0].verdict.certified());
  CHECK(cls.sep[1].verdict.refuted());
  CHECK(cls.ipt.defect > 0.01);

  // s = 0.75 is invariant under partial transpose and inside the ball:
  // real-separable.
  BipartiteOperator w75 = gallery::buildState("werner", {{"n", 2}, {"s", 0.75}});
  std::vector<SepRequest> reqR = {{Field::Real, 1}};
  cones::StateClassification cls75 = cones::classifyState(w75, reqR, cfg, battery);
  CHECK(cls75.sep[0].verdict.certified());

  // The rank-p projector state: complex-separable at cap 1, real refuted.
  BipartiteOperator ex71 = gallery::buildState("ex7-1", {{"p", 1}});
  cones::StateClassification cls71 = cones::classifyState(ex71, reqs, cfg, battery);
  CHECK(cls71.sep[0].verdict.certified());
  CHECK(cls71.sep[1].verdict.refuted());
  // The battery recorded the conjugation-family witness value.
  bool sawNegative = false;
  for (const auto& [id, val] : cls71.witnesses)
    if (val < -0.1) sawNegative = true;
  CHECK(sawNegative);

  // Trivial regime: p >= min(n,m) certifies any PSD state constructively.
  Rng rng(107);
  Matrix g = rng.gaussianMatrix(4, 4, Field::Real);
  BipartiteOperator psd(2, 2, g * g.transpose());
  std::vector<SepRequest> req2 = {{Field::Real, 2}};
  cones::StateClassification clsFull = cones::classifyState(psd, req2, cfg, battery);
  CHECK(clsFull.sep[0].verdict.certified());
  CHECK(clsFull.sep[0].decomposition.has_value());

  // Non-PSD input: refuted everywhere.
  BipartiteOperator notPsd(2, 2, swapOperator(2, 2));
  cones::StateClassification clsBad = cones::classifyState(notPsd, reqs, cfg, battery);
  CHECK(clsBad.psd.refuted());
  CHECK(clsBad.sep[0].verdict.refuted());
  CHECK(clsBad.sep[1].verdict.refuted());
}

TEST_CASE("real separable states are invariant under partial transpose") {
  Rng rng(109);
  SolverConfig cfg = quickCfg();
  for (int t = 0; t < 500; ++t) {
    int n = 2 + static_cast<int>(rng.next() % 2);
    int m = 2 + static_cast<int>(rng.next() % 2);
    // Random real rank-1 separable sum: PT-invariance must hold exactly.
    Matrix sum = Matrix::zero(n * m, n * m, Field::Real);
    int terms = 1 + static_cast<int>(rng.next() % 4);
    for (int k = 0; k < terms; ++k) {
      Matrix a = rng.gaussianMatrix(n, 1, Field::Real);
      Matrix b = rng.gaussianMatrix(m, 1, Field::Real);
      Matrix v = kron(a * a.transpose(), b * b.transpose());
      sum = sum + v;
    }
    BipartiteOperator p(n, m, sum);
    CHECK(iptDefect(p) <= 1e-10 * (1.0 + sum.frobeniusNorm()));
    CHECK(cones::isPpt(p, cfg.psdTol).certified());
  }
}

TEST_CASE("duality: battery maps are nonnegative on their cones") {
  Rng rng(113);
  auto battery = gallery::standardWitnessBattery(2);
  for (int t = 0; t < 60; ++t) {
    // Random member of the real rank-p cone.
    int p = 1 + static_cast<int>(rng.next() % 2);
    Matrix sum = Matrix::zero(4, 4, Field::Real);
    for (int k = 0; k < 3; ++k) {
      Matrix a = rng.gaussianMatrix(2, p, Field::Real) * rng.gaussianMatrix(p, 2, Field::Real);
      sum = sum + vec(a) * vec(a).transpose();
    }
    BipartiteOperator state(2, 2, sum);
    for (const cones::WitnessEntry& w : battery) {
      if (w.realLevel < p) continue;
      CHECK(cones::witnessValue(w.map, state) >= -1e-9 * (1.0 + sum.frobeniusNorm()));
    }
  }
}

TEST_CASE("classification is monotone in the cap") {
  SolverConfig cfg = quickCfg();
  auto battery = gallery::standardWitnessBattery(2);
  for (double s : {0.3, 0.6, 0.75}) {
    BipartiteOperator p = gallery::buildState("werner", {{"n", 2}, {"s", s}});
    std::vector<SepRequest> reqs = {{Field::Complex, 1}, {Field::Complex, 2}};
    cones::StateClassification cls = cones::classifyState(p, reqs, cfg, battery);
    if (cls.sep[0].verdict.certified()) CHECK(!cls.sep[1].verdict.refuted());
  }
}

TEST_CASE("tensored detection keys the level on the requested cone") {
  // A real 1-positive map may go negative on a complex-separable state; that
  // refutes the real cone only. The complex request must not pick it up.
  SolverConfig cfg = quickCfg();
  auto battery = gallery::standardWitnessBattery(2);
  BipartiteOperator c97 = gallery::buildMap("ex9-7", {}).choi();
  CHECK(!cones::horodeckiCheck(c97, 1, Field::Complex, battery, cfg).refuted());
  CHECK(cones::horodeckiCheck(c97, 1, Field::Real, battery, cfg).refuted());
}

TEST_CASE("csep conversion rejects plain certificates") {
  cones::SepDecomposition plain;
  plain.field = Field::Real;
  CHECK_THROWS_AS(cones::csepToRealSep(plain), Error);
}
