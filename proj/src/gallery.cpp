#include "realmap/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "realmap/linalg.hpp"

namespace realmap {
namespace gallery {

namespace {

Matrix oPlus(int p) {
  Matrix m(2 * p, 2 * p, Field::Real);
  for (int i = 0; i < p; ++i) {
    m.setRe(i, p + i, 1.0);
    m.setRe(p + i, i, 1.0);
  }
  return m;
}

Matrix oMinus(int p) {
  Matrix m(2 * p, 2 * p, Field::Real);
  for (int i = 0; i < p; ++i) {
    m.setRe(i, i, 1.0);
    m.setRe(p + i, p + i, -1.0);
  }
  return m;
}

// Antisymmetric generator padded with zeros; i * gPad(n) is the Hermitian
// A_n = A (+) 0_{n-2} block used by the identity-plus-tensor states.
Matrix gPad(int n) {
  Matrix g(n, n, Field::Real);
  g.setRe(0, 1, -1.0);
  g.setRe(1, 0, 1.0);
  return g;
}

LinearMapRep fromImageRule(int n, int m, const std::function<Matrix(int, int)>& image) {
  std::vector<std::vector<Matrix>> images(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    images[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) images[static_cast<size_t>(i)].push_back(image(i, j));
  }
  (void)m;
  return LinearMapRep::fromBasisImages(images);
}

LinearMapRep buildLambdaQ(int n, double q) {
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix img = Matrix::zero(n, n, Field::Real);
    if (i == j) img = Matrix::identity(n);
    return img - Matrix::unit(n, i, j).scaled(q);
  });
}

LinearMapRep buildGammaQ(int p, double q) {
  int n = 2 * p;
  Matrix op = oPlus(p), om = oMinus(p);
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix e = Matrix::unit(n, i, j);
    Matrix img = op * e * op + om * e * om;
    Matrix tr = (i == j) ? Matrix::identity(n) : Matrix::zero(n, n, Field::Real);
    return tr - img.scaled(q);
  });
}

LinearMapRep buildPhiS(int n, double s) {
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix e = Matrix::unit(n, i, j);
    return e + (e - e.transpose()).scaled(s);
  });
}

LinearMapRep buildRhoT(double t) {
  double c = t / (2.0 * std::sqrt(2.0));
  return fromImageRule(3, 3, [&](int i, int j) {
    Matrix out = Matrix::zero(3, 3, Field::Real);
    // (1,1) and (2,2): (a11 + a22 + 2 a33)/4 ; (3,3): (a11 + a22)/2 ;
    // (1,2) = -(2,1) = (a12 - a21) t / (2 sqrt 2).
    auto a = [&](int r, int cc) { return (i == r && j == cc) ? 1.0 : 0.0; };
    double diag = (a(0, 0) + a(1, 1) + 2.0 * a(2, 2)) / 4.0;
    out.setRe(0, 0, diag);
    out.setRe(1, 1, diag);
    out.setRe(2, 2, (a(0, 0) + a(1, 1)) / 2.0);
    double off = (a(0, 1) - a(1, 0)) * c;
    out.setRe(0, 1, off);
    out.setRe(1, 0, -off);
    return out;
  });
}

LinearMapRep buildSigmaNT(int n, double t) {
  LinearMapRep rho = buildRhoT(t);
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix out = Matrix::zero(n, n, Field::Real);
    if (i < 3 && j < 3) {
      out.setBlock(0, 0, rho.apply(Matrix::unit(3, i, j)));
    } else if (i >= 3 && j >= 3) {
      out.setRe(i, j, 1.0);  // D block passes through
    }
    return out;
  });
}

LinearMapRep buildChoiMap(int n) {
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix tr = (i == j) ? Matrix::identity(n).scaled(static_cast<double>(n - 1))
                         : Matrix::zero(n, n, Field::Real);
    return tr - Matrix::unit(n, i, j);
  });
}

LinearMapRep buildSkewSym(int n) {
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix e = Matrix::unit(n, i, j);
    return e - e.transpose();
  });
}

LinearMapRep buildSymDepol(int n, double lambda) {
  return fromImageRule(n, n, [&](int i, int j) {
    Matrix tr = (i == j) ? Matrix::identity(n).scaled((1.0 - lambda) / n)
                         : Matrix::zero(n, n, Field::Real);
    Matrix e = Matrix::unit(n, i, j);
    return tr + (e + e.transpose()).scaled(lambda / 2.0);
  });
}

LinearMapRep buildEx97() {
  Matrix gamma = Matrix::of({{0, 1}, {-1, 0}});
  Matrix c(4, 4, Field::Real);
  c.setBlock(0, 0, Matrix::identity(2).scaled(0.5));
  c.setBlock(0, 2, gamma.scaled(0.5));
  c.setBlock(2, 0, gamma.scaled(-0.5));
  c.setBlock(2, 2, Matrix::identity(2).scaled(0.5));
  return LinearMapRep::fromChoi(BipartiteOperator(2, 2, std::move(c)));
}

BipartiteOperator buildWerner(int n, double s) {
  double denom = static_cast<double>(n) * n * n - n;
  double a = (n + 1 - 2.0 * s) / denom;
  double b = (2.0 * n * s - (n + 1)) / denom;
  Matrix w(n * n, n * n, Field::Real);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.setRe(i * n + j, j * n + i, 1.0);  // sum E_ij (x) E_ji
  Matrix mat = Matrix::identity(n * n).scaled(a) + w.scaled(b);
  return BipartiteOperator(n, n, std::move(mat));
}

BipartiteOperator buildEx71(int p) {
  int d = 2 * p;
  Matrix wp = vec(oPlus(p)), wm = vec(oMinus(p));
  Matrix mat = (wp * wp.transpose() + wm * wm.transpose()).scaled(1.0 / (4.0 * p));
  return BipartiteOperator(d, d, std::move(mat));
}

BipartiteOperator buildRemark73(int n, int m) {
  // I (x) I + A_n (x) A_m with A = i G: the tensor term is -G_n (x) G_m, real.
  Matrix mat = Matrix::identity(n * m) - kron(gPad(n), gPad(m));
  return BipartiteOperator(n, m, std::move(mat));
}

BipartiteOperator buildUpbTiles() {
  // Five real orthonormal product vectors in R^3 (x) R^3 whose complement
  // projector carries no product vector; state is the normalized complement.
  auto ket = [](double x, double y, double z) {
    return Matrix::columnVector({x, y, z});
  };
  double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  std::vector<std::pair<Matrix, Matrix>> prods = {
      {ket(1, 0, 0), ket(r2, -r2, 0)},
      {ket(0, 0, 1), ket(0, r2, -r2)},
      {ket(r2, -r2, 0), ket(0, 0, 1)},
      {ket(0, r2, -r2), ket(1, 0, 0)},
      {ket(r3, r3, r3), ket(r3, r3, r3)},
  };
  Matrix proj = Matrix::identity(9);
  for (const auto& [x, y] : prods) {
    Matrix v = kron(x, y);
    proj = proj - v * v.transpose();
  }
  return BipartiteOperator(3, 3, proj.scaled(0.25));
}

int intParam(const Params& p, const std::string& name) {
  return static_cast<int>(std::llround(p.at(name)));
}

}  // namespace

const std::vector<EntryInfo>& entries() {
  static const std::vector<EntryInfo> list = {
      {"sec2-posnotadj", Kind::Map, {}, true,
       "M2 -> M1, (a,b;c,d) -> (a+d+b-c)/2: preserves positivity, moves antisymmetric mass"},
      {"sec2-diagtrick", Kind::Map, {}, true,
       "M2 -> M2, A -> diag((a+d)/2, (b-c)/2): norm attained at the identity"},
      {"lambda-q", Kind::Map, {{"n", 3, 2, 8, true}, {"q", 1.0, 0, 8, false}}, true,
       "A -> Tr(A) I_n - q A"},
      {"gamma-q", Kind::Map, {{"p", 1, 1, 4, true}, {"q", 0.6, 0, 4, false}}, true,
       "A -> Tr(A) I - q (O+ A O+ + O- A O-) on M_{2p}"},
      {"phi-s", Kind::Map, {{"n", 2, 2, 8, true}, {"s", 0.3, -4, 4, false}}, true,
       "A -> A + s (A - A^t)"},
      {"ex5-unital-norm1", Kind::Map, {}, true,
       "M2 -> M2, (a,b;c,d) -> (d, (b-c)/2; (c-b)/2, d): positive, unital, norm one"},
      {"psi-5", Kind::Map, {}, true,
       "M2 -> M2, (a,b;c,d) -> (0, (b-c)/2; (c-b)/2, a+d): trace preserving, norm two"},
      {"rho-t", Kind::Map, {{"t", 0.5, 0, 1, false}}, true,
       "M3 -> M3 rotation-coupling family; norm one for t in [0,1]"},
      {"sigma-nt", Kind::Map, {{"n", 4, 4, 8, true}, {"t", 0.8, 0, 1, false}}, true,
       "block embedding of rho-t into M_n"},
      {"choi-map", Kind::Map, {{"n", 3, 2, 6, true}}, true,
       "A -> (n-1) Tr(A) I_n - A"},
      {"skew-sym", Kind::Map, {{"n", 2, 2, 6, true}}, true,
       "A -> A - A^t; both signs are positive"},
      {"werner", Kind::State, {{"n", 2, 2, 6, true}, {"s", 0.5, 0, 1, false}}, true,
       "swap-symmetric family on K^n (x) K^n"},
      {"ex7-1", Kind::State, {{"p", 1, 1, 3, true}}, true,
       "(vec(O+)vec(O+)^t + vec(O-)vec(O-)^t)/(4p) on R^{2p} (x) R^{2p}"},
      {"remark7-3", Kind::State, {{"n", 2, 2, 6, true}, {"m", 2, 2, 6, true}}, true,
       "I (x) I + A_n (x) A_m with A the antisymmetric Hermitian unit"},
      {"ex8-3", Kind::Map, {{"p", 1, 1, 3, true}}, true,
       "A -> O+ A O+ + O- A O- on M_{2p}"},
      {"ex9-7", Kind::Map, {}, true,
       "idempotent unital trace-preserving map with Choi (I, g; -g, I)/2"},
      {"sym-depol", Kind::Map, {{"n", 2, 2, 6, true}, {"lambda", 0.5, 0, 1, false}}, true,
       "X -> (1-lambda) Tr(X) I/n + lambda (X + X^t)/2"},
      {"upb-tiles", Kind::State, {}, false,
       "normalized projector onto the complement of a real unextendible product basis in 3x3"},
  };
  return list;
}

bool exists(const std::string& id) {
  for (const EntryInfo& e : entries())
    if (e.id == id) return true;
  return false;
}

const EntryInfo& info(const std::string& id) {
  for (const EntryInfo& e : entries())
    if (e.id == id) return e;
  throw Error(ErrorCode::UnknownId, "unknown gallery id: " + id);
}

Params resolveParams(const std::string& id, const Params& given) {
  const EntryInfo& e = info(id);
  Params out;
  for (const ParamSpec& ps : e.params) {
    auto it = given.find(ps.name);
    double v = (it == given.end()) ? ps.defaultValue : it->second;
    if (v < ps.minValue || v > ps.maxValue)
      throw Error(ErrorCode::ParamRange,
                  id + ": parameter " + ps.name + " out of range [" + std::to_string(ps.minValue) +
                      ", " + std::to_string(ps.maxValue) + "]");
    if (ps.integer && std::abs(v - std::llround(v)) > 1e-9)
      throw Error(ErrorCode::ParamRange, id + ": parameter " + ps.name + " must be an integer");
    out[ps.name] = v;
  }
  for (const auto& [k, v] : given) {
    if (!out.count(k)) throw Error(ErrorCode::ParamRange, id + ": unknown parameter " + k);
  }
  return out;
}

Built build(const std::string& id, const Params& given) {
  Params p = resolveParams(id, given);
  if (id == "sec2-posnotadj") {
    return fromImageRule(2, 1, [&](int i, int j) {
      double val = (i == j) ? 0.5 : (i == 0 ? 0.5 : -0.5);
      Matrix m(1, 1, Field::Real);
      m.setRe(0, 0, val);
      return m;
    });
  }
  if (id == "sec2-diagtrick") {
    return fromImageRule(2, 2, [&](int i, int j) {
      Matrix m(2, 2, Field::Real);
      if (i == j) m.setRe(0, 0, 0.5);
      if (i == 0 && j == 1) m.setRe(1, 1, 0.5);
      if (i == 1 && j == 0) m.setRe(1, 1, -0.5);
      return m;
    });
  }
  if (id == "lambda-q") return buildLambdaQ(intParam(p, "n"), p.at("q"));
  if (id == "gamma-q") return buildGammaQ(intParam(p, "p"), p.at("q"));
  if (id == "phi-s") return buildPhiS(intParam(p, "n"), p.at("s"));
  if (id == "ex5-unital-norm1") {
    return fromImageRule(2, 2, [&](int i, int j) {
      Matrix m(2, 2, Field::Real);
      if (i == 1 && j == 1) m = Matrix::identity(2);
      if (i == 0 && j == 1) {
        m.setRe(0, 1, 0.5);
        m.setRe(1, 0, -0.5);
      }
      if (i == 1 && j == 0) {
        m.setRe(0, 1, -0.5);
        m.setRe(1, 0, 0.5);
      }
      return m;
    });
  }
  if (id == "psi-5") {
    return fromImageRule(2, 2, [&](int i, int j) {
      Matrix m(2, 2, Field::Real);
      if (i == j) m.setRe(1, 1, 1.0);
      if (i == 0 && j == 1) {
        m.setRe(0, 1, 0.5);
        m.setRe(1, 0, -0.5);
      }
      if (i == 1 && j == 0) {
        m.setRe(0, 1, -0.5);
        m.setRe(1, 0, 0.5);
      }
      return m;
    });
  }
  if (id == "rho-t") return buildRhoT(p.at("t"));
  if (id == "sigma-nt") return buildSigmaNT(intParam(p, "n"), p.at("t"));
  if (id == "choi-map") return buildChoiMap(intParam(p, "n"));
  if (id == "skew-sym") return buildSkewSym(intParam(p, "n"));
  if (id == "werner") return buildWerner(intParam(p, "n"), p.at("s"));
  if (id == "ex7-1") return buildEx71(intParam(p, "p"));
  if (id == "remark7-3") return buildRemark73(intParam(p, "n"), intParam(p, "m"));
  if (id == "ex8-3") {
    int pp = intParam(p, "p");
    return LinearMapRep::fromKraus({oPlus(pp), oMinus(pp)}, Field::Real);
  }
  if (id == "ex9-7") return buildEx97();
  if (id == "sym-depol") return buildSymDepol(intParam(p, "n"), p.at("lambda"));
  if (id == "upb-tiles") return buildUpbTiles();
  throw Error(ErrorCode::UnknownId, "unknown gallery id: " + id);
}

LinearMapRep buildMap(const std::string& id, const Params& params) {
  Built b = build(id, params);
  if (auto* m = std::get_if<LinearMapRep>(&b)) return *m;
  throw Error(ErrorCode::UnknownId, id + " is a state entry, not a map");
}

BipartiteOperator buildState(const std::string& id, const Params& params) {
  Built b = build(id, params);
  if (auto* s = std::get_if<BipartiteOperator>(&b)) return *s;
  throw Error(ErrorCode::UnknownId, id + " is a map entry, not a state");
}

std::optional<cones::SepDecomposition> knownCsepCertificate(const std::string& id,
                                                            const Params& given) {
  Params p = exists(id) ? resolveParams(id, given) : Params{};
  cones::SepDecomposition dec;
  dec.field = Field::Complex;
  dec.conjugatePaired = true;
  dec.rankBound = 1;

  if (id == "ex9-7") {
    // C = A+ (x) A- + A- (x) A+ with A+- = (I +- i g)/2; one paired factor A+.
    Matrix ap = Matrix::complexFrom(Matrix::identity(2).scaled(0.5),
                                    Matrix::of({{0, 1}, {-1, 0}}).scaled(0.5));
    dec.factors.push_back(ap);
    return dec;
  }
  if (id == "ex7-1") {
    int pp = intParam(p, "p");
    // P = (V V* + conj V V^t)/2 with V = vec((O- + i O+) / (2 sqrt p)):
    // one paired factor of rank p.
    Matrix a = Matrix::complexFrom(oMinus(pp).scaled(1.0 / (2.0 * std::sqrt(double(pp)))),
                                   oPlus(pp).scaled(1.0 / (2.0 * std::sqrt(double(pp)))));
    dec.rankBound = pp;
    dec.factors.push_back(a.scaled(1.0 / std::sqrt(2.0)));
    return dec;
  }
  if (id == "remark7-3") {
    // 2P = (I + A_n) (x) (I + A_m) + conjugate; spectral factors of each side.
    int n = intParam(p, "n"), m = intParam(p, "m");
    Matrix an = Matrix::complexFrom(Matrix::identity(n), gPad(n));
    Matrix am = Matrix::complexFrom(Matrix::identity(m), gPad(m));
    EigDecomposition en = symEig(an, 1e-9), em = symEig(am, 1e-9);
    for (int a = 0; a < n; ++a) {
      if (en.eigenvalues[static_cast<size_t>(a)] <= 1e-12) continue;
      Matrix xa = en.vectors.column(a).scaled(std::sqrt(en.eigenvalues[static_cast<size_t>(a)]));
      for (int b = 0; b < m; ++b) {
        if (em.eigenvalues[static_cast<size_t>(b)] <= 1e-12) continue;
        Matrix yb = em.vectors.column(b).scaled(std::sqrt(em.eigenvalues[static_cast<size_t>(b)]));
        dec.factors.push_back((xa * yb.transpose()).scaled(1.0 / std::sqrt(2.0)));
      }
    }
    return dec;
  }
  if (id == "werner" && intParam(p, "n") == 2 && p.at("s") >= 0.5) {
    double s = p.at("s");
    double alpha = 2.0 * (1.0 - s);  // weight of the s = 1/2 endpoint
    auto u = [](double xr, double xi, double yr, double yi) {
      Matrix re = Matrix::columnVector({xr, yr});
      Matrix im = Matrix::columnVector({xi, yi});
      return Matrix::complexFrom(re, im);
    };
    double r2 = 1.0 / std::sqrt(2.0);
    std::vector<Matrix> dirs = {u(r2, 0, r2, 0),  u(r2, 0, -r2, 0), u(r2, 0, 0, r2),
                                u(r2, 0, 0, -r2), u(1, 0, 0, 0),    u(0, 0, 1, 0)};
    // Antipodal pairs: indices (0,1), (2,3), (4,5); dirs[2] and dirs[3] are
    // complex conjugates of each other, the rest are real.
    auto add = [&](const Matrix& x, const Matrix& y, double weight) {
      if (weight <= 1e-15) return;
      Matrix f = (x * y.transpose()).scaled(std::sqrt(weight));
      dec.factors.push_back(f);
    };
    // s = 1/2 endpoint: sum over a of rho_a (x) rho_{-a} / 6.
    // s = 1 endpoint: sum over a of rho_a (x) rho_a / 6.
    // Paired-sum convention halves the weight of real factors and keeps one
    // representative of each conjugate pair.
    int anti[6] = {1, 0, 3, 2, 5, 4};
    for (int a = 0; a < 6; ++a) {
      bool realDir = (a != 2 && a != 3);
      double w12 = alpha / 6.0, w1 = (1.0 - alpha) / 6.0;
      if (realDir) {
        add(dirs[static_cast<size_t>(a)], dirs[static_cast<size_t>(anti[a])], w12 / 2.0);
        add(dirs[static_cast<size_t>(a)], dirs[static_cast<size_t>(a)], w1 / 2.0);
      } else if (a == 2) {  // keep +y representative; -y is its conjugate
        add(dirs[2], dirs[3], w12);
        add(dirs[2], dirs[2], w1);
      }
    }
    return dec;
  }
  return std::nullopt;
}

std::vector<cones::WitnessEntry> standardWitnessBattery(int n) {
  std::vector<cones::WitnessEntry> out;
  out.push_back({"transpose", LinearMapRep::transposeMap(n), 1, 1});
  for (int k = 1; k < n; ++k) {
    std::ostringstream id;
    id << "lambda-q(q=1/" << k << ")";
    out.push_back({id.str(), buildLambdaQ(n, 1.0 / k), k, k});
  }
  if (n >= 2) out.push_back({"choi-map", buildChoiMap(n), n - 1, n - 1});
  if (n % 2 == 0) {
    int p = n / 2;
    double q = 1.0 / std::sqrt(2.0 * p * (2.0 * p - 1.0));
    std::ostringstream id;
    id << "gamma-q(threshold)";
    // Real positivity level 2p-1; the complexification is refuted at p for
    // this q, so it is not offered as a complex-side witness.
    out.push_back({id.str(), buildGammaQ(p, q), 2 * p - 1, 0});
  }
  return out;
}

std::vector<cones::WitnessEntry> pPositiveProbeFamily(int n) { return standardWitnessBattery(n); }

nlohmann::json manifest() {
  nlohmann::json j;
  j["format"] = "realmap-gallery/1";
  nlohmann::json list = nlohmann::json::array();
  for (const EntryInfo& e : entries()) {
    nlohmann::json je;
    je["id"] = e.id;
    je["kind"] = e.kind == Kind::Map ? "map" : "state";
    je["enabledByDefault"] = e.enabledByDefault;
    je["note"] = e.note;
    nlohmann::json params = nlohmann::json::array();
    for (const ParamSpec& ps : e.params) {
      params.push_back({{"name", ps.name},
                        {"default", ps.defaultValue},
                        {"min", ps.minValue},
                        {"max", ps.maxValue},
                        {"integer", ps.integer}});
    }
    je["params"] = params;
    list.push_back(je);
  }
  j["entries"] = list;
  return j;
}

}  // namespace gallery
}  // namespace realmap
