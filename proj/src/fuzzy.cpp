#include "fsph/fuzzy.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fsph {

double defaultK(int D, int Lambda) {
  const double v = static_cast<double>(Lambda) * (Lambda + D - 2);
  return v > 0 ? v * v : 1.0;
}

bool cutoffSatisfied(int D, int Lambda, double k) {
  return k > 0 && static_cast<double>(Lambda) * (Lambda + D - 2) < 2.0 * std::sqrt(2.0 * k);
}

ModelParams ModelParams::withDefaultK(int D, int Lambda) {
  ModelParams p;
  p.D = D;
  p.Lambda = Lambda;
  p.k = defaultK(D, Lambda);
  p.kRule = KRule::Default;
  return p;
}

ModelParams ModelParams::withExplicitK(int D, int Lambda, double k) {
  ModelParams p = withDefaultK(D, Lambda);
  p.k = k;
  p.kRule = KRule::Explicit;
  return p;
}

void ModelParams::validate() const {
  if (D < 2) throw ConfigError("D must be >= 2 (got " + std::to_string(D) + ")");
  if (D > 16) throw ConfigError("D > 16 is not supported by the index encoding");
  if (Lambda < 0) throw ConfigError("Lambda must be >= 0");
  if (!(k > 0) || !std::isfinite(k)) throw ConfigError("k must be a positive finite number");
  if (!cutoffSatisfied(D, Lambda, k)) {
    std::ostringstream os;
    os << "cutoff violated: Lambda(Lambda+D-2) = " << static_cast<double>(Lambda) * (Lambda + D - 2)
       << " is not below 2 sqrt(2k) = " << 2.0 * std::sqrt(2.0 * k);
    throw ConfigError(os.str());
  }
  if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
}

double coefC(int D, int Lambda, double k, int l) {
  if (l < 1 || l > Lambda) return 0.0;
  return std::sqrt(1.0 + (2.0 * D - 5.0) * (D - 1.0) / (2.0 * k) + (l - 1.0) * (l + D - 2.0) / k);
}

double radiusSquared(const ModelParams& p, int l) {
  if (l < p.Lambda) return 1.0 + (casimirE(p.D, l) + coefB(p.D)) / p.k;
  const double c = coefC(p, p.Lambda);
  return p.Lambda * c * c / (p.D + 2.0 * p.Lambda - 2.0);
}

double coordinateNormBound(const ModelParams& p) {
  return std::sqrt(1.0 + (coefB(p.D) + (p.Lambda - 1.0) * (p.Lambda + p.D - 3.0)) / p.k);
}

double epsilonBound(const ModelParams& p) {
  return (coefB(p.D) + (p.Lambda - 1.0) * (p.Lambda + p.D - 3.0)) / (2.0 * p.k);
}

double snyderK(const ModelParams& p) {
  const double L = p.Lambda;
  return 1.0 / p.k + (1.0 + coefB(p.D) / p.k + (L - 1.0) * (L + p.D - 2.0) / p.k) / (p.D + 2.0 * L - 2.0);
}

// ---------------------------------------------------------------------------

FuzzyAlgebra::FuzzyAlgebra(const ModelParams& params) : params_(params) {
  params_.validate();
  const int D = params_.D, Lam = params_.Lambda;
  basis_ = std::make_shared<TruncatedSpace>(D, Lam);
  const int N = basis_->N();

  X_.assign(D, MatC::Zero(N, N));
  L_.assign(D * D, MatC::Zero(N, N));
  for (int l = 0; l <= Lam; ++l) {
    const HarmonicSpace& s = basis_->space(l);
    const HarmonicSpace* up = l < Lam ? &basis_->space(l + 1) : nullptr;
    const HarmonicSpace* down = l > 0 ? &basis_->space(l - 1) : nullptr;
    for (int h = 0; h < D; ++h) {
      BlockMaps bm = actionT(s, up, down, h);
      if (up) X_[h].block(basis_->offset(l + 1), basis_->offset(l), up->dim(), s.dim()) = coefC(params_, l + 1) * bm.raise;
      if (down) X_[h].block(basis_->offset(l - 1), basis_->offset(l), down->dim(), s.dim()) = coefC(params_, l) * bm.lower;
    }
    for (int h = 0; h < D; ++h)
      for (int k = h + 1; k < D; ++k) {
        MatC blk = actionL(s, h, k);
        L_[h * D + k].block(basis_->offset(l), basis_->offset(l), s.dim(), s.dim()) = blk;
        L_[k * D + h].block(basis_->offset(l), basis_->offset(l), s.dim(), s.dim()) = -blk;
      }
  }

  hermiticity_ = 0;
  for (int l = 0; l < Lam; ++l) {
    const int a = basis_->offset(l), b = basis_->offset(l + 1);
    const int da = basis_->space(l).dim(), db = basis_->space(l + 1).dim();
    for (int h = 0; h < D; ++h)
      hermiticity_ = std::max(hermiticity_, maxAbs(X_[h].block(b, a, db, da) - X_[h].block(a, b, da, db).adjoint()));
  }

  Lsq_ = MatC::Zero(N, N);
  for (int h = 0; h < D; ++h)
    for (int k = h + 1; k < D; ++k) Lsq_ += L(h, k) * L(h, k);
  Xsq_ = MatC::Zero(N, N);
  for (int i = 0; i < D; ++i) Xsq_ += X_[i] * X_[i];
  for (int l = 0; l <= Lam; ++l) {
    MatC P = MatC::Zero(N, N);
    P.block(basis_->offset(l), basis_->offset(l), basis_->space(l).dim(), basis_->space(l).dim()).setIdentity();
    blockProj_.push_back(std::move(P));
  }
}

FuzzyAlgebra buildFuzzy(const ModelParams& params) {
  FuzzyAlgebra alg(params);
  if (alg.hermiticityResidual() > params.tolerance)
    throw NumericalError("buildFuzzy: raising and lowering blocks are not mutual adjoints (residual " +
                         std::to_string(alg.hermiticityResidual()) + ")");
  return alg;
}

MatC lagrangeProjector(const FuzzyAlgebra& alg, int l) {
  const int N = alg.N(), D = alg.D();
  MatC P = MatC::Identity(N, N);
  for (int n = 0; n <= alg.Lambda(); ++n) {
    if (n == l) continue;
    P = P * (alg.Lsq() - casimirE(D, n) * MatC::Identity(N, N)) / (casimirE(D, l) - casimirE(D, n));
  }
  return P;
}

// ---------------------------------------------------------------------------

namespace {

double hermitianDefect(const MatC& m) { return maxAbs(m - m.adjoint()); }

VecD sortedEigenvalues(const MatC& m) {
  Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

double spectrumMismatch(const VecD& got, std::vector<double> expected) {
  std::sort(expected.begin(), expected.end());
  if (static_cast<int>(expected.size()) != got.size()) return std::numeric_limits<double>::infinity();
  double r = 0;
  for (int i = 0; i < got.size(); ++i) r = std::max(r, std::abs(got[i] - expected[i]));
  return r;
}

std::string tag(const FuzzyAlgebra& alg) {
  std::ostringstream os;
  os << "D=" << alg.D() << " Lambda=" << alg.Lambda() << " k=" << alg.params().k;
  return os.str();
}

}  // namespace

Report verifySnyder(const FuzzyAlgebra& alg) {
  const int D = alg.D(), N = alg.N();
  const ModelParams& p = alg.params();
  const MatC coeff = -MatC::Identity(N, N) / p.k + snyderK(p) * alg.blockProjector(alg.Lambda());
  double r = 0;
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j)
      r = std::max(r, maxAbs(commutator(alg.x(i), alg.x(j)) - coeff * (I_unit * alg.L(i, j))));
  Report rep;
  rep.add(makeCheck("fuzzy.snyder", "[x^i, x^j] = (-1/k + K P_Lambda) i L_ij, " + tag(alg), r, p.tolerance));
  return rep;
}

Report verifyXsq(const FuzzyAlgebra& alg) {
  const int N = alg.N(), D = alg.D(), Lam = alg.Lambda();
  const ModelParams& p = alg.params();
  const double B = coefB(D);
  MatC chi = (1.0 + B / p.k) * MatC::Identity(N, N) + alg.Lsq() / p.k;
  // (Lambda+D-2)/(2 Lambda+D-2) -> 1 at Lambda = 0 (0/0 when D = 2)
  const double ratio = Lam == 0 ? 1.0 : (Lam + D - 2.0) / (2.0 * Lam + D - 2.0);
  chi -= ratio * (1.0 + B / p.k + Lam * (Lam + D - 1.0) / p.k) * alg.blockProjector(Lam);
  Report rep;
  rep.add(makeCheck("fuzzy.xsq", "x^2 = chi(L^2), " + tag(alg), maxAbs(alg.xsq() - chi), p.tolerance));

  std::vector<double> expected;
  for (int l = 0; l <= Lam; ++l)
    for (int a = 0; a < alg.basis().space(l).dim(); ++a) expected.push_back(radiusSquared(p, l));
  rep.add(makeCheck("fuzzy.xsq.spectrum", "eigenvalues of x^2 equal r_l^2 with multiplicity dim V^l, " + tag(alg),
                    spectrumMismatch(sortedEigenvalues(alg.xsq()), expected), p.tolerance));
  if (Lam > 0) {
    const double top = radiusSquared(p, Lam);
    rep.add(makeCheck("fuzzy.xsq.top", "r_Lambda^2 < 1, " + tag(alg), std::max(0.0, top - 1.0), 0.0,
                      "r_Lambda^2 = " + std::to_string(top)));
  }
  return rep;
}

Report verifyAuxRelations(const FuzzyAlgebra& alg) {
  const int D = alg.D(), N = alg.N(), Lam = alg.Lambda();
  const ModelParams& p = alg.params();
  const double tol = p.tolerance;
  Report rep;

  // [iL_ij, x^h] = x^i delta_jh - x^j delta_ih
  double r1 = 0;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      if (i == j) continue;
      for (int h = 0; h < D; ++h) {
        MatC rhs = MatC::Zero(N, N);
        if (j == h) rhs += alg.x(i);
        if (i == h) rhs -= alg.x(j);
        r1 = std::max(r1, maxAbs(commutator(I_unit * alg.L(i, j), alg.x(h)) - rhs));
      }
    }
  rep.add(makeCheck("fuzzy.vector", "[iL_ij, x^h] = x^i d_jh - x^j d_ih, " + tag(alg), r1, tol));

  // so(D) brackets
  double r2 = 0;
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int h = 0; h < D; ++h)
        for (int k = 0; k < D; ++k) {
          if (i == j || h == k) continue;
          MatC lhs = commutator(I_unit * alg.L(i, j), I_unit * alg.L(h, k));
          MatC rhs = I_unit * (alg.L(i, k) * delta(j, h) - alg.L(j, k) * delta(i, h) - alg.L(i, h) * delta(j, k) +
                               alg.L(j, h) * delta(i, k));
          r2 = std::max(r2, maxAbs(lhs - rhs));
        }
  rep.add(makeCheck("fuzzy.sod", "so(D) brackets of iL, " + tag(alg), r2, tol));

  // epsilon x L = 0 reduces to the cyclic sum over each index triple
  if (D >= 3) {
    double r3 = 0;
    for (int a = 0; a < D; ++a)
      for (int b = a + 1; b < D; ++b)
        for (int c = b + 1; c < D; ++c)
          r3 = std::max(r3, maxAbs(alg.x(a) * alg.L(b, c) + alg.x(b) * alg.L(c, a) + alg.x(c) * alg.L(a, b)));
    rep.add(makeCheck("fuzzy.epsilon", "eps x^i1 L_i2i3 = 0, " + tag(alg), r3, tol));
  } else {
    rep.add(skippedCheck("fuzzy.epsilon", "eps x^i1 L_i2i3 = 0", "needs D >= 3"));
  }

  // Nilpotency; residual is ||A^p|| / max(1, ||A||)^p.
  const int pw = 2 * Lam + 1;
  const double nilTol = 1e-8 * std::pow(1.0 + epsilonBound(p), pw);
  auto nilResidual = [&](const MatC& A) {
    MatC P = MatC::Identity(N, N);
    for (int i = 0; i < pw; ++i) P = P * A;
    return maxAbs(P) / std::pow(std::max(1.0, maxAbs(A)), pw);
  };
  double r4 = 0;
  for (int h = 0; h < D; ++h)
    for (int k = 0; k < D; ++k) {
      if (h == k) continue;
      for (double s : {1.0, -1.0}) r4 = std::max(r4, nilResidual(alg.x(h) + s * I_unit * alg.x(k)));
    }
  rep.add(makeCheck("fuzzy.nilpotent.x", "(x^h +- i x^k)^(2 Lambda + 1) = 0, " + tag(alg), r4, nilTol));
  if (D >= 3) {
    double r5 = 0;
    for (int h = 0; h < D; ++h)
      for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k) {
          if (h == j || j == k || k == h) continue;
          r5 = std::max(r5, nilResidual(alg.L(h, j) + I_unit * alg.L(k, j)));
        }
    rep.add(makeCheck("fuzzy.nilpotent.L", "(L_hj + i L_kj)^(2 Lambda + 1) = 0, " + tag(alg), r5, nilTol));
  } else {
    rep.add(skippedCheck("fuzzy.nilpotent.L", "(L_hj + i L_kj)^(2 Lambda + 1) = 0", "needs three distinct indices"));
  }

  // Operator-norm bound on each x^i
  double worst = 0;
  for (int i = 0; i < D; ++i) {
    Eigen::JacobiSVD<MatC> svd(alg.x(i));
    worst = std::max(worst, svd.singularValues().size() ? svd.singularValues()[0] : 0.0);
  }
  const double bound = coordinateNormBound(p);
  rep.add(makeCheck("fuzzy.normbound", "||x^i||_op <= sqrt(1 + (B + (Lambda-1)(Lambda+D-3))/k), " + tag(alg),
                    std::max(0.0, worst - bound), tol,
                    "max ||x^i|| = " + std::to_string(worst) + ", bound = " + std::to_string(bound)));
  return rep;
}

Report verifyStructure(const FuzzyAlgebra& alg) {
  const int D = alg.D(), N = alg.N(), Lam = alg.Lambda();
  const double tol = alg.params().tolerance;
  const TruncatedSpace& B = alg.basis();
  Report rep;

  double herm = alg.hermiticityResidual();
  for (int i = 0; i < D; ++i) herm = std::max(herm, hermitianDefect(alg.x(i)));
  for (int h = 0; h < D; ++h)
    for (int k = h + 1; k < D; ++k) herm = std::max(herm, hermitianDefect(alg.L(h, k)));
  rep.add(makeCheck("fuzzy.hermitian", "x^i and L_hk Hermitian, " + tag(alg), herm, tol));

  double sel = 0;
  for (int a = 0; a <= Lam; ++a)
    for (int b = 0; b <= Lam; ++b) {
      const int ra = B.offset(a), rb = B.offset(b), da = B.space(a).dim(), db = B.space(b).dim();
      for (int i = 0; i < D; ++i)
        if (std::abs(a - b) != 1) sel = std::max(sel, maxAbs(alg.x(i).block(ra, rb, da, db)));
      if (a != b)
        for (int h = 0; h < D; ++h)
          for (int k = h + 1; k < D; ++k) sel = std::max(sel, maxAbs(alg.L(h, k).block(ra, rb, da, db)));
    }
  rep.add(makeCheck("fuzzy.selection", "x couples l to l+-1 only, L block diagonal, " + tag(alg), sel, tol));

  double proj = maxAbs([&] {
    MatC s = MatC::Zero(N, N);
    for (int l = 0; l <= Lam; ++l) s += alg.blockProjector(l);
    return MatC(s - MatC::Identity(N, N));
  }());
  for (int l = 0; l <= Lam; ++l) {
    proj = std::max(proj, maxAbs(alg.blockProjector(l) * alg.blockProjector(l) - alg.blockProjector(l)));
    for (int n = l + 1; n <= Lam; ++n) proj = std::max(proj, maxAbs(alg.blockProjector(l) * alg.blockProjector(n)));
  }
  rep.add(makeCheck("fuzzy.projectors", "P^l idempotent, orthogonal, summing to 1, " + tag(alg), proj, tol));

  double lag = 0;
  for (int l = 0; l <= Lam; ++l) lag = std::max(lag, maxAbs(lagrangeProjector(alg, l) - alg.blockProjector(l)));
  rep.add(makeCheck("fuzzy.projectors.lagrange", "Lagrange polynomial in L^2 equals block projector, " + tag(alg),
                    lag, tol));

  std::vector<double> expected;
  for (int l = 0; l <= Lam; ++l)
    for (long a = 0; a < dimV(D, l); ++a) expected.push_back(casimirE(D, l));
  const double scale = std::max(1.0, casimirE(D, Lam));
  rep.add(makeCheck("fuzzy.casimir.spectrum", "eigenvalues of L^2 are l(l+D-2) with multiplicity dim V^l, " + tag(alg),
                    spectrumMismatch(sortedEigenvalues(alg.Lsq()), expected), tol * scale));
  return rep;
}

MatC inducedUnitary(const FuzzyAlgebra& alg, const MatD& Q) {
  const TruncatedSpace& B = alg.basis();
  MatC U = MatC::Zero(alg.N(), alg.N());
  for (int l = 0; l <= alg.Lambda(); ++l) {
    const HarmonicSpace& s = B.space(l);
    for (int b = 0; b < s.dim(); ++b)
      U.block(B.offset(l), B.offset(l) + b, s.dim(), 1) = s.coordinates(transformTensor(s.basisTensor(b), Q));
  }
  return U;
}

Report verifyEquivariance(const FuzzyAlgebra& alg, const MatD& Q, const std::string& label) {
  const int D = alg.D(), N = alg.N();
  const double tol = alg.params().tolerance;
  MatC U = inducedUnitary(alg, Q);
  Report rep;
  rep.add(makeCheck("fuzzy.equivariance.unitary", "induced map unitary, " + label + ", " + tag(alg),
                    maxAbs(U.adjoint() * U - MatC::Identity(N, N)), tol));
  double rx = 0, rl = 0;
  for (int i = 0; i < D; ++i) {
    MatC rhs = MatC::Zero(N, N);
    for (int j = 0; j < D; ++j) rhs += Q(j, i) * alg.x(j);
    rx = std::max(rx, maxAbs(U * alg.x(i) * U.adjoint() - rhs));
  }
  for (int h = 0; h < D; ++h)
    for (int k = h + 1; k < D; ++k) {
      MatC rhs = MatC::Zero(N, N);
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          if (a != b) rhs += Q(a, h) * Q(b, k) * alg.L(a, b);
      rl = std::max(rl, maxAbs(U * alg.L(h, k) * U.adjoint() - rhs));
    }
  rep.add(makeCheck("fuzzy.equivariance.x", "U x^i U^+ = Q_ji x^j, " + label + ", " + tag(alg), rx, tol));
  rep.add(makeCheck("fuzzy.equivariance.L", "U L_hk U^+ = Q_ah Q_bk L_ab, " + label + ", " + tag(alg), rl, tol));
  return rep;
}

GenerationResult generateAlgebra(const FuzzyAlgebra& alg, int maxLength) {
  const int N = alg.N(), D = alg.D();
  if (maxLength < 0) maxLength = 2 * alg.Lambda() + 2;
  // Words are badly conditioned (commutators are O(1/k)), so a word is kept
  // only if its residual clearly exceeds roundoff. Borderline rejections
  // matter only if the final span falls short of N^2.
  const double accept = 1e-10, borderline = 1e-13;
  GenerationResult res;
  MatC basis(N * N, N * N);  // orthonormal columns, vectorized N x N
  int rank = 0;
  std::vector<MatC> frontier;
  std::vector<double> ambiguous;

  auto tryAdd = [&](const MatC& w) -> bool {
    VecC v = Eigen::Map<const VecC>(w.data(), w.size());
    const double n0 = v.norm();
    if (n0 == 0 || rank == N * N) return false;
    for (int pass = 0; pass < 2; ++pass) {
      const auto Q = basis.leftCols(rank);
      v -= Q * (Q.adjoint() * v);
    }
    const double ratio = v.norm() / n0;
    if (ratio > accept) {
      basis.col(rank++) = v / v.norm();
      res.residuals.push_back(ratio);
      return true;
    }
    if (ratio > borderline) ambiguous.push_back(ratio);
    res.smallestRejected = std::max(res.smallestRejected, ratio);
    return false;
  };

  MatC id = MatC::Identity(N, N);
  tryAdd(id);
  frontier.push_back(id);
  for (int len = 1; len <= maxLength && rank < N * N && !frontier.empty(); ++len) {
    std::vector<MatC> next;
    for (const auto& F : frontier)
      for (int i = 0; i < D; ++i) {
        MatC w = alg.x(i) * F;
        // Keep the exact word: re-multiplying normalized residuals amplifies roundoff.
        if (tryAdd(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
    res.wordLength = len;
  }
  res.dimension = rank;
  if (res.dimension < N * N && !ambiguous.empty()) {
    std::ostringstream os;
    os << "generateAlgebra: span " << res.dimension << " < " << N * N
       << " with borderline rejected residuals:";
    for (double r : ambiguous) os << ' ' << r;
    throw NumericalError(os.str());
  }
  return res;
}

double commutantDimension(const FuzzyAlgebra& alg, double relTol, double* gap) {
  const int N = alg.N(), D = alg.D();
  const int n2 = N * N;
  // vec([x, M]) = (I (x) x - x^T (x) I) vec(M), column-major
  MatC A(D * n2, n2);
  const MatC I = MatC::Identity(N, N);
  for (int i = 0; i < D; ++i) {
    const MatC& x = alg.x(i);
    MatC blk = MatC::Zero(n2, n2);
    for (int c = 0; c < N; ++c)
      for (int d = 0; d < N; ++d) {
        blk.block(c * N, d * N, N, N) += I(c, d) * x;
        blk.block(c * N, d * N, N, N) -= x(d, c) * I;
      }
    A.middleRows(i * n2, n2) = blk;
  }
  Eigen::BDCSVD<MatC> svd(A);
  const VecD sv = svd.singularValues();
  const double top = sv.size() ? sv[0] : 0.0;
  int null = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] <= relTol * top) ++null;
  if (gap) *gap = null < sv.size() ? sv[sv.size() - null - 1] / std::max(top, 1e-300) : 0.0;
  return null;
}

}  // namespace fsph
