#include "fsph/liftso.hpp"

#include <array>
#include <cmath>

namespace fsph {

namespace {

std::string tag(int D, int Lambda) { return "D=" + std::to_string(D) + " Lambda=" + std::to_string(Lambda); }

// Sym(embed(phi) x e_D^{Lambda-l}), projected onto V^Lambda over R^{D+1}.
SymTensor liftTensor(const SymTensor& phi, int Lambda) {
  const int D = phi.dim();
  SymTensor t = embedTensor(phi, D + 1);
  for (int j = phi.rank(); j < Lambda; ++j) t = symmetrizedProductWithBasis(t, D);
  return projectTraceFree(t);
}

}  // namespace

LiftedIrrep::LiftedIrrep(int D, int Lambda) : D_(D), Lambda_(Lambda) {
  if (D < 2 || Lambda < 0) throw ConfigError("LiftedIrrep: need D >= 2, Lambda >= 0");
  if (D + 1 > 16) throw ConfigError("LiftedIrrep: D + 1 > 16 is outside the index encoding");
  space_ = std::make_shared<HarmonicSpace>(projectorOracle(D + 1, Lambda), Lambda);
  branches_ = std::make_shared<TruncatedSpace>(D, Lambda);

  const int bD = D + 1, n = N();
  L_.assign(bD * bD, MatC::Zero(n, n));
  for (int I = 0; I < bD; ++I)
    for (int J = I + 1; J < bD; ++J) {
      L_[I * bD + J] = actionL(*space_, I, J);
      L_[J * bD + I] = -L_[I * bD + J];
    }

  for (int l = 0; l <= Lambda; ++l) {
    const HarmonicSpace& s = branches_->space(l);
    MatC F(n, s.dim());
    for (int b = 0; b < s.dim(); ++b) F.col(b) = branchVector(s.basisTensor(b));
    MatC G = F.adjoint() * F;
    const double nu = G.diagonal().real().mean();
    blockResidual_ = std::max(blockResidual_, maxAbs(G / nu - MatC::Identity(s.dim(), s.dim())));
    for (int j = 0; j < l; ++j)
      blockResidual_ = std::max(blockResidual_, maxAbs(F_[j].adjoint() * F) / std::sqrt(nu * nu_[j]));
    F_.push_back(std::move(F));
    nu_.push_back(nu);
  }
}

VecC LiftedIrrep::branchVector(const SymTensor& phi) const {
  if (phi.dim() != D_ || phi.rank() > Lambda_) throw ArgumentError("branchVector: tensor shape outside V^Lambda");
  return space_->coordinates(liftTensor(phi, Lambda_));
}

MatC LiftedIrrep::casimir() const {
  MatC C = MatC::Zero(N(), N());
  for (int I = 0; I < bigD(); ++I)
    for (int J = I + 1; J < bigD(); ++J) C += L(I, J) * L(I, J);
  return C;
}

MatC LiftedIrrep::subCasimir() const {
  MatC C = MatC::Zero(N(), N());
  for (int h = 0; h < D_; ++h)
    for (int k = h + 1; k < D_; ++k) C += L(h, k) * L(h, k);
  return C;
}

LiftedIrrep buildLifted(int D, int Lambda) { return LiftedIrrep(D, Lambda); }

// ---------------------------------------------------------------------------

double bCoefficient(int D, int Lambda, int l, int kappa) {
  if (l < 0 || l > Lambda || kappa < 0 || 2 * kappa > Lambda - l) throw ArgumentError("bCoefficient: index out of range");
  const int bD = D + 1;
  const double sign = (kappa % 2) ? -1.0 : 1.0;
  return sign * factorial(Lambda - l) * doubleFactorial(2 * Lambda - 4 - 2 * kappa + bD) /
         (factorial(Lambda - l - 2 * kappa) * doubleFactorial(2 * kappa) * doubleFactorial(2 * Lambda - 4 + bD));
}

double muMap(const ModelParams& p, int l) {
  if (l < 0 || l >= p.Lambda)
    throw ArgumentError("muMap: need 0 <= l < Lambda, got l = " + std::to_string(l));
  return coefC(p, l + 1) / std::sqrt((p.Lambda - l) * (p.Lambda + l + p.D - 1.0));
}

cplx logGamma(cplx z) {
  static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  // Shift right so the series is accurate; Gamma(z) = Gamma(z + 1) / z.
  cplx shift = 0;
  while (z.real() < 1.5) {
    shift -= std::log(z);
    z += 1.0;
  }
  z -= 1.0;
  cplx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return shift + 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double mMap(const ModelParams& p, int s) {
  if (s < 0 || s > p.Lambda) throw ArgumentError("mMap: need 0 <= l <= Lambda, got l = " + std::to_string(s));
  const double L = p.Lambda, D = p.D, d = D - 1.0;
  const cplx iA = I_unit * std::sqrt(cplx(aSquared(p.D, p.k)));
  auto lg = [](cplx z) { return logGamma(z); };
  // log of Gamma(z + iA) Gamma(z - iA); real for real z.
  auto pair = [&](double z) { return lg(0.5 * (z + iA)) + lg(0.5 * (z - iA)); };
  cplx logm2 = lg((L + s + d) / 2) + lg((L - s + 1) / 2) + pair(s + 1 + d / 2) - lg((L + s + D) / 2) -
               lg((L - s) / 2 + 1) - pair(s + d / 2) - 0.5 * std::log(p.k);
  // An odd multiple of i pi would mean a negative square.
  const double phase = std::remainder(logm2.imag(), 2 * M_PI);
  if (std::abs(phase) > 1e-8) throw NumericalError("mMap: Gamma ratio is not positive");
  return std::exp(0.5 * logm2.real());
}

BranchingData branchingCoefficients(const ModelParams& p) {
  BranchingData br;
  br.D = p.D;
  br.Lambda = p.Lambda;
  br.k = p.k;
  const int L = p.Lambda, bD = p.D + 1;
  for (int l = 0; l <= L; ++l) {
    std::vector<double> b{1.0};
    for (int kap = 0; 2 * (kap + 1) <= L - l; ++kap) {
      const double h = L - l - 2 * kap;
      b.push_back(-b.back() * h * (h - 1) / ((2.0 * kap + 2) * (2.0 * L - 4 - 2 * kap + bD)));
    }
    std::vector<double> poly(L - l + 1, 0.0);
    for (int kap = 0; kap < static_cast<int>(b.size()); ++kap) poly[L - l - 2 * kap] = b[kap];
    br.b.push_back(std::move(b));
    br.p.push_back(std::move(poly));
  }
  br.a.push_back(1.0);
  for (int l = 0; l < L; ++l)
    br.a.push_back(I_unit * br.a.back() * std::sqrt((L - l) / (L + l + p.D - 1.0)));
  for (int l = 0; l < L; ++l) br.mu.push_back(muMap(p, l));
  for (int l = 0; l <= L; ++l) br.m.push_back(mMap(p, l));
  return br;
}

// ---------------------------------------------------------------------------

MatC isomorphismUnitary(const LiftedIrrep& lifted, const BranchingData& br) {
  const TruncatedSpace& B = lifted.branches();
  MatC U(lifted.N(), B.N());
  const double scale = 1.0 / std::sqrt(lifted.nu(0));
  for (int l = 0; l <= lifted.Lambda(); ++l)
    U.middleCols(B.offset(l), B.space(l).dim()) = br.a.at(l) * scale * lifted.F(l);
  return U;
}

namespace {

// Scale block (l', l) of Y by w(l', l).
template <class W>
MatC scaleBlocks(const TruncatedSpace& B, const MatC& Y, W w) {
  MatC out = Y;
  for (int r = 0; r <= B.Lambda(); ++r)
    for (int c = 0; c <= B.Lambda(); ++c)
      out.block(B.offset(r), B.offset(c), B.space(r).dim(), B.space(c).dim()) *= w(r, c);
  return out;
}

}  // namespace

Report verifyIsomorphism(const FuzzyAlgebra& alg, const LiftedIrrep& lifted, const BranchingData& br) {
  const int D = alg.D(), N = alg.N();
  if (lifted.D() != D || lifted.Lambda() != alg.Lambda() || br.Lambda != alg.Lambda() || br.k != alg.params().k)
    throw ArgumentError("verifyIsomorphism: parameters of the three inputs differ");
  const std::string t = tag(D, alg.Lambda());
  Report rep;
  if (lifted.N() != N)
    throw NumericalError("verifyIsomorphism: dim V^Lambda = " + std::to_string(lifted.N()) + " but N = " +
                         std::to_string(N));
  MatC U = isomorphismUnitary(lifted, br);
  const double unitary = maxAbs(U.adjoint() * U - MatC::Identity(N, N));
  if (!(unitary <= 1e-8))
    throw NumericalError("verifyIsomorphism: U not unitary (residual " + std::to_string(unitary) + ")");
  rep.add(makeCheck("lift.unitary", "U^+ U = 1, " + t, unitary, 1e-10));

  const TruncatedSpace& B = lifted.branches();
  auto muSandwich = [&](int r, int c) {
    if (std::abs(r - c) != 1) return 1.0;
    return br.mu.at(std::min(r, c));
  };
  auto gammaSandwich = [&](int r, int c) { return br.m.at(r) * br.m.at(c); };
  double rx = 0, rg = 0, rl = 0;
  for (int i = 0; i < D; ++i) {
    MatC lhs = U * alg.x(i) * U.adjoint();
    MatC Y = U.adjoint() * lifted.X(i) * U;
    rx = std::max(rx, maxAbs(lhs - U * scaleBlocks(B, Y, muSandwich) * U.adjoint()));
    rg = std::max(rg, maxAbs(lhs - U * scaleBlocks(B, Y, gammaSandwich) * U.adjoint()));
  }
  for (int h = 0; h < D; ++h)
    for (int k = h + 1; k < D; ++k) rl = std::max(rl, maxAbs(U * alg.L(h, k) * U.adjoint() - lifted.L(h, k)));
  rep.add(makeCheck("lift.x", "U x^i U^+ = m(lambda) X^i m(lambda), blockwise mu, " + t, rx, 1e-9));
  rep.add(makeCheck("lift.x.gamma", "U x^i U^+ = m(lambda) X^i m(lambda), Gamma-form m, " + t, rg, 1e-9));
  rep.add(makeCheck("lift.L", "U L_hk U^+ = L_hk, " + t, rl, 1e-10));
  return rep;
}

Report verifyLiftedLAction(const LiftedIrrep& lifted) {
  const int D = lifted.D(), L = lifted.Lambda();
  const TruncatedSpace& B = lifted.branches();
  const ProjectorOracle& oracle = *B.oraclePtr();
  double res = 0, scale = 0;
  for (int l = 0; l <= L; ++l) {
    const HarmonicSpace& s = B.space(l);
    scale = std::max(scale, maxAbs(lifted.F(l)));
    for (int b = 0; b < s.dim(); ++b) {
      const SymTensor phi = s.basisTensor(b);
      for (int h = 0; h < D; ++h) {
        VecC lhs = I_unit * (lifted.L(h, D) * lifted.F(l).col(b));
        VecC rhs = VecC::Zero(lifted.N());
        if (l < L) rhs += double(L - l) * lifted.branchVector(raiseT(oracle, phi, h));
        if (l > 0) rhs -= (L + l + D - 2.0) * lifted.branchVector(lowerT(phi, h));
        res = std::max(res, maxAbs(lhs - rhs));
      }
    }
  }
  Report rep;
  rep.add(makeCheck("lift.Laction", "iL_{hD} F = (Lambda-l) F^{h..} - l(Lambda+l+D-2)/(D+2l-2) P F, " + tag(D, L),
                    res / std::max(1.0, scale), 1e-10));
  return rep;
}

Report verifyLiftedStructure(const LiftedIrrep& lifted) {
  const int D = lifted.D(), L = lifted.Lambda(), n = lifted.N(), bD = lifted.bigD();
  const std::string t = tag(D, L);
  Report rep;
  rep.add(makeCheck("lift.dim", "dim V^Lambda_{D+1} = dimTruncated(D, Lambda), " + t,
                    std::abs(double(n) - double(dimTruncated(D, L))), 0.0));
  double herm = 0;
  for (int I = 0; I < bD; ++I)
    for (int J = I + 1; J < bD; ++J) herm = std::max(herm, maxAbs(lifted.L(I, J) - lifted.L(I, J).adjoint()));
  rep.add(makeCheck("lift.hermitian", "L_IJ Hermitian, " + t, herm, 1e-12));
  rep.add(makeCheck("lift.casimir", "sum L_IJ^2 = Lambda(Lambda+D-1), " + t,
                    maxAbs(lifted.casimir() - casimirE(bD, L) * MatC::Identity(n, n)) / std::max(1.0, casimirE(bD, L)),
                    1e-10));
  // The sub-Casimir acts on each branching block by E_l.
  MatC S = lifted.subCasimir();
  double sub = 0;
  for (int l = 0; l <= L; ++l) {
    const MatC& F = lifted.F(l);
    sub = std::max(sub, maxAbs(S * F - casimirE(D, l) * F) / std::max(1.0, maxAbs(F)));
  }
  rep.add(makeCheck("lift.branching", "L^2 F_l = E_l F_l on every block, " + t, sub, 1e-10));
  rep.add(makeCheck("lift.blocks", "F blocks orthogonal with F^+ F = nu_l 1, " + t, lifted.blockResidual(), 1e-10));
  return rep;
}

Report verifyBranching(const ModelParams& p, const BranchingData& br) {
  const int L = p.Lambda, D = p.D;
  const std::string t = tag(D, L) + " k=" + std::to_string(p.k);
  double bres = 0, mres = 0, cres = 0, ares = 0;
  for (int l = 0; l <= L; ++l)
    for (int kap = 0; kap < static_cast<int>(br.b[l].size()); ++kap) {
      const double ref = bCoefficient(D, L, l, kap);
      bres = std::max(bres, std::abs(br.b[l][kap] - ref) / std::max(1.0, std::abs(ref)));
    }
  for (int l = 0; l < L; ++l) {
    mres = std::max(mres, std::abs(br.m[l] * br.m[l + 1] - br.mu[l]) / br.mu[l]);
    const double c = coefC(p, l + 1);
    cres = std::max(cres, std::abs(br.mu[l] * br.mu[l] * (L - l) * (L + l + D - 1.0) - c * c) / (c * c));
    const double want = std::sqrt((L - l) / (L + l + D - 1.0));
    ares = std::max(ares, std::abs(std::abs(br.a[l + 1] / br.a[l]) - want));
  }
  Report rep;
  rep.add(makeCheck("lift.b", "b recursion = closed form, " + t, bres, 1e-12));
  rep.add(makeCheck("lift.m", "m(l) m(l+1) = mu(l), " + t, mres, 1e-10));
  rep.add(makeCheck("lift.mu", "|mu(l)|^2 (Lambda-l)(Lambda+l+D-1) = c_{l+1}^2, " + t, cres, 1e-12));
  rep.add(makeCheck("lift.a", "|a_{l+1}/a_l| = sqrt((Lambda-l)/(Lambda+l+D-1)), " + t, ares, 1e-14));
  return rep;
}

MatC rotationUnitary(const LiftedIrrep& lifted, const MatD& R) {
  const HarmonicSpace& s = lifted.space();
  if (R.rows() != lifted.bigD() || R.cols() != lifted.bigD()) throw ArgumentError("rotationUnitary: wrong matrix size");
  MatC U(s.dim(), s.dim());
  for (int b = 0; b < s.dim(); ++b) U.col(b) = s.coordinates(transformTensor(s.basisTensor(b), R));
  return U;
}

Report verifyParityRotation(const FuzzyAlgebra& alg, const LiftedIrrep& lifted, const BranchingData& br,
                            const MatD& g, const std::string& label) {
  const int D = lifted.D(), n = lifted.N();
  if (g.rows() != D || g.cols() != D) throw ArgumentError("verifyParityRotation: g must be D x D");
  if (maxAbs(g.transpose() * g - MatD::Identity(D, D)) > 1e-12) throw ArgumentError("verifyParityRotation: g not orthogonal");
  const double det = g.determinant() > 0 ? 1.0 : -1.0;
  MatD R = MatD::Zero(D + 1, D + 1);
  R.topLeftCorner(D, D) = g;
  R(D, D) = det;
  MatC P = rotationUnitary(lifted, R);
  const std::string t = label + ", " + tag(D, lifted.Lambda());

  double rx = 0, rl = 0, rfx = 0;
  MatC U = isomorphismUnitary(lifted, br);
  MatC Pf = U.adjoint() * P * U;  // the same rotation acting on H_Lambda
  for (int i = 0; i < D; ++i) {
    MatC want = MatC::Zero(n, n), wantF = MatC::Zero(n, n);
    for (int j = 0; j < D; ++j) {
      want += det * g(j, i) * lifted.X(j);
      wantF += det * g(j, i) * alg.x(j);
    }
    rx = std::max(rx, maxAbs(P * lifted.X(i) * P.adjoint() - want));
    rfx = std::max(rfx, maxAbs(Pf * alg.x(i) * Pf.adjoint() - wantF));
  }
  for (int h = 0; h < D; ++h)
    for (int k = h + 1; k < D; ++k) {
      MatC want = MatC::Zero(n, n);
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          if (a != b) want += g(a, h) * g(b, k) * lifted.L(a, b);
      rl = std::max(rl, maxAbs(P * lifted.L(h, k) * P.adjoint() - want));
    }
  Report rep;
  rep.add(makeCheck("lift.rotation.unitary", "pi(diag(g, det g)) unitary, " + t,
                    maxAbs(P.adjoint() * P - MatC::Identity(n, n)), 1e-10));
  rep.add(makeCheck("lift.rotation.X", "X -> det(g) g X, " + t, rx, 1e-10));
  rep.add(makeCheck("lift.rotation.L", "L_hk covariant, " + t, rl, 1e-10));
  rep.add(makeCheck("lift.rotation.x", "x -> det(g) g x through U, " + t, rfx, 1e-9));
  return rep;
}

}  // namespace fsph
