#include "fsph/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace fsph {

long dimV(int D, int l) {
  if (D < 1 || l < 0) throw ArgumentError("dimV: need D >= 1, l >= 0");
  return binomialInt(D + l - 1, l) - (l >= 2 ? binomialInt(D + l - 3, l - 2) : 0);
}

long dimTruncated(int D, int Lambda) {
  long n = 0;
  for (int l = 0; l <= Lambda; ++l) n += dimV(D, l);
  return n;
}

double Ql(int D, int l) {
  return sphereMeasure(D) * factorial(l) * doubleFactorial(D - 2) / doubleFactorial(D + 2 * l - 2);
}

PivotedCholesky pivotedCholesky(const MatD& G, double relTol) {
  const int n = static_cast<int>(G.rows());
  PivotedCholesky out;
  if (n == 0) return out;
  VecD d = G.diagonal();
  out.maxDiagonal = d.maxCoeff();
  const double stop = relTol * out.maxDiagonal;
  std::vector<char> used(n, 0);
  MatD L = MatD::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (p < 0 || d[i] > d[p] + 1e-12 * out.maxDiagonal) p = i;
    }
    if (p < 0 || d[p] <= stop) break;
    used[p] = 1;
    out.pivots.push_back(p);
    const double piv = std::sqrt(d[p]);
    for (int i = 0; i < n; ++i) {
      double v = G(i, p);
      for (int j = 0; j < k; ++j) v -= L(i, j) * L(p, j);
      L(i, k) = used[i] && i != p ? 0.0 : v / piv;
    }
    for (int i = 0; i < n; ++i)
      if (!used[i]) d[i] -= L(i, k) * L(i, k);
  }
  for (int i = 0; i < n; ++i)
    if (!used[i] && d[i] < -1e-8 * out.maxDiagonal)
      throw NumericalError("pivotedCholesky: Gram matrix is not positive semidefinite");
  const int r = static_cast<int>(out.pivots.size());
  out.factor.resize(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) out.factor(a, b) = L(out.pivots[a], b);
  return out;
}

// ---------------------------------------------------------------------------

HarmonicSpace::HarmonicSpace(std::shared_ptr<const ProjectorOracle> oracle, int l)
    : oracle_(std::move(oracle)), D_(oracle_->dim()), l_(l) {
  if (l < 0 || l > oracle_->maxRank()) throw ConfigError("HarmonicSpace: rank outside oracle range");
  const IndexSpace& S = oracle_->space(l);
  const int s = S.size();
  const MatD& K = oracle_->matrix(l);
  const double q = Ql(D_, l);
  generators_.resize(s, s);
  weights_.resize(s);
  for (int a = 0; a < s; ++a) {
    generators_.col(a) = K.col(a) / S.multiplicity(a);
    weights_[a] = q * S.multiplicity(a);
  }
  // gram[a][b] = <T^a, T^b> = Q_l P^a_b
  gram_ = q * generators_;
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();

  PivotedCholesky pc = pivotedCholesky(gram_, 1e-9);
  pivots_ = pc.pivots;
  dim_ = static_cast<int>(pivots_.size());
  MatD inv = pc.factor.transpose().triangularView<Eigen::Upper>().solve(MatD::Identity(dim_, dim_));
  orthoBasis_ = MatD::Zero(s, dim_);
  for (int a = 0; a < dim_; ++a) orthoBasis_.row(pivots_[a]) = inv.row(a);
  basisTensors_ = generators_ * orthoBasis_;
}

cplx HarmonicSpace::inner(const SymTensor& a, const SymTensor& b) const {
  return (a.coeffs().conjugate().array() * weights_.array().cast<cplx>() * b.coeffs().array()).sum();
}

double HarmonicSpace::norm(const SymTensor& a) const { return std::sqrt(std::max(0.0, inner(a, a).real())); }

VecC HarmonicSpace::coordinates(const SymTensor& phi) const {
  if (phi.dim() != D_ || phi.rank() != l_) throw ArgumentError("HarmonicSpace::coordinates: shape mismatch");
  return basisTensors_.transpose().cast<cplx>() * (weights_.cast<cplx>().asDiagonal() * phi.coeffs());
}

SymTensor HarmonicSpace::tensor(const VecC& coords) const {
  return SymTensor(oracle_->spacePtr(l_), basisTensors_.cast<cplx>() * coords);
}

SymTensor HarmonicSpace::basisTensor(int b) const {
  return SymTensor(oracle_->spacePtr(l_), basisTensors_.col(b).cast<cplx>());
}

std::vector<SymTensor> buildT(int D, int l) {
  auto oracle = projectorOracle(D, l);
  std::vector<SymTensor> out;
  for (int a = 0; a < oracle->space(l).size(); ++a) out.push_back(oracle->generator(l, a));
  return out;
}

MatD gramQl(int D, int l) {
  HarmonicSpace s(projectorOracle(D, l), l);
  return s.gram();
}

SymTensor applyIL(const SymTensor& phi, int h, int k) {
  const int D = phi.dim();
  if (h == k || h < 0 || k < 0 || h >= D || k >= D) throw ArgumentError("applyIL: need distinct h, k in range");
  SymTensor out(D, phi.rank());
  const IndexSpace& S = phi.indices();
  for (int a = 0; a < S.size(); ++a) {
    const IndexKey key = S.key(a);
    cplx v = 0;
    if (int nh = countIn(key, h); nh > 0) v += static_cast<double>(nh) * phi.coeffs()[S.position(key - keyUnit(h) + keyUnit(k))];
    if (int nk = countIn(key, k); nk > 0) v -= static_cast<double>(nk) * phi.coeffs()[S.position(key - keyUnit(k) + keyUnit(h))];
    out.coeffs()[a] = v;
  }
  return out;
}

MatC actionL(const HarmonicSpace& space, int h, int k) {
  MatC M(space.dim(), space.dim());
  for (int b = 0; b < space.dim(); ++b) M.col(b) = space.coordinates(applyIL(space.basisTensor(b), h, k));
  return -I_unit * M;
}

SymTensor raiseT(const ProjectorOracle& oracle, const SymTensor& phi, int h) {
  return oracle.apply(symmetrizedProductWithBasis(phi, h));
}

SymTensor lowerT(const SymTensor& phi, int h) {
  if (phi.rank() == 0) throw ArgumentError("lowerT: no lowering from l = 0");
  SymTensor s = sliceFirst(phi, h);
  s.coeffs() *= coefD(phi.dim(), phi.rank());
  return s;
}

double contractionCoefficient(int D, int l) {
  if (l < 1) throw ArgumentError("contractionCoefficient: need l >= 1");
  if (l == 1) return 1.0;
  return (D + l - 1.0 - (2.0 * l - 2.0) / (D + 2.0 * l - 4.0)) / (D + 2.0 * l - 2.0);
}

BlockMaps actionT(const HarmonicSpace& space, const HarmonicSpace* up, const HarmonicSpace* down, int h) {
  BlockMaps out;
  if (up) out.raise.resize(up->dim(), space.dim());
  if (down && space.l() > 0) out.lower.resize(down->dim(), space.dim());
  for (int b = 0; b < space.dim(); ++b) {
    SymTensor phi = space.basisTensor(b);
    if (up) out.raise.col(b) = up->coordinates(raiseT(up->oracle(), phi, h));
    if (down && space.l() > 0) out.lower.col(b) = down->coordinates(lowerT(phi, h));
  }
  return out;
}

// ---------------------------------------------------------------------------

TruncatedSpace::TruncatedSpace(int D, int Lambda) : D_(D), Lambda_(Lambda), N_(0) {
  if (D < 2 || Lambda < 0) throw ConfigError("TruncatedSpace: need D >= 2, Lambda >= 0");
  oracle_ = projectorOracle(D, Lambda + 1);
  for (int l = 0; l <= Lambda; ++l) {
    spaces_.emplace_back(oracle_, l);
    offsets_.push_back(N_);
    N_ += spaces_.back().dim();
  }
}

int TruncatedSpace::blockOf(int row) const {
  int l = 0;
  while (l < Lambda_ && row >= offsets_[l + 1]) ++l;
  return l;
}

VecC TruncatedSpace::coordinates(const std::vector<SymTensor>& parts) const {
  VecC v = VecC::Zero(N_);
  for (int l = 0; l <= Lambda_ && l < static_cast<int>(parts.size()); ++l)
    v.segment(offsets_[l], spaces_[l].dim()) = spaces_[l].coordinates(parts[l]);
  return v;
}

std::vector<SymTensor> TruncatedSpace::tensors(const VecC& coords) const {
  std::vector<SymTensor> out;
  for (int l = 0; l <= Lambda_; ++l) out.push_back(spaces_[l].tensor(coords.segment(offsets_[l], spaces_[l].dim())));
  return out;
}

std::vector<SymTensor> decomposePolynomial(const Polynomial& p, int Lambda) {
  const int D = p.dim();
  const int deg = p.degree();
  if (deg > Lambda) throw ArgumentError("decomposePolynomial: degree exceeds the truncation");
  std::vector<SymTensor> parts;
  for (int l = 0; l <= Lambda; ++l) parts.emplace_back(D, l);
  if (deg < 0) return parts;
  auto oracle = projectorOracle(D, deg);
  Polynomial rem = p;
  for (int g = deg; g >= 0; --g) {
    Polynomial top = rem.homogeneousPart(g);
    SymTensor phi = oracle->apply(top.homogeneousTensor(g));
    Polynomial quotient = (top - Polynomial::fromTensor(phi)).divideByRadiusSquared();
    rem -= top;
    rem += quotient;  // r^2 = 1 on the sphere
    parts[g] = phi;
  }
  return parts;
}

Polynomial composePolynomial(const std::vector<SymTensor>& parts, int D) {
  Polynomial p(D);
  for (const auto& t : parts) p += Polynomial::fromTensor(t);
  return p;
}

double normSquared(const std::vector<SymTensor>& parts) {
  double s = 0;
  for (const auto& t : parts) s += Ql(t.dim(), t.rank()) * flatInner(t, t).real();
  return s;
}

}  // namespace fsph
