#pragma once

#include "fsph/core.hpp"
#include "fsph/polynomial.hpp"
#include "fsph/symtensor.hpp"

#include <memory>
#include <vector>

namespace fsph {

// Dimension of the space of degree-l harmonic polynomials on R^D.
long dimV(int D, int l);
// sum_{l <= Lambda} dimV(D, l).
long dimTruncated(int D, int Lambda);
// <T_l^I, T_n^J> = delta_{ln} Q_l P^l{}^I_J.
double Ql(int D, int l);
// l(l+D-2)
inline double casimirE(int D, int l) { return static_cast<double>(l) * (l + D - 2); }

struct PivotedCholesky {
  std::vector<int> pivots;  // chosen rows, in elimination order
  MatD factor;              // lower-triangular factor on the pivot rows (rank x rank)
  double maxDiagonal = 0;
};
// Symmetric pivoting, ties broken by the lowest index, stop once every
// remaining diagonal is below relTol * max initial diagonal.
PivotedCholesky pivotedCholesky(const MatD& G, double relTol);

// V_D^l realized on trace-free symmetric coefficient tensors phi, with the
// sphere inner product <phi, psi> = Q_l sum_{full i} conj(phi_i) psi_i.
class HarmonicSpace {
 public:
  HarmonicSpace(std::shared_ptr<const ProjectorOracle> oracle, int l);

  int D() const { return D_; }
  int l() const { return l_; }
  int dim() const { return dim_; }
  const IndexSpace& indices() const { return oracle_->space(l_); }
  const ProjectorOracle& oracle() const { return *oracle_; }
  std::shared_ptr<const ProjectorOracle> oraclePtr() const { return oracle_; }

  // Column alpha: coefficient tensor of the generator T_l^{alpha}.
  const MatD& generators() const { return generators_; }
  const MatD& gram() const { return gram_; }
  const std::vector<int>& pivots() const { return pivots_; }
  // Orthonormal basis in generator coordinates (sorted indices x dim).
  const MatD& orthoBasis() const { return orthoBasis_; }
  // Orthonormal basis as coefficient tensors (sorted indices x dim).
  const MatD& basisTensors() const { return basisTensors_; }
  const VecD& weights() const { return weights_; }

  cplx inner(const SymTensor& a, const SymTensor& b) const;
  double norm(const SymTensor& a) const;
  VecC coordinates(const SymTensor& phi) const;
  SymTensor tensor(const VecC& coords) const;
  SymTensor basisTensor(int b) const;

 private:
  std::shared_ptr<const ProjectorOracle> oracle_;
  int D_, l_, dim_;
  MatD generators_, gram_, orthoBasis_, basisTensors_;
  VecD weights_;
  std::vector<int> pivots_;
};

std::vector<SymTensor> buildT(int D, int l);
MatD gramQl(int D, int l);

// iL_{hk} = x^h d_k - x^k d_h on a coefficient tensor (h, k 0-based).
SymTensor applyIL(const SymTensor& phi, int h, int k);
// Matrix of L_{hk} = -i (iL_{hk}) in the orthonormal basis.
MatC actionL(const HarmonicSpace& space, int h, int k);

// t^h phi = raise + lower with raise = P^{l+1} Sym(e_h x phi) in V^{l+1} and
// lower = d_l phi(h, .) in V^{l-1}, d_l = l/(D+2l-2).
SymTensor raiseT(const ProjectorOracle& oracle, const SymTensor& phi, int h);
SymTensor lowerT(const SymTensor& phi, int h);
inline double coefD(int D, int l) { return static_cast<double>(l) / (D + 2.0 * l - 2.0); }
// Coefficient of T_{l-1} in sum_i t^i T_l^{i ...}.
double contractionCoefficient(int D, int l);

struct BlockMaps {
  MatC raise;  // dim(l+1) x dim(l), empty if up == nullptr
  MatC lower;  // dim(l-1) x dim(l), empty if down == nullptr
};
BlockMaps actionT(const HarmonicSpace& space, const HarmonicSpace* up, const HarmonicSpace* down, int h);

// Direct sum of V_D^l for l = 0..Lambda.
class TruncatedSpace {
 public:
  TruncatedSpace(int D, int Lambda);
  int D() const { return D_; }
  int Lambda() const { return Lambda_; }
  int N() const { return N_; }
  const HarmonicSpace& space(int l) const { return spaces_.at(l); }
  int offset(int l) const { return offsets_.at(l); }
  int blockOf(int row) const;
  // Coordinates of a truncated element given per-degree coefficient tensors.
  VecC coordinates(const std::vector<SymTensor>& parts) const;
  std::vector<SymTensor> tensors(const VecC& coords) const;
  std::shared_ptr<const ProjectorOracle> oraclePtr() const { return oracle_; }

 private:
  int D_, Lambda_, N_;
  std::shared_ptr<const ProjectorOracle> oracle_;
  std::vector<HarmonicSpace> spaces_;
  std::vector<int> offsets_;
};

// Trace-free components phi^l (l = 0..Lambda) with sum_l phi^l . t = p on S^{D-1}.
std::vector<SymTensor> decomposePolynomial(const Polynomial& p, int Lambda);
Polynomial composePolynomial(const std::vector<SymTensor>& parts, int D);
// Sphere norm squared of sum_l phi^l . t using the Q_l Gram data.
double normSquared(const std::vector<SymTensor>& parts);

}  // namespace fsph
