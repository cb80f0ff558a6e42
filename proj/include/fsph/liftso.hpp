#pragma once

#include "fsph/fuzzy.hpp"

#include <memory>
#include <vector>

namespace fsph {

// The so(D+1) irrep V^Lambda on trace-free rank-Lambda tensors over R^{D+1},
// together with its so(D) branching blocks. Index D (0-based) is the extra
// axis; X^i = L_{D i}.
class LiftedIrrep {
 public:
  LiftedIrrep(int D, int Lambda);

  int D() const { return D_; }
  int bigD() const { return D_ + 1; }
  int Lambda() const { return Lambda_; }
  int N() const { return space_->dim(); }
  const HarmonicSpace& space() const { return *space_; }
  const TruncatedSpace& branches() const { return *branches_; }

  const MatC& L(int I, int J) const { return L_.at(I * bigD() + J); }
  const MatC& X(int i) const { return L(D_, i); }
  MatC casimir() const;     // sum_{I<J} L_IJ^2
  MatC subCasimir() const;  // sum_{h<k<D} L_hk^2

  // Coordinates (in space()) of F(phi) for phi a trace-free rank-l tensor over R^D.
  VecC branchVector(const SymTensor& phi) const;
  // Column b = branchVector of the b-th orthonormal tensor of branches().space(l).
  const MatC& F(int l) const { return F_.at(l); }
  // F(l)^+ F(l) = nu(l) 1.
  double nu(int l) const { return nu_.at(l); }
  // max_l ||F(l)^+ F(l) / nu(l) - 1|| and the largest cross-block overlap.
  double blockResidual() const { return blockResidual_; }

 private:
  int D_, Lambda_;
  std::shared_ptr<const HarmonicSpace> space_;
  std::shared_ptr<const TruncatedSpace> branches_;
  std::vector<MatC> L_, F_;
  std::vector<double> nu_;
  double blockResidual_ = 0;
};

LiftedIrrep buildLifted(int D, int Lambda);

struct BranchingData {
  int D = 0, Lambda = 0;
  double k = 0;
  // b[l][kappa], kappa = 0..(Lambda-l)/2, b[l][0] = 1.
  std::vector<std::vector<double>> b;
  // p[l][j]: coefficient of (t^D)^j in p_{Lambda,l}.
  std::vector<std::vector<double>> p;
  std::vector<cplx> a;
  std::vector<double> mu;  // l = 0..Lambda-1
  std::vector<double> m;   // l = 0..Lambda
};

// b_{Lambda,l+2kappa} from the closed double-factorial form.
double bCoefficient(int D, int Lambda, int l, int kappa);
BranchingData branchingCoefficients(const ModelParams& p);

// A^2 = k + 3(D-1)(D-3)/4
inline double aSquared(int D, double k) { return k + 3.0 * (D - 1) * (D - 3) / 4.0; }
// c_{l+1} / sqrt((Lambda-l)(Lambda+l+D-1)), 0 <= l < Lambda.
double muMap(const ModelParams& p, int l);
// Gamma-function form, 0 <= l <= Lambda.
double mMap(const ModelParams& p, int l);
// log Gamma on the right half plane (Lanczos, g = 7).
cplx logGamma(cplx z);

// Unitary H_Lambda -> V^Lambda sending the b-th basis vector of block l to
// a_l F(l) e_b / sqrt(nu(0)). Not forced unitary: a and nu must conspire.
MatC isomorphismUnitary(const LiftedIrrep& lifted, const BranchingData& br);

Report verifyIsomorphism(const FuzzyAlgebra& alg, const LiftedIrrep& lifted, const BranchingData& br);
Report verifyLiftedLAction(const LiftedIrrep& lifted);
// Casimir, sub-Casimir spectrum, Hermiticity, block orthogonality.
Report verifyLiftedStructure(const LiftedIrrep& lifted);
// m(l) m(l+1) = mu(l), |mu|^2 (Lambda-l)(Lambda+l+D-1) = c_{l+1}^2, a ratios.
Report verifyBranching(const ModelParams& p, const BranchingData& br);

// Unitary on V^Lambda induced by the rotation R of R^{D+1}.
MatC rotationUnitary(const LiftedIrrep& lifted, const MatD& R);
// g in O(D) embedded as diag(g, det g) in SO(D+1); checks that the induced
// rotation maps X -> det(g) g X, fixes the so(D) covariance, and, pulled back
// through U, acts on the fuzzy coordinates in the same way.
Report verifyParityRotation(const FuzzyAlgebra& alg, const LiftedIrrep& lifted, const BranchingData& br,
                            const MatD& g, const std::string& label);

}  // namespace fsph
