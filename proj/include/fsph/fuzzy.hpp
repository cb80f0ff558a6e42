#pragma once

#include "fsph/harmonic.hpp"
#include "fsph/report.hpp"

#include <memory>
#include <vector>

namespace fsph {

enum class KRule { Default, Explicit };

struct ModelParams {
  int D = 3;
  int Lambda = 1;
  double k = 1;
  KRule kRule = KRule::Default;
  double tolerance = 1e-10;

  // k = Lambda^2 (Lambda + D - 2)^2, or 1 when that vanishes (Lambda = 0).
  static ModelParams withDefaultK(int D, int Lambda);
  static ModelParams withExplicitK(int D, int Lambda, double k);
  // ConfigError unless D >= 2, Lambda >= 0, k > 0 and the cutoff inequality holds.
  void validate() const;
};

double defaultK(int D, int Lambda);
// Lambda (Lambda + D - 2) < 2 sqrt(2k)
bool cutoffSatisfied(int D, int Lambda, double k);
inline double coefB(int D) { return (2.0 * D - 5.0) * (D - 1.0) / 2.0; }

// c_l = sqrt(1 + (2D-5)(D-1)/(2k) + (l-1)(l+D-2)/k) for 1 <= l <= Lambda, else 0.
double coefC(int D, int Lambda, double k, int l);
inline double coefC(const ModelParams& p, int l) { return coefC(p.D, p.Lambda, p.k, l); }

// Per-block eigenvalue of x^2: 1 + (E_l + B)/k below the top block,
// Lambda c_Lambda^2 / (D + 2 Lambda - 2) on it.
double radiusSquared(const ModelParams& p, int l);
// Operator-norm bound sqrt(1 + (B + (Lambda-1)(Lambda+D-3))/k) and epsilon = (that^2 - 1)/2.
double coordinateNormBound(const ModelParams& p);
double epsilonBound(const ModelParams& p);
// Coefficient of P_Lambda^Lambda in the Snyder commutator.
double snyderK(const ModelParams& p);

class FuzzyAlgebra {
 public:
  explicit FuzzyAlgebra(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  const TruncatedSpace& basis() const { return *basis_; }
  int N() const { return basis_->N(); }
  int D() const { return params_.D; }
  int Lambda() const { return params_.Lambda; }

  const MatC& x(int i) const { return X_.at(i); }
  // L_{hk}, antisymmetric in (h, k); zero for h == k.
  const MatC& L(int h, int k) const { return L_.at(h * params_.D + k); }
  const MatC& Lsq() const { return Lsq_; }
  const MatC& xsq() const { return Xsq_; }
  const MatC& blockProjector(int l) const { return blockProj_.at(l); }
  // Max-abs mismatch between raising blocks and adjoints of lowering blocks.
  double hermiticityResidual() const { return hermiticity_; }

 private:
  ModelParams params_;
  std::shared_ptr<const TruncatedSpace> basis_;
  std::vector<MatC> X_, L_, blockProj_;
  MatC Lsq_, Xsq_;
  double hermiticity_ = 0;
};

// Validates params, assembles the matrices; NumericalError if the Hermiticity
// residual exceeds the params tolerance.
FuzzyAlgebra buildFuzzy(const ModelParams& params);

inline MatC commutator(const MatC& a, const MatC& b) { return a * b - b * a; }

// Lagrange interpolation P^l = prod_{n != l} (L^2 - E_n)/(E_l - E_n).
MatC lagrangeProjector(const FuzzyAlgebra& alg, int l);

Report verifySnyder(const FuzzyAlgebra& alg);
Report verifyXsq(const FuzzyAlgebra& alg);
Report verifyAuxRelations(const FuzzyAlgebra& alg);
// Hermiticity, block selection rules, projector identities, L^2 spectrum.
Report verifyStructure(const FuzzyAlgebra& alg);

// Unitary on H_Lambda induced by t -> Q t (Q orthogonal), block by block.
MatC inducedUnitary(const FuzzyAlgebra& alg, const MatD& Q);
// max_i || U x^i U^+ - sum_j Q_ji x^j || and the same for L.
Report verifyEquivariance(const FuzzyAlgebra& alg, const MatD& Q, const std::string& label);

struct GenerationResult {
  int dimension = 0;
  int wordLength = 0;              // longest word length used
  std::vector<double> residuals;   // Gram-Schmidt residual of every accepted word
  double smallestRejected = 0;     // largest residual among rejected words (relative)
};
// Dimension of the span of words in x^i of length <= maxLength (default 2 Lambda + 2).
GenerationResult generateAlgebra(const FuzzyAlgebra& alg, int maxLength = -1);
// Dimension of {M : [x^i, M] = 0 for all i}; 1 iff the x^i generate M_N
// (they are Hermitian, so the generated algebra is a *-algebra). `gap` gets
// the smallest singular value kept, relative to the largest.
double commutantDimension(const FuzzyAlgebra& alg, double relTol = 1e-10, double* gap = nullptr);

}  // namespace fsph
