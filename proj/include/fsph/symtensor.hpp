#pragma once

#include "fsph/core.hpp"
#include "fsph/multiindex.hpp"

#include <memory>
#include <vector>

namespace fsph {

// Totally symmetric rank-l tensor over R^D stored by its value at each sorted
// multi-index. Stored entries carry no combinatorial weight: a full-index sum
// over a symmetric tensor is sum_alpha multiplicity(alpha) * value(alpha).
template <class Scalar>
class BasicSymTensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicSymTensor() : BasicSymTensor(1, 0) {}
  BasicSymTensor(int D, int rank) : space_(indexSpace(D, rank)), coeffs_(Vector::Zero(space_->size())) {}
  BasicSymTensor(std::shared_ptr<const IndexSpace> space, Vector coeffs)
      : space_(std::move(space)), coeffs_(std::move(coeffs)) {}

  int dim() const { return space_->dim(); }
  int rank() const { return space_->rank(); }
  const IndexSpace& indices() const { return *space_; }
  const std::shared_ptr<const IndexSpace>& indexSpacePtr() const { return space_; }

  Vector& coeffs() { return coeffs_; }
  const Vector& coeffs() const { return coeffs_; }

  // Component for an arbitrary (unsorted) index tuple.
  Scalar operator()(const std::vector<int>& idx) const {
    return coeffs_[space_->position(sortedIndex(idx))];
  }
  Scalar& at(const std::vector<int>& idx) { return coeffs_[space_->position(sortedIndex(idx))]; }

  template <class Other>
  BasicSymTensor<Other> cast() const {
    return BasicSymTensor<Other>(space_, coeffs_.template cast<Other>());
  }

 private:
  std::shared_ptr<const IndexSpace> space_;
  Vector coeffs_;
};

using SymTensor = BasicSymTensor<cplx>;
using RealSymTensor = BasicSymTensor<double>;

// Unit symmetric tensor: value 1 at every permutation of `a` (so the full-index
// sum of its entries is multiplicity(a)).
SymTensor indicatorTensor(int D, const MultiIndex& a);

// Tensor of the monomial t^{a_1}...t^{a_l}: Sym(e_{a_1} x ... x e_{a_l}).
SymTensor monomialTensor(int D, const MultiIndex& a);

// Full-index contraction sum_{i} conj(a_i) b_i.
cplx flatInner(const SymTensor& a, const SymTensor& b);
double flatNorm(const SymTensor& a);

// Coefficients of M(l+1) = c_id 1 + c_perm P + c_trace (D Pt) on an adjacent pair,
// with Pt the normalized trace projector delta delta / D.
struct MCoefficients {
  double identity;
  double permutation;
  double trace;  // multiplies Pt
};
MCoefficients mCoefficients(int D, int l);

// Trace-free symmetric projector acting on compressed symmetric tensors.
// The restriction of P^l to symmetric tensors is cached for every rank up to
// maxRank, each level produced from the previous one by the recursion
// P^{l+1} = P^l_{1..l} M_{l,l+1} P^l_{1..l}. Immutable after construction.
class ProjectorOracle {
 public:
  ProjectorOracle(int D, int maxRank);

  int dim() const { return D_; }
  int maxRank() const { return maxRank_; }
  const IndexSpace& space(int l) const { return *spaces_.at(l); }
  std::shared_ptr<const IndexSpace> spacePtr(int l) const { return spaces_.at(l); }
  // Column beta = P^l applied to indicatorTensor(beta), i.e.
  // K[alpha][beta] = multiplicity(beta) * P^{alpha}_{beta}.
  const MatD& matrix(int l) const;
  // Full-index component P^{alpha}_{beta} for sorted alpha, beta.
  double component(int l, int alpha, int beta) const;

  template <class Scalar>
  BasicSymTensor<Scalar> apply(const BasicSymTensor<Scalar>& t) const {
    check(t.dim(), t.rank());
    typename BasicSymTensor<Scalar>::Vector out = matrix(t.rank()).template cast<Scalar>() * t.coeffs();
    return BasicSymTensor<Scalar>(t.indexSpacePtr(), std::move(out));
  }

  // Coefficient tensor of the generator T_l^{alpha} = P^l t^{alpha}.
  SymTensor generator(int l, int alpha) const;

 private:
  void check(int D, int rank) const;
  int D_;
  int maxRank_;
  std::vector<std::shared_ptr<const IndexSpace>> spaces_;
  std::vector<MatD> K_;
};

// Process-wide oracle cache (thread-safe); rebuilt with a larger rank on demand.
std::shared_ptr<const ProjectorOracle> projectorOracle(int D, int minRank);

template <class Scalar>
BasicSymTensor<Scalar> projectTraceFree(const BasicSymTensor<Scalar>& t) {
  return projectorOracle(t.dim(), t.rank())->apply(t);
}

// Contraction delta_{i_a i_b}; for a symmetric tensor every slot pair gives the
// same result, the pair is validated only.
SymTensor contractPair(const SymTensor& t, int a, int b);

// Sym(e_h x t), rank + 1.
SymTensor symmetrizedProductWithBasis(const SymTensor& t, int h);
// Slice t(h, ...), rank - 1.
SymTensor sliceFirst(const SymTensor& t, int h);
// Contract r leading slots of f and g, concatenate the rest and symmetrize.
SymTensor contractSymmetrize(const SymTensor& f, const SymTensor& g, int r);
// Sym(a x b).
SymTensor symmetricProduct(const SymTensor& a, const SymTensor& b);
// Embed a D-dimensional tensor into dimension D2 >= D (indices keep their labels).
SymTensor embedTensor(const SymTensor& t, int D2);
// Apply an orthogonal (or any) matrix on every slot: t -> Q^{(x) l} t.
SymTensor transformTensor(const SymTensor& t, const MatD& Q);

// Dense full-index tensor, slot 0 most significant. Used for generic
// (non-symmetric) inputs of the projector recursion and pair-operator checks.
struct DenseTensor {
  int D = 1;
  int rank = 0;
  VecC data;

  DenseTensor() = default;
  DenseTensor(int D_, int rank_);
  cplx& operator()(const std::vector<int>& idx);
  cplx operator()(const std::vector<int>& idx) const;
};

DenseTensor toDense(const SymTensor& t);
// Reads the sorted components; callers check symmetry separately if needed.
SymTensor fromDense(const DenseTensor& t);
double symmetryDefect(const DenseTensor& t);

// D^2 x D^2 operators on an index pair (row = out pair (i,j), col = in pair (k,l)).
MatD pairIdentity(int D);
MatD pairPermutation(int D);
MatD pairTrace(int D);           // Pt = delta^{ij} delta_{kl} / D
MatD pairSymmetrizer(int D);     // (1 + P)/2
MatD pairAntisymmetrizer(int D); // (1 - P)/2
MatD pairTraceFree(int D);       // (1 + P)/2 - Pt
MatD pairM(int D, int l);        // M(l+1)

DenseTensor applyPair(const DenseTensor& t, int slot, const MatD& op);
DenseTensor contractPairDense(const DenseTensor& t, int a, int b);

enum class Ansatz { LeadingSlots, TrailingSlots };
// P^rank applied to an arbitrary dense tensor through the recursion, with the
// lower projector acting on slots 1..l (LeadingSlots) or 2..l+1 (TrailingSlots).
DenseTensor applyProjectorDense(const DenseTensor& t, Ansatz ansatz);

// Isotropic tensor G_N: the sum over all N! index permutations of products of
// N/2 Kronecker deltas.
class PairingSum {
 public:
  explicit PairingSum(int N);
  int order() const { return N_; }
  // Explicit enumeration of the (N-1)!! perfect pairings, times N!!.
  double componentByPairing(const std::vector<int>& idx) const;
  // N!! * prod_c (n_c - 1)!! for all-even occupation numbers, else 0.
  double component(const std::vector<int>& idx) const;
  // Full double contraction G^{i1 i1 i2 i2 ...}, summed explicitly.
  double traceByPairing(int D) const;
  // N!! D (D+2) ... (D+N-2).
  double trace(int D) const;

 private:
  int N_;
};

PairingSum isotropicG(int N);

// Integral over S^{D-1} of t^{i_1}...t^{i_N} (any order of indices).
double sphereMomentIntegral(int D, const std::vector<int>& idx);
// Same, from occupation numbers n_c.
double sphereMomentFromCounts(const std::vector<int>& counts);

}  // namespace fsph
