#include "fsph/symtensor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace fsph {

SymTensor indicatorTensor(int D, const MultiIndex& a) {
  SymTensor t(D, a.rank());
  t.coeffs()[t.indices().position(a)] = 1.0;
  return t;
}

SymTensor monomialTensor(int D, const MultiIndex& a) {
  SymTensor t(D, a.rank());
  int p = t.indices().position(a);
  t.coeffs()[p] = 1.0 / t.indices().multiplicity(p);
  return t;
}

cplx flatInner(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw ArgumentError("flatInner: shape mismatch");
  cplx s = 0;
  for (int i = 0; i < a.indices().size(); ++i)
    s += a.indices().multiplicity(i) * std::conj(a.coeffs()[i]) * b.coeffs()[i];
  return s;
}

double flatNorm(const SymTensor& a) { return std::sqrt(std::max(0.0, flatInner(a, a).real())); }

MCoefficients mCoefficients(int D, int l) {
  double inv = 1.0 / (l + 1);
  double tr = (l == 0) ? 0.0 : -2.0 * D * l / ((l + 1.0) * (D + 2.0 * l - 2.0));
  return {inv, l * inv, tr};
}

// ---------------------------------------------------------------------------
// Projector oracle

ProjectorOracle::ProjectorOracle(int D, int maxRank) : D_(D), maxRank_(maxRank) {
  if (D < 1 || maxRank < 0) throw ConfigError("projector oracle: need D >= 1, maxRank >= 0");
  for (int l = 0; l <= maxRank; ++l) spaces_.push_back(indexSpace(D, l));
  K_.push_back(MatD::Identity(1, 1));
  if (maxRank >= 1) K_.push_back(MatD::Identity(D, D));

  for (int l = 1; l < maxRank; ++l) {
    const IndexSpace& Sm = *spaces_[l - 1];
    const IndexSpace& S = *spaces_[l];
    const IndexSpace& Sp = *spaces_[l + 1];
    const MatD& K = K_[l];
    const int s = S.size();
    const MCoefficients mc = mCoefficients(D, l);

    // down[a*D+c] = position of alpha - c in S_{l-1}; up[b*D+c] = beta + c in S_l.
    std::vector<int> down(static_cast<std::size_t>(s) * D, -1), up(static_cast<std::size_t>(Sm.size()) * D);
    for (int a = 0; a < s; ++a)
      for (int c = 0; c < D; ++c)
        if (countIn(S.key(a), c) > 0) down[a * D + c] = Sm.position(S.key(a) - keyUnit(c));
    for (int b = 0; b < Sm.size(); ++b)
      for (int c = 0; c < D; ++c) up[b * D + c] = S.position(Sm.key(b) + keyUnit(c));

    // Read-out split of each rank-(l+1) index: last entry j and the rest.
    std::vector<int> outJ(Sp.size()), outA(Sp.size());
    for (int m = 0; m < Sp.size(); ++m) {
      int j = Sp[m].entries.back();
      outJ[m] = j;
      outA[m] = S.position(Sp.key(m) - keyUnit(j));
    }

    MatD Knext(Sp.size(), Sp.size());
    MatD U(s, D), V(s, D);
    VecD w(Sm.size());
    for (int mu = 0; mu < Sp.size(); ++mu) {
      // u_j = P^l applied to the slice t(., j) of the indicator of mu.
      for (int j = 0; j < D; ++j) {
        if (countIn(Sp.key(mu), j) > 0)
          U.col(j) = K.col(S.position(Sp.key(mu) - keyUnit(j)));
        else
          U.col(j).setZero();
      }
      // w = contraction of slot l with slot l+1.
      for (int b = 0; b < Sm.size(); ++b) {
        double acc = 0;
        for (int c = 0; c < D; ++c) acc += U(up[b * D + c], c);
        w[b] = acc;
      }
      // Symmetrize over slots 1..l the result of M on (l, l+1).
      for (int a = 0; a < s; ++a) {
        const IndexKey ka = S.key(a);
        for (int j = 0; j < D; ++j) {
          double perm = 0;
          for (int c = 0; c < D; ++c) {
            int nc = countIn(ka, c);
            if (nc == 0) continue;
            perm += nc * U(up[down[a * D + c] * D + j], c);
          }
          double trace = 0;
          int nj = countIn(ka, j);
          if (nj > 0) trace = nj * w[down[a * D + j]];
          V(a, j) = mc.identity * U(a, j) + (mc.permutation / l) * perm + (mc.trace / (l * D)) * trace;
        }
      }
      MatD R = K * V;
      for (int m = 0; m < Sp.size(); ++m) Knext(m, mu) = R(outA[m], outJ[m]);
    }
    K_.push_back(std::move(Knext));
  }
}

void ProjectorOracle::check(int D, int rank) const {
  if (D != D_ || rank < 0 || rank > maxRank_)
    throw ConfigError("projector oracle: tensor shape outside cached range");
}

const MatD& ProjectorOracle::matrix(int l) const {
  check(D_, l);
  return K_[l];
}

double ProjectorOracle::component(int l, int alpha, int beta) const {
  return matrix(l)(alpha, beta) / space(l).multiplicity(beta);
}

SymTensor ProjectorOracle::generator(int l, int alpha) const {
  VecC col = (matrix(l).col(alpha) / space(l).multiplicity(alpha)).cast<cplx>();
  return SymTensor(spaces_[l], std::move(col));
}

std::shared_ptr<const ProjectorOracle> projectorOracle(int D, int minRank) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ProjectorOracle>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[D];
  if (!slot || slot->maxRank() < minRank) slot = std::make_shared<const ProjectorOracle>(D, std::max(minRank, 2));
  return slot;
}

// ---------------------------------------------------------------------------
// Compressed tensor algebra

SymTensor contractPair(const SymTensor& t, int a, int b) {
  const int l = t.rank();
  if (l < 2) throw ArgumentError("contractPair: rank < 2");
  if (a == b || a < 0 || b < 0 || a >= l || b >= l) throw ArgumentError("contractPair: invalid slot pair");
  const int D = t.dim();
  SymTensor out(D, l - 2);
  const IndexSpace& S = t.indices();
  for (int i = 0; i < out.indices().size(); ++i) {
    cplx acc = 0;
    for (int c = 0; c < D; ++c) acc += t.coeffs()[S.position(out.indices().key(i) + 2 * keyUnit(c))];
    out.coeffs()[i] = acc;
  }
  return out;
}

SymTensor symmetrizedProductWithBasis(const SymTensor& t, int h) {
  const int D = t.dim(), l = t.rank();
  SymTensor out(D, l + 1);
  const IndexSpace& S = out.indices();
  for (int i = 0; i < S.size(); ++i) {
    int nh = countIn(S.key(i), h);
    if (nh == 0) continue;
    out.coeffs()[i] = (static_cast<double>(nh) / (l + 1)) * t.coeffs()[t.indices().position(S.key(i) - keyUnit(h))];
  }
  return out;
}

SymTensor sliceFirst(const SymTensor& t, int h) {
  if (t.rank() < 1) throw ArgumentError("sliceFirst: rank 0");
  SymTensor out(t.dim(), t.rank() - 1);
  for (int i = 0; i < out.indices().size(); ++i)
    out.coeffs()[i] = t.coeffs()[t.indices().position(out.indices().key(i) + keyUnit(h))];
  return out;
}

SymTensor contractSymmetrize(const SymTensor& f, const SymTensor& g, int r) {
  const int D = f.dim();
  const int l = f.rank(), m = g.rank();
  if (g.dim() != D || r < 0 || r > std::min(l, m)) throw ArgumentError("contractSymmetrize: bad shapes");
  const IndexSpace& Sr = *indexSpace(D, r);
  const IndexSpace& Sa = *indexSpace(D, l - r);
  const IndexSpace& Sb = *indexSpace(D, m - r);
  MatC C(Sa.size(), Sb.size());
  for (int a = 0; a < Sa.size(); ++a)
    for (int b = 0; b < Sb.size(); ++b) {
      cplx acc = 0;
      for (int p = 0; p < Sr.size(); ++p)
        acc += Sr.multiplicity(p) * f.coeffs()[f.indices().position(Sr.key(p) + Sa.key(a))] *
               g.coeffs()[g.indices().position(Sr.key(p) + Sb.key(b))];
      C(a, b) = acc;
    }
  SymTensor out(D, l + m - 2 * r);
  const IndexSpace& So = out.indices();
  for (int n = 0; n < So.size(); ++n) {
    cplx acc = 0;
    for (int a = 0; a < Sa.size(); ++a) {
      bool inside = true;
      for (int c = 0; c < D && inside; ++c) inside = countIn(Sa.key(a), c) <= countIn(So.key(n), c);
      if (!inside) continue;
      int b = Sb.position(So.key(n) - Sa.key(a));
      acc += Sa.multiplicity(a) * Sb.multiplicity(b) * C(a, b);
    }
    out.coeffs()[n] = acc / So.multiplicity(n);
  }
  return out;
}

SymTensor symmetricProduct(const SymTensor& a, const SymTensor& b) { return contractSymmetrize(a, b, 0); }

SymTensor embedTensor(const SymTensor& t, int D2) {
  if (D2 < t.dim()) throw ArgumentError("embedTensor: target dimension smaller");
  SymTensor out(D2, t.rank());
  for (int i = 0; i < t.indices().size(); ++i) out.at(t.indices()[i].entries) = t.coeffs()[i];
  return out;
}

// ---------------------------------------------------------------------------
// Dense tensors

namespace {

long ipow(int D, int e) {
  long r = 1;
  while (e-- > 0) r *= D;
  return r;
}

long linearIndex(int D, const std::vector<int>& idx) {
  long p = 0;
  for (int i : idx) p = p * D + i;
  return p;
}

std::vector<int> unravel(int D, int rank, long p) {
  std::vector<int> idx(rank);
  for (int s = rank - 1; s >= 0; --s) {
    idx[s] = static_cast<int>(p % D);
    p /= D;
  }
  return idx;
}

// Apply f to the sub-tensor on slots [first, first+count) for every value of
// the remaining slots.
DenseTensor applyOnSlots(const DenseTensor& t, int first, int count,
                         const std::function<DenseTensor(const DenseTensor&)>& f) {
  const int D = t.D;
  const long pre = ipow(D, first), mid = ipow(D, count), suf = ipow(D, t.rank - first - count);
  DenseTensor out(D, t.rank);
  DenseTensor block(D, count);
  for (long p = 0; p < pre; ++p)
    for (long q = 0; q < suf; ++q) {
      for (long m = 0; m < mid; ++m) block.data[m] = t.data[(p * mid + m) * suf + q];
      DenseTensor res = f(block);
      for (long m = 0; m < mid; ++m) out.data[(p * mid + m) * suf + q] = res.data[m];
    }
  return out;
}

}  // namespace

DenseTensor::DenseTensor(int D_, int rank_) : D(D_), rank(rank_), data(VecC::Zero(ipow(D_, rank_))) {}

cplx& DenseTensor::operator()(const std::vector<int>& idx) { return data[linearIndex(D, idx)]; }
cplx DenseTensor::operator()(const std::vector<int>& idx) const { return data[linearIndex(D, idx)]; }

DenseTensor toDense(const SymTensor& t) {
  DenseTensor out(t.dim(), t.rank());
  for (long p = 0; p < out.data.size(); ++p) out.data[p] = t(unravel(t.dim(), t.rank(), p));
  return out;
}

SymTensor fromDense(const DenseTensor& t) {
  SymTensor out(t.D, t.rank);
  for (int i = 0; i < out.indices().size(); ++i) out.coeffs()[i] = t(out.indices()[i].entries);
  return out;
}

double symmetryDefect(const DenseTensor& t) {
  double d = 0;
  for (long p = 0; p < t.data.size(); ++p) {
    auto idx = unravel(t.D, t.rank, p);
    std::sort(idx.begin(), idx.end());
    d = std::max(d, std::abs(t.data[p] - t(idx)));
  }
  return d;
}

MatD pairIdentity(int D) { return MatD::Identity(D * D, D * D); }

MatD pairPermutation(int D) {
  MatD P = MatD::Zero(D * D, D * D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) P(i * D + j, j * D + i) = 1.0;
  return P;
}

MatD pairTrace(int D) {
  MatD P = MatD::Zero(D * D, D * D);
  for (int i = 0; i < D; ++i)
    for (int k = 0; k < D; ++k) P(i * D + i, k * D + k) = 1.0 / D;
  return P;
}

MatD pairSymmetrizer(int D) { return 0.5 * (pairIdentity(D) + pairPermutation(D)); }
MatD pairAntisymmetrizer(int D) { return 0.5 * (pairIdentity(D) - pairPermutation(D)); }
MatD pairTraceFree(int D) { return pairSymmetrizer(D) - pairTrace(D); }

MatD pairM(int D, int l) {
  const MCoefficients mc = mCoefficients(D, l);
  return mc.identity * pairIdentity(D) + mc.permutation * pairPermutation(D) + mc.trace * pairTrace(D);
}

DenseTensor applyPair(const DenseTensor& t, int slot, const MatD& op) {
  if (slot < 0 || slot + 1 >= t.rank) throw ArgumentError("applyPair: slot out of range");
  const MatC opc = op.cast<cplx>();
  return applyOnSlots(t, slot, 2, [&](const DenseTensor& b) {
    DenseTensor r(b.D, 2);
    r.data = opc * b.data;
    return r;
  });
}

DenseTensor contractPairDense(const DenseTensor& t, int a, int b) {
  if (t.rank < 2 || a == b || a < 0 || b < 0 || a >= t.rank || b >= t.rank)
    throw ArgumentError("contractPairDense: invalid slots");
  DenseTensor out(t.D, t.rank - 2);
  for (long p = 0; p < out.data.size(); ++p) {
    auto rest = unravel(t.D, out.rank, p);
    cplx acc = 0;
    for (int c = 0; c < t.D; ++c) {
      std::vector<int> full;
      int r = 0;
      for (int s = 0; s < t.rank; ++s) full.push_back((s == a || s == b) ? c : rest[r++]);
      acc += t(full);
    }
    out.data[p] = acc;
  }
  return out;
}

SymTensor transformTensor(const SymTensor& t, const MatD& Q) {
  if (Q.rows() != t.dim() || Q.cols() != t.dim()) throw ArgumentError("transformTensor: matrix shape");
  DenseTensor d = toDense(t);
  const MatC Qc = Q.cast<cplx>();
  for (int s = 0; s < t.rank(); ++s)
    d = applyOnSlots(d, s, 1, [&](const DenseTensor& b) {
      DenseTensor r(b.D, 1);
      r.data = Qc * b.data;
      return r;
    });
  return fromDense(d);
}

DenseTensor applyProjectorDense(const DenseTensor& t, Ansatz ansatz) {
  const int L = t.rank;
  if (L <= 1) return t;
  const bool leading = ansatz == Ansatz::LeadingSlots;
  auto lower = [&](const DenseTensor& x) {
    return applyOnSlots(x, leading ? 0 : 1, L - 1, [&](const DenseTensor& y) { return applyProjectorDense(y, ansatz); });
  };
  DenseTensor y = lower(t);
  y = applyPair(y, leading ? L - 2 : 0, pairM(t.D, L - 1));
  return lower(y);
}

// ---------------------------------------------------------------------------
// Isotropic tensors and sphere moments

PairingSum::PairingSum(int N) : N_(N) {
  if (N < 0 || N % 2 != 0) throw ArgumentError("isotropicG: order must be even and non-negative");
}

namespace {

long countPairings(std::vector<int>& rest) {
  if (rest.empty()) return 1;
  const int first = rest.back();
  rest.pop_back();
  long total = 0;
  for (std::size_t j = 0; j < rest.size(); ++j) {
    if (rest[j] != first) continue;  // delta vanishes
    std::swap(rest[j], rest.back());
    int partner = rest.back();
    rest.pop_back();
    total += countPairings(rest);
    rest.push_back(partner);
    std::swap(rest[j], rest.back());
  }
  rest.push_back(first);
  return total;
}

}  // namespace

double PairingSum::componentByPairing(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != N_) throw ArgumentError("isotropicG: index length mismatch");
  std::vector<int> rest(idx);
  return doubleFactorial(N_) * static_cast<double>(countPairings(rest));
}

double PairingSum::component(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != N_) throw ArgumentError("isotropicG: index length mismatch");
  std::map<int, int> counts;
  for (int i : idx) ++counts[i];
  double r = doubleFactorial(N_);
  for (auto [c, n] : counts) {
    if (n % 2) return 0.0;
    r *= doubleFactorial(n - 1);
  }
  return r;
}

double PairingSum::traceByPairing(int D) const {
  const int h = N_ / 2;
  double total = 0;
  for (long p = 0; p < ipow(D, h); ++p) {
    auto half = unravel(D, h, p);
    std::vector<int> idx;
    for (int i : half) {
      idx.push_back(i);
      idx.push_back(i);
    }
    total += componentByPairing(idx);
  }
  return total;
}

double PairingSum::trace(int D) const {
  double r = doubleFactorial(N_);
  for (int j = 0; j < N_ / 2; ++j) r *= D + 2 * j;
  return r;
}

PairingSum isotropicG(int N) { return PairingSum(N); }

double sphereMomentFromCounts(const std::vector<int>& counts) {
  const int D = static_cast<int>(counts.size());
  int N = 0;
  double num = 1.0;
  for (int n : counts) {
    if (n % 2) return 0.0;
    N += n;
    num *= doubleFactorial(n - 1);
  }
  double den = 1.0;
  for (int j = 0; j < N / 2; ++j) den *= D + 2 * j;
  return sphereMeasure(D) * num / den;
}

double sphereMomentIntegral(int D, const std::vector<int>& idx) {
  std::vector<int> counts(D, 0);
  for (int i : idx) {
    if (i < 0 || i >= D) throw ArgumentError("sphereMomentIntegral: index out of range");
    ++counts[i];
  }
  return sphereMomentFromCounts(counts);
}

}  // namespace fsph
