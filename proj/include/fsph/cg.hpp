#pragma once

#include "fsph/fuzzy.hpp"
#include "fsph/polynomial.hpp"

#include <functional>
#include <map>
#include <vector>

namespace fsph {

// {|l-m|, |l-m|+2, ..., l+m}
std::vector<int> channelList(int l, int m);
bool inChannelList(int l, int m, int n);

// Closed-form coefficient of the V^n channel of T_l T_m:
// (D+2n-2)!! l! m! / ((D+2n+2r-2)!! (l-r)! (m-r)! r!), r = (l+m-n)/2.
double classicalN(int D, int l, int m, int n);
// The same without the 1/r! factor. Agrees with classicalN only for r <= 1;
// kept for comparison.
double classicalNPrinted(int D, int l, int m, int n);

// P^n applied to f and phi contracted on r = (l+m-n)/2 slots, unnormalized.
SymTensor channelTensor(const SymTensor& f, const SymTensor& phi, int n);

// V^n components (coefficient tensors) of the pointwise product (f.t)(phi.t).
std::map<int, SymTensor> decomposeProductClassical(const SymTensor& f, const SymTensor& phi);

// Oracle for classicalN from sphere integrals of seeded random trace-free
// tensors: <chi, f phi> / (Q_n <chi, P^n(f _r phi)>_flat) with chi = P^n(f _r phi).
// Returns NaN if the channel vanishes for the sampled inputs.
double classicalNByIntegration(int D, int l, int m, int n, unsigned seed = 7);

// hatN[l][m][n] for l <= lmax, m <= mmax, n <= l + m, from the recursion in l
// starting at hatN[0][m][m] = 1, with channel weights c(n).
using NTable = std::vector<std::vector<std::vector<double>>>;
NTable fuzzyNRecursion(int D, int lmax, int mmax, const std::function<double(int)>& c);
NTable fuzzyN(const ModelParams& p, int lmax, int mmax);
// The same recursion with every c = 1; reproduces classicalN.
NTable classicalNRecursion(int D, int lmax, int mmax);

struct CgTable {
  int D = 0, l = 0, m = 0;
  std::vector<int> channels;
  std::vector<double> classical;
  std::vector<double> fuzzy;
};
CgTable cgTable(const ModelParams& p, int l, int m);

// S(beta) = sum over the orderings J of the multiset beta of x^{j_1}...x^{j_l},
// for every sorted beta of rank <= maxRank. f-hat = sum_beta f_beta S(beta).
class SymmetrizedWords {
 public:
  SymmetrizedWords(const FuzzyAlgebra& alg, int maxRank);
  int maxRank() const { return maxRank_; }
  const MatC& word(int rank, int beta) const { return S_.at(rank).at(beta); }
  // Fuzzy harmonic of a symmetric coefficient tensor.
  MatC apply(const SymTensor& f) const;

 private:
  int D_, maxRank_;
  std::vector<std::vector<MatC>> S_;
};

// T-hat_l^{alpha} for every sorted alpha, l = 0..lmax.
std::vector<std::vector<MatC>> buildFuzzyHarmonics(const FuzzyAlgebra& alg, int lmax);

// Action of f-hat (f given by trace-free parts f^l) on a truncated state
// given by parts phi^m, through the hatN channel formula. Parts above Lambda
// of the state are ignored.
std::vector<SymTensor> fuzzyMultiply(const ModelParams& p, const std::vector<SymTensor>& f,
                                     const std::vector<SymTensor>& state);
// Pointwise product (f phi) as trace-free parts up to deg f + deg phi.
std::vector<SymTensor> classicalMultiply(const std::vector<SymTensor>& f, const std::vector<SymTensor>& phi);

// sup over the unit sphere of |p|, by seeded sampling plus local ascent.
double supNormOnSphere(const Polynomial& p, unsigned seed = 11);

struct ConvergenceRow {
  int Lambda = 0;
  double k = 0;
  double norm = 0;     // ||(f-hat - f) phi||
  double bound = 0;    // (exp(Lambda eps) - 1)(||f||_op + eta)||phi||
  double epsilon = 0;
  double eta = 0;
  bool withinBound = false;
};
struct ConvergenceTable {
  int D = 0;
  double fNorm = 0;    // ||f||_op
  double phiNorm = 0;  // ||phi||
  std::vector<ConvergenceRow> rows;
};

// kOverride <= 0 uses the default k rule at each Lambda.
ConvergenceTable convergenceExperiment(int D, const Polynomial& f, const Polynomial& phi,
                                       const std::vector<int>& lambdas, double kOverride = 0);
// ||(f-hat g-hat - (fg)) phi|| per Lambda.
std::vector<double> productConvergence(int D, const Polynomial& f, const Polynomial& g, const Polynomial& phi,
                                       const std::vector<int>& lambdas);

}  // namespace fsph
