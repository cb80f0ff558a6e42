#pragma once

#include "fsph/fuzzy.hpp"

#include <functional>
#include <vector>

namespace fsph {

// Confining well V(r) ~ V0 + 2k (r-1)^2 around the unit sphere.
struct ConfinementModel {
  int D = 3;
  int Lambda = 1;
  double k = 1;

  explicit ConfinementModel(const ModelParams& p);

  // [D^2 - 4D + 3 + 4 l (l+D-2)] / 4, the centrifugal coefficient of 1/r^2.
  double b(int l) const;
  double kl(int l) const { return 2 * k + 3 * b(l); }
  double rTilde(int l) const { return 1 + b(l) / (3 * b(l) + 2 * k); }
  // Fixed so that E_{0,0} = 0.
  double V0() const;
  double cutoff() const { return casimirE(D, Lambda); }

  // (2n+1) sqrt(k_l) + V0 + 2 b (k + b) / (3b + 2k)
  double energy(int n, int l) const;
  // l(l+D-2) + 2n sqrt(2k)
  double energyLeading(int n, int l) const;
};

struct SpectrumRow {
  int n = 0, l = 0;
  double energy = 0;
  double leading = 0;
  bool kept = false;  // leading-order energy within the cutoff
};
struct SpectrumTable {
  std::vector<SpectrumRow> rows;
  // min over n >= 1 of E_{n,l} - cutoff (exact energies).
  double excitedMargin = 0;
};
// n <= 2, l <= Lambda + 2.
SpectrumTable spectrumHarmonic(const ConfinementModel& m);
// {(n, l)} kept by the cutoff on leading-order energies, and on exact ones.
std::vector<std::pair<int, int>> cutoffSelection(const ConfinementModel& m, int nMax, int lMax);
std::vector<std::pair<int, int>> cutoffSelectionExact(const ConfinementModel& m, int nMax, int lMax);

// Truncated series for the overlap integral of g_L g_l h(r), h given by its
// coefficients in powers of r; terms n = 0..terms-1.
double radialIntegralAsymptotic(const ConfinementModel& m, int l, int L, const std::vector<double>& h,
                                int terms = 3);
// rho_{l-1,l}: the same with h(r) = r.
double radialRho(const ConfinementModel& m, int l);
double rHat(const ConfinementModel& m, int l, int L);

// Quadratic well plus a T / r^2 core, blended smoothly on [0.25, 0.5].
std::function<double(double)> defaultPotential(const ConfinementModel& m, double T = 1.0);

struct OdeOptions {
  double rMin = 1e-4;
  double rMax = 3.0;
  int initialIntervals = 4000;
  int maxLevels = 8;
  double relTol = 1e-6;
  int samples = 200;
};
struct OdeResult {
  double energy = 0;        // Richardson-extrapolated
  double harmonic = 0;      // E_{n,l} from the exact formula
  double constant = 0;      // |energy - harmonic| sqrt(k)
  double lastChange = 0;    // relative change between the last two extrapolations
  int intervals = 0;        // finest grid used
  double tailWeight = 0;    // integral of g^2 over |r - 1| > 3 k^{-1/4}
  std::vector<double> r, g; // normalized eigenfunction samples
};
// -g'' + [b(l)/r^2 + V] g = E g with Dirichlet ends; the n-th eigenvalue by
// Sturm bisection, eigenvector by inverse iteration. NumericalError if the
// grid-doubling sequence does not settle.
OdeResult odeValidate(const ConfinementModel& m, const std::function<double(double)>& V, int l, int n,
                      const OdeOptions& opt = {});

}  // namespace fsph
