#pragma once

// Independent reference computations for the tests. Nothing here calls the
// recursions under test.

#include "fsph/polynomial.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

// Harmonic part of a homogeneous degree-l polynomial by explicit detracing:
// H[p] = sum_k (-1)^k r^{2k} lap^k p / (2^k k! prod_{j=1..k} (2l+D-2-2j)).
inline fsph::Polynomial detrace(const fsph::Polynomial& p, int l) {
  const int D = p.dim();
  fsph::Polynomial out(D), lap = p;
  double denom = 1;
  for (int k = 0; 2 * k <= l; ++k) {
    if (k > 0) {
      lap = lap.laplacian();
      denom *= 2.0 * k * (2.0 * l + D - 2 - 2 * k);
    }
    fsph::Polynomial term = lap;
    for (int j = 0; j < k; ++j) term = term.timesRadiusSquared();
    out += term * fsph::cplx((k % 2 ? -1.0 : 1.0) / denom);
  }
  return out;
}

// Integral of a monomial over S^{D-1} from the Gaussian-moment identity:
// 2 prod_c Gamma((n_c+1)/2) / Gamma((l+D)/2), zero if any n_c is odd.
inline double monomialIntegral(const std::vector<int>& counts) {
  double num = 2;
  int l = 0;
  for (int n : counts) {
    if (n % 2) return 0;
    num *= std::tgamma((n + 1) / 2.0);
    l += n;
  }
  return num / std::tgamma((l + static_cast<double>(counts.size())) / 2.0);
}

inline fsph::cplx sphereIntegral(const fsph::Polynomial& p) {
  fsph::cplx s = 0;
  for (const auto& [e, c] : p.terms()) s += c * monomialIntegral(e);
  return s;
}

inline double sphereArea(int D) { return monomialIntegral(std::vector<int>(D, 0)); }

}  // namespace oracle
