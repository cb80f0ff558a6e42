#include "fsph/core.hpp"

#include <cmath>
#include <numbers>

namespace fsph {

double doubleFactorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  return static_cast<double>(binomialInt(n, k));
}

std::int64_t binomialInt(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

double sphereMeasure(int D) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * D) / std::tgamma(0.5 * D);
}

}  // namespace fsph
