#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsph {

using cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using VecD = Eigen::VectorXd;
using MatD = Eigen::MatrixXd;

inline constexpr cplx I_unit{0.0, 1.0};

// Error classes. The CLI maps ConfigError to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// n!! with the conventions 0!! = (-1)!! = 1.
double doubleFactorial(int n);
double factorial(int n);
double binomial(int n, int k);
std::int64_t binomialInt(int n, int k);

// Surface measure of the unit sphere S^{D-1} embedded in R^D.
double sphereMeasure(int D);

template <class Derived>
double maxAbs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace fsph
