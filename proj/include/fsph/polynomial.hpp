#pragma once

#include "fsph/core.hpp"
#include "fsph/symtensor.hpp"

#include <map>
#include <string>
#include <vector>

namespace fsph {

// Polynomial in t^1..t^D with complex coefficients, keyed by exponent vectors.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int D = 1) : D_(D) {}
  static Polynomial constant(int D, cplx c);
  static Polynomial variable(int D, int i);  // 0-based
  // sum_{full i} t_{i_1..i_l} x^{i_1}...x^{i_l}
  static Polynomial fromTensor(const SymTensor& t);

  int dim() const { return D_; }
  int degree() const;  // -1 for the zero polynomial
  const std::map<Exponents, cplx>& terms() const { return terms_; }

  void add(const Exponents& e, cplx c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial homogeneousPart(int g) const;
  // Symmetric coefficient tensor of the degree-g part.
  SymTensor homogeneousTensor(int g) const;
  Polynomial laplacian() const;
  Polynomial timesRadiusSquared() const;
  // Exact quotient by r^2 = sum x_i^2; NumericalError if the remainder exceeds tol.
  Polynomial divideByRadiusSquared(double tol = 1e-10) const;

  cplx evaluate(const VecD& x) const;
  // Integral over the unit sphere S^{D-1}.
  cplx integrateSphere() const;
  double maxAbsCoeff() const;
  Polynomial pruned(double tol) const;

 private:
  int D_;
  std::map<Exponents, cplx> terms_;
};

// Mini-grammar (whitespace-insensitive):
//   poly   := [sign] term { sign term }
//   term   := factor { '*' factor }
//   factor := number | 't' index        (index 1-based, 1..D)
// Throws ArgumentError naming the offending token.
Polynomial parsePolynomial(const std::string& text, int D);
std::string formatPolynomial(const Polynomial& p);

}  // namespace fsph
