#include "oracles.hpp"

#include "fsph/polynomial.hpp"

#include <doctest.h>

#include <numbers>
#include <string>

using namespace fsph;

namespace {

std::string parseError(const std::string& text, int D) {
  try {
    parsePolynomial(text, D);
  } catch (const ArgumentError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("grammar") {
  Polynomial p = parsePolynomial("t1*t2 - 0.5", 3);
  VecD x(3);
  x << 0.3, -2, 5;
  CHECK(p.evaluate(x).real() == doctest::Approx(-1.1));
  CHECK(parsePolynomial(" - 2 * t3 * t3 + 1e-1 ", 3).evaluate(x).real() == doctest::Approx(-49.9));
  CHECK(parsePolynomial("1", 2).degree() == 0);
  CHECK(parsePolynomial("t1 - t1", 2).pruned(0).degree() == -1);
  CHECK(parsePolynomial("t2*t2*t1", 2).degree() == 3);
}

TEST_CASE("parse errors name the offending token") {
  CHECK(parseError("t1 * x2", 3).find("'x2'") != std::string::npos);
  CHECK(parseError("t4", 3).find("'t4'") != std::string::npos);
  CHECK(parseError("t1 t2", 3).find("'t2'") != std::string::npos);
  CHECK(parseError("t1 +", 3).find("end of input") != std::string::npos);
  CHECK(parseError("2 * -t1", 3).find("'-'") != std::string::npos);
  CHECK(parseError("t", 3).find("'t'") != std::string::npos);
  CHECK_FALSE(parseError("nan", 2).empty());
}

TEST_CASE("arithmetic and differential operators") {
  Polynomial a = parsePolynomial("t1*t1 - t2*t2", 2);
  CHECK(a.laplacian().maxAbsCoeff() == 0.0);
  Polynomial r4 = parsePolynomial("t1*t1 + t2*t2 + t3*t3", 3).timesRadiusSquared();
  CHECK(r4.laplacian().homogeneousPart(2).maxAbsCoeff() == doctest::Approx(20.0));
  Polynomial q = parsePolynomial("t1*t2*t3", 3).timesRadiusSquared().divideByRadiusSquared();
  CHECK((q - parsePolynomial("t1*t2*t3", 3)).maxAbsCoeff() < 1e-15);
  CHECK_THROWS_AS(parsePolynomial("t1", 3).divideByRadiusSquared(), NumericalError);
}

TEST_CASE("sphere integration against Gamma-function moments") {
  const double pi = std::numbers::pi;
  CHECK(Polynomial::constant(3, 1.0).integrateSphere().real() == doctest::Approx(4 * pi));
  CHECK(parsePolynomial("t1*t1", 3).integrateSphere().real() == doctest::Approx(4 * pi / 3));
  for (int D = 2; D <= 5; ++D) {
    Polynomial p = parsePolynomial("t1*t1*t2*t2 - 3*t1*t1*t1*t1 + 0.25", D);
    CHECK(p.integrateSphere().real() == doctest::Approx(oracle::sphereIntegral(p).real()));
  }
}

TEST_CASE("tensor round trip") {
  Polynomial p = parsePolynomial("t1*t2*t3 + 2*t1*t1*t3", 3);
  SymTensor t = p.homogeneousTensor(3);
  CHECK((Polynomial::fromTensor(t) - p).maxAbsCoeff() < 1e-15);
  CHECK(formatPolynomial(Polynomial(3)) == "0");
}
