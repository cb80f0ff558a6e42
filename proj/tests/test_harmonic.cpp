#include "oracles.hpp"

#include "fsph/harmonic.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace fsph;

namespace {

const double kPi = std::numbers::pi;

cplx sphereInner(const SymTensor& a, const SymTensor& b) {
  Polynomial pa = Polynomial::fromTensor(a), pb = Polynomial::fromTensor(b);
  Polynomial conjA(pa.dim());
  for (const auto& [e, c] : pa.terms()) conjA.add(e, std::conj(c));
  return oracle::sphereIntegral(conjA * pb);
}

}  // namespace

TEST_CASE("dimensions") {
  CHECK(dimV(3, 2) == 5);
  CHECK(dimV(4, 2) == 9);
  CHECK(dimV(7, 0) == 1);
  CHECK(dimTruncated(3, 2) == 9);
  CHECK(dimTruncated(2, 3) == 7);
  CHECK(dimTruncated(4, 6) == 140);
  CHECK(dimV(5, 6) == 140);
  for (int D = 2; D <= 5; ++D)
    for (int l = 0; l <= 5; ++l) {
      // rank of the Gram matrix of all P^l t^alpha
      Eigen::FullPivLU<MatD> lu(gramQl(D, l));
      lu.setThreshold(1e-10);
      CHECK(lu.rank() == dimV(D, l));
    }
}

TEST_CASE("generators") {
  std::vector<SymTensor> t1 = buildT(3, 1);
  for (int i = 0; i < 3; ++i) CHECK(t1[i]({i}).real() == doctest::Approx(1.0));
  std::vector<SymTensor> t2 = buildT(3, 2);
  CHECK(t2[0]({0, 0}).real() == doctest::Approx(2.0 / 3));
  CHECK(t2[0]({1, 1}).real() == doctest::Approx(-1.0 / 3));
  std::vector<SymTensor> d2 = buildT(2, 2);
  const int pos = indexSpace(2, 2)->position(sortedIndex({0, 1}));
  CHECK(maxAbs(d2[pos].coeffs() - monomialTensor(2, sortedIndex({0, 1})).coeffs()) < 1e-15);
}

TEST_CASE("Gram matrix against sphere integrals") {
  CHECK(gramQl(3, 1)(0, 0) == doctest::Approx(4 * kPi / 3));
  CHECK(Ql(3, 2) == doctest::Approx(4 * kPi * 2 / 15));
  CHECK(gramQl(3, 2)(0, 0) == doctest::Approx(Ql(3, 2) * 2.0 / 3));
  for (int D = 2; D <= 4; ++D)
    for (int l = 0; l <= 3; ++l) {
      std::vector<SymTensor> T = buildT(D, l);
      MatD G = gramQl(D, l);
      for (std::size_t a = 0; a < T.size(); ++a)
        for (std::size_t b = 0; b < T.size(); ++b)
          CHECK(std::abs(sphereInner(T[a], T[b]) - G(a, b)) < 1e-12);
    }
}

TEST_CASE("orthonormal bases") {
  TruncatedSpace B(3, 2);
  CHECK(B.space(0).basisTensor(0).coeffs()[0].real() == doctest::Approx(1 / std::sqrt(4 * kPi)));
  CHECK(B.space(1).dim() == 3);
  CHECK(B.space(2).pivots().size() == 5);
  for (int D = 2; D <= 4; ++D) {
    TruncatedSpace S(D, 3);
    for (int l = 0; l <= 3; ++l) {
      const HarmonicSpace& h = S.space(l);
      for (int a = 0; a < h.dim(); ++a)
        for (int b = 0; b < h.dim(); ++b)
          CHECK(std::abs(sphereInner(h.basisTensor(a), h.basisTensor(b)) - (a == b ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("angular momentum") {
  TruncatedSpace B2(2, 1);
  CHECK(maxAbs(actionL(B2.space(0), 0, 1)) == 0.0);
  Eigen::SelfAdjointEigenSolver<MatC> es(actionL(B2.space(1), 0, 1));
  CHECK(es.eigenvalues()[0] == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()[1] == doctest::Approx(1.0));
  for (int D = 2; D <= 5; ++D) {
    TruncatedSpace B(D, 3);
    for (int l = 0; l <= 3; ++l) {
      const HarmonicSpace& s = B.space(l);
      MatC C = MatC::Zero(s.dim(), s.dim());
      for (int h = 0; h < D; ++h)
        for (int k = h + 1; k < D; ++k) C += actionL(s, h, k) * actionL(s, h, k);
      CHECK(maxAbs(C - casimirE(D, l) * MatC::Identity(s.dim(), s.dim())) < 1e-11);
    }
  }
  CHECK(casimirE(3, 2) == 6.0);
}

TEST_CASE("multiplication by t^h") {
  SymTensor one(3, 0);
  one.coeffs()[0] = 1;
  SymTensor raised = raiseT(*projectorOracle(3, 1), one, 0);
  CHECK(raised({0}).real() == doctest::Approx(1.0));
  CHECK(coefD(3, 1) == doctest::Approx(1.0 / 3));
  SymTensor e1(3, 1);
  e1.at({0}) = 1;
  SymTensor up = raiseT(*projectorOracle(3, 2), e1, 0);
  SymTensor down = lowerT(e1, 0);
  CHECK(up({0, 0}).real() == doctest::Approx(2.0 / 3));
  CHECK(down.coeffs()[0].real() == doctest::Approx(1.0 / 3));
  CHECK(contractionCoefficient(3, 2) == doctest::Approx(2.0 / 3));
}

TEST_CASE("contraction coefficient against direct evaluation") {
  // sum_i t^i P^l t^{i a_2 .. a_l} restricted to the sphere equals coefficient * P^{l-1} t^{a_2 .. a_l}
  for (int D = 2; D <= 5; ++D)
    for (int l = 1; l <= 4; ++l) {
      const auto P = projectorOracle(D, l);
      SymTensor e(D, l - 1);
      e.at(std::vector<int>(l - 1, 0)) = 1;
      Polynomial lhs(D);
      for (int i = 0; i < D; ++i) {
        SymTensor ti = P->apply(symmetrizedProductWithBasis(e, i));
        lhs += Polynomial::variable(D, i) * Polynomial::fromTensor(ti);
      }
      // degree l polynomial that restricts to coefficient * T_{l-1}
      Polynomial rhs = Polynomial::fromTensor(projectTraceFree(e)).timesRadiusSquared() *
                       cplx(contractionCoefficient(D, l));
      Polynomial diff = lhs - rhs;
      CHECK(diff.maxAbsCoeff() < 1e-12);
    }
}

TEST_CASE("harmonic decomposition of polynomials") {
  Polynomial one = Polynomial::constant(3, 1.0);
  auto p1 = decomposePolynomial(one, 2);
  CHECK(p1[0].coeffs()[0].real() == doctest::Approx(1.0));
  CHECK(maxAbs(p1[1].coeffs()) == 0.0);
  CHECK(maxAbs(p1[2].coeffs()) == 0.0);

  Polynomial t11 = Polynomial::variable(3, 0) * Polynomial::variable(3, 0);
  auto p2 = decomposePolynomial(t11, 2);
  CHECK(p2[0].coeffs()[0].real() == doctest::Approx(1.0 / 3));
  CHECK(p2[2]({0, 0}).real() == doctest::Approx(2.0 / 3));

  Polynomial r2(3);
  for (int i = 0; i < 3; ++i) r2 += Polynomial::variable(3, i) * Polynomial::variable(3, i);
  auto p3 = decomposePolynomial(r2, 2);
  CHECK(p3[0].coeffs()[0].real() == doctest::Approx(1.0));
  CHECK(maxAbs(p3[2].coeffs()) < 1e-15);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Polynomial p = parsePolynomial("0.3 - t1*t2*t2 + 2*t3*t3*t1*t2 - t2", 3);
  auto parts = decomposePolynomial(p, 4);
  Polynomial back = composePolynomial(parts, 3);
  for (int s = 0; s < 10; ++s) {
    VecD x(3);
    for (int i = 0; i < 3; ++i) x[i] = u(rng);
    x.normalize();
    CHECK(std::abs(back.evaluate(x) - p.evaluate(x)) < 1e-12);
  }
  // norms agree with the sphere integral
  Polynomial conjP(3);
  for (const auto& [e, c] : p.terms()) conjP.add(e, std::conj(c));
  CHECK(normSquared(parts) == doctest::Approx(oracle::sphereIntegral(conjP * p).real()));
}
