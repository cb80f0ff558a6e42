#include "oracles.hpp"

#include "fsph/cg.hpp"

#include <doctest.h>

#include <random>

using namespace fsph;

namespace {

SymTensor randomTraceFree(int D, int l, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  SymTensor t(D, l);
  for (int a = 0; a < t.coeffs().size(); ++a) t.coeffs()[a] = u(rng);
  return projectTraceFree(t);
}

VecD randomUnit(int D, std::mt19937& rng) {
  std::normal_distribution<double> g;
  VecD x(D);
  for (int i = 0; i < D; ++i) x[i] = g(rng);
  return x.normalized();
}

}  // namespace

TEST_CASE("channels") {
  CHECK(channelList(2, 3) == std::vector<int>{1, 3, 5});
  CHECK(channelList(0, 0) == std::vector<int>{0});
  CHECK(inChannelList(2, 2, 0));
  CHECK_FALSE(inChannelList(2, 2, 1));
  CHECK_THROWS_AS(classicalN(3, 2, 2, 1), ArgumentError);
}

TEST_CASE("closed-form N examples") {
  for (int D = 2; D <= 5; ++D)
    for (int l = 0; l <= 4; ++l)
      for (int m = 0; m <= 4; ++m) CHECK(classicalN(D, l, m, l + m) == doctest::Approx(1.0));
  CHECK(classicalN(3, 2, 1, 1) == doctest::Approx(2.0 / 5));
  CHECK(classicalN(3, 1, 1, 0) == doctest::Approx(1.0 / 3));
  // the printed form carries an extra r! for r >= 2
  CHECK(classicalNPrinted(3, 2, 2, 0) == doctest::Approx(2 * classicalN(3, 2, 2, 0)));
}

TEST_CASE("pointwise products decompose with the closed-form N") {
  std::mt19937 rng(6);
  for (int D = 2; D <= 4; ++D)
    for (int l = 0; l <= 4; ++l)
      for (int m = 0; m <= 4; ++m) {
        SymTensor f = randomTraceFree(D, l, rng), phi = randomTraceFree(D, m, rng);
        Polynomial lhs = Polynomial::fromTensor(f) * Polynomial::fromTensor(phi);
        Polynomial rhs(D);
        for (const auto& [n, t] : decomposeProductClassical(f, phi)) rhs += Polynomial::fromTensor(t);
        for (int s = 0; s < 5; ++s) {
          VecD x = randomUnit(D, rng);
          CHECK(std::abs(lhs.evaluate(x) - rhs.evaluate(x)) < 1e-12);
        }
      }
}

TEST_CASE("N against sphere integrals computed from Gamma-function moments") {
  std::mt19937 rng(7);
  for (int D = 2; D <= 4; ++D)
    for (int l = 0; l <= 4; ++l)
      for (int m = 0; m <= 4; ++m)
        for (int n : channelList(l, m)) {
          SymTensor f = randomTraceFree(D, l, rng), phi = randomTraceFree(D, m, rng);
          SymTensor chi = channelTensor(f, phi, n);
          const double flat = flatInner(chi, chi).real();
          if (flat < 1e-12) continue;
          Polynomial prod = Polynomial::fromTensor(chi) * Polynomial::fromTensor(f) * Polynomial::fromTensor(phi);
          const double got = oracle::sphereIntegral(prod).real() / (Ql(D, n) * flat);
          CHECK(got == doctest::Approx(classicalN(D, l, m, n)).epsilon(1e-10));
        }
}

TEST_CASE("product examples") {
  SymTensor e1(3, 1);
  e1.at({0}) = 1;
  auto parts = decomposeProductClassical(e1, e1);
  CHECK(parts.at(0).coeffs()[0].real() == doctest::Approx(1.0 / 3));
  CHECK(parts.at(2)({0, 0}).real() == doctest::Approx(2.0 / 3));

  SymTensor a(2, 1), b(2, 1);
  a.at({0}) = 1;
  b.at({1}) = 1;
  auto p2 = decomposeProductClassical(a, b);
  CHECK(std::abs(p2.at(0).coeffs()[0]) < 1e-15);
  CHECK(p2.at(2)({0, 1}).real() == doctest::Approx(0.5));

  SymTensor one(3, 0);
  one.coeffs()[0] = 1;
  auto p3 = decomposeProductClassical(one, e1);
  CHECK(p3.size() == 1);
  CHECK(maxAbs(p3.at(1).coeffs() - e1.coeffs()) < 1e-15);
}

TEST_CASE("fuzzy N recursion") {
  const ModelParams p = ModelParams::withDefaultK(3, 4);
  NTable hat = fuzzyN(p, 4, 4);
  for (int m = 1; m <= 3; ++m) {
    CHECK(hat[1][m][m + 1] == doctest::Approx(coefC(p, m + 1)));
    CHECK(hat[1][m][m - 1] == doctest::Approx(coefC(p, m) * m / (p.D + 2.0 * m - 2)));
  }
  for (int D = 2; D <= 5; ++D) {
    NTable cls = classicalNRecursion(D, 4, 4);
    for (int l = 0; l <= 4; ++l)
      for (int m = 0; m <= 4; ++m)
        for (int n : channelList(l, m)) CHECK(cls[l][m][n] == doctest::Approx(classicalN(D, l, m, n)).epsilon(1e-13));
  }
}

TEST_CASE("sandwich bounds where no recursion path leaves H_Lambda") {
  for (int D = 3; D <= 5; ++D)
    for (int L = 1; L <= 5; ++L) {
      const ModelParams p = ModelParams::withDefaultK(D, L);
      NTable hat = fuzzyN(p, L, L);
      const double cL = coefC(p, L);
      for (int l = 0; l <= L; ++l)
        for (int m = 0; l + m <= L; ++m)
          for (int n : channelList(l, m)) {
            const double N = classicalN(D, l, m, n);
            CHECK(hat[l][m][n] >= N * (1 - 1e-12));
            CHECK(hat[l][m][n] <= N * std::pow(cL, l) * (1 + 1e-12));
          }
    }
}

TEST_CASE("outside l + m <= Lambda truncation cuts paths and the lower bound fails") {
  const ModelParams p = ModelParams::withDefaultK(3, 4);
  NTable hat = fuzzyN(p, 4, 4);
  // channel above the cutoff: N-hat vanishes while N does not
  CHECK(hat[2][4][6] == 0.0);
  CHECK(classicalN(3, 2, 4, 6) > 0);
  CHECK(hat[2][4][4] < classicalN(3, 2, 4, 4));
}

TEST_CASE("fuzzy harmonics") {
  const ModelParams p = ModelParams::withDefaultK(3, 2);
  FuzzyAlgebra alg = buildFuzzy(p);
  auto T = buildFuzzyHarmonics(alg, 5);
  for (int i = 0; i < 3; ++i) CHECK(maxAbs(T[1][i] - alg.x(i)) < 1e-14);
  for (const MatC& m : T[5]) CHECK(maxAbs(m) < 1e-12);
  // T-hat_2^{11} = x1 x1 - (1/3) sum_j x^j x^j
  MatC want = alg.x(0) * alg.x(0) - alg.xsq() / 3.0;
  CHECK(maxAbs(T[2][0] - want) < 1e-13);
}

TEST_CASE("convergence examples") {
  Polynomial c = Polynomial::constant(3, 2.5), phi = parsePolynomial("t1*t2 + 0.5", 3);
  for (const auto& r : convergenceExperiment(3, c, phi, {2, 3, 4}).rows) CHECK(r.norm < 1e-12);

  ConvergenceTable t = convergenceExperiment(3, Polynomial::variable(3, 0), Polynomial::constant(3, 1.0), {1, 2, 3, 4, 5, 6});
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const ModelParams q = ModelParams::withDefaultK(3, t.rows[i].Lambda);
    CHECK(t.rows[i].norm == doctest::Approx(std::abs(coefC(q, 1) - 1) * std::sqrt(oracle::sphereArea(3) / 3)));
    CHECK(t.rows[i].norm <= t.rows[i].bound);
    if (i) CHECK(t.rows[i].norm < t.rows[i - 1].norm);
  }
}
