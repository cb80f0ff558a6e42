#include "oracles.hpp"

#include "fsph/symtensor.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace fsph;

namespace {

SymTensor randomSym(int D, int l, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  SymTensor t(D, l);
  for (int a = 0; a < t.coeffs().size(); ++a) t.coeffs()[a] = cplx(u(rng), u(rng));
  return t;
}

}  // namespace

TEST_CASE("projector leaves ranks 0 and 1 unchanged") {
  std::mt19937 rng(1);
  for (int D = 2; D <= 5; ++D)
    for (int l = 0; l <= 1; ++l) {
      SymTensor t = randomSym(D, l, rng);
      CHECK(maxAbs(projectTraceFree(t).coeffs() - t.coeffs()) == 0.0);
    }
}

TEST_CASE("projector on e1 x e1 in D=3") {
  SymTensor t(3, 2);
  t.at({0, 0}) = 1;
  SymTensor p = projectTraceFree(t);
  CHECK(p({0, 0}).real() == doctest::Approx(2.0 / 3));
  CHECK(p({1, 1}).real() == doctest::Approx(-1.0 / 3));
  CHECK(p({2, 2}).real() == doctest::Approx(-1.0 / 3));
  CHECK(std::abs(p({0, 1})) < 1e-15);
  CHECK(std::abs(contractPair(p, 0, 1).coeffs()[0]) < 1e-15);
}

TEST_CASE("x1 x2 x3 is already trace-free") {
  SymTensor t = monomialTensor(3, sortedIndex({0, 1, 2}));
  CHECK(maxAbs(projectTraceFree(t).coeffs() - t.coeffs()) < 1e-15);
}

TEST_CASE("projector matches the detracing formula") {
  std::mt19937 rng(2);
  for (int D = 2; D <= 5; ++D)
    for (int l = 0; l <= 5; ++l) {
      SymTensor t = randomSym(D, l, rng);
      Polynomial h = oracle::detrace(Polynomial::fromTensor(t), l);
      SymTensor want = h.homogeneousTensor(l);
      CHECK(maxAbs(projectTraceFree(t).coeffs() - want.coeffs()) < 1e-12);
    }
}

TEST_CASE("M(l+1) examples") {
  // l = 1 on e1 x e2: symmetrization, no trace part
  DenseTensor x(3, 2);
  x({0, 1}) = 1;
  DenseTensor y = applyPair(x, 0, pairM(3, 1));
  CHECK(y({0, 1}).real() == doctest::Approx(0.5));
  CHECK(y({1, 0}).real() == doctest::Approx(0.5));
  // pure trace input is killed for any D
  for (int D = 2; D <= 6; ++D) {
    DenseTensor d(D, 2);
    for (int i = 0; i < D; ++i) d({i, i}) = 1;
    CHECK(maxAbs(applyPair(d, 0, pairM(D, 1)).data) < 1e-15);
  }
  CHECK(maxAbs(pairM(4, 0) - pairIdentity(4)) == 0.0);
  MCoefficients c = mCoefficients(3, 2);
  CHECK(c.identity == doctest::Approx(1.0 / 3));
  CHECK(c.permutation == doctest::Approx(2.0 / 3));
}

TEST_CASE("pair operators are projectors with the expected relations") {
  for (int D = 2; D <= 5; ++D) {
    const MatD S = pairSymmetrizer(D), A = pairAntisymmetrizer(D), T = pairTrace(D), F = pairTraceFree(D);
    CHECK(maxAbs(S * S - S) < 1e-15);
    CHECK(maxAbs(T * T - T) < 1e-15);
    CHECK(maxAbs(F * F - F) < 1e-15);
    CHECK(maxAbs(S + A - pairIdentity(D)) < 1e-15);
    CHECK(maxAbs(F * T) < 1e-15);
  }
}

TEST_CASE("contractions") {
  SymTensor delta(3, 2);
  for (int i = 0; i < 3; ++i) delta.at({i, i}) = 1;
  CHECK(contractPair(delta, 0, 1).coeffs()[0].real() == doctest::Approx(3.0));

  // sum_m P^{(i m)}_{(j m)} = (1/2)[D + 1 - 2/D] delta_ij for P on rank 2
  const auto oracle = projectorOracle(3, 2);
  const IndexSpace& s = oracle->space(2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sum = 0;
      for (int m = 0; m < 3; ++m)
        sum += oracle->component(2, s.position(sortedIndex({i, m})), s.position(sortedIndex({j, m})));
      CHECK(sum == doctest::Approx(i == j ? 5.0 / 3 : 0.0));
    }
}

TEST_CASE("dense recursion: both ansaetze agree and match the compressed projector") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int D = 2; D <= 4; ++D)
    for (int l = 2; l <= 4; ++l) {
      DenseTensor x(D, l);
      for (int a = 0; a < x.data.size(); ++a) x.data[a] = u(rng);
      DenseTensor a = applyProjectorDense(x, Ansatz::LeadingSlots);
      DenseTensor b = applyProjectorDense(x, Ansatz::TrailingSlots);
      CHECK(maxAbs(a.data - b.data) < 1e-12);
      CHECK(symmetryDefect(a) < 1e-12);
      CHECK(maxAbs(contractPairDense(a, 0, l - 1).data) < 1e-12);
      // the result is the trace-free part of its own symmetrization
      SymTensor sa = fromDense(a);
      CHECK(maxAbs(projectTraceFree(sa).coeffs() - sa.coeffs()) < 1e-12);
    }
}

TEST_CASE("pairing sums") {
  PairingSum g0(0), g2(2), g4(4);
  CHECK(g0.trace(5) == 1.0);
  CHECK(g2.trace(3) == doctest::Approx(6.0));
  CHECK(g2.component({1, 1}) == doctest::Approx(2.0));
  CHECK(g4.trace(3) == doctest::Approx(120.0));
  CHECK(g4.traceByPairing(3) == doctest::Approx(120.0));
  for (int N = 0; N <= 6; N += 2) {
    PairingSum g(N);
    std::vector<int> idx(N);
    for (int trial = 0; trial < 20; ++trial) {
      for (int a = 0; a < N; ++a) idx[a] = (trial * 7 + a * (trial + 3)) % 3;
      CHECK(g.component(idx) == doctest::Approx(g.componentByPairing(idx)));
    }
  }
}

TEST_CASE("sphere moments") {
  CHECK(sphereMomentIntegral(3, {0, 0}) == doctest::Approx(4 * std::numbers::pi / 3));
  CHECK(sphereMomentIntegral(3, {0, 1, 1}) == 0.0);
  CHECK(sphereMomentIntegral(2, {}) == doctest::Approx(2 * std::numbers::pi));
  for (int D = 2; D <= 5; ++D) {
    CHECK(sphereMeasure(D) == doctest::Approx(oracle::sphereArea(D)));
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        std::vector<int> counts(D, 0);
        counts[0] = a;
        counts[D - 1] += b;
        CHECK(sphereMomentFromCounts(counts) == doctest::Approx(oracle::monomialIntegral(counts)));
      }
  }
}

TEST_CASE("orthogonal transforms commute with the projector") {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  MatD M(4, 4);
  for (int i = 0; i < 16; ++i) M.data()[i] = g(rng);
  MatD Q = Eigen::HouseholderQR<MatD>(M).householderQ();
  SymTensor t = randomSym(4, 3, rng);
  SymTensor a = projectTraceFree(transformTensor(t, Q)), b = transformTensor(projectTraceFree(t), Q);
  CHECK(maxAbs(a.coeffs() - b.coeffs()) < 1e-12);
}
