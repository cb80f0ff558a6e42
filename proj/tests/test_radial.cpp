#include "fsph/radial.hpp"

#include <doctest.h>

#include <cmath>

using namespace fsph;

TEST_CASE("harmonic spectrum") {
  for (int D = 2; D <= 5; ++D)
    for (int L = 0; L <= 6; ++L) {
      ConfinementModel m(ModelParams::withDefaultK(D, L));
      CHECK(std::abs(m.energy(0, 0)) < 1e-12 * std::sqrt(m.k));
    }
  ConfinementModel m(ModelParams::withExplicitK(3, 2, 1e4));
  CHECK(std::abs(m.energy(0, 1) - 2) <= 5 / std::sqrt(m.k));
  CHECK(m.b(0) == 0.0);
  CHECK(m.b(1) == 2.0);
  CHECK(m.kl(1) == doctest::Approx(2e4 + 6));
}

TEST_CASE("cutoff selection") {
  for (int D = 2; D <= 5; ++D)
    for (int L = 0; L <= 8; ++L) {
      ConfinementModel m(ModelParams::withDefaultK(D, L));
      std::vector<std::pair<int, int>> want;
      for (int l = 0; l <= L; ++l) want.emplace_back(0, l);
      CHECK(cutoffSelection(m, 3, L + 3) == want);
      SpectrumTable t = spectrumHarmonic(m);
      CHECK(t.excitedMargin > 0);
    }
}

TEST_CASE("exact energies of the top level exceed the cutoff at default k") {
  // the O(k^-1/2) correction to E_{0,Lambda} is O(1) along the default rule
  ConfinementModel m(ModelParams::withDefaultK(3, 4));
  CHECK(m.energy(0, 4) > m.cutoff());
  CHECK(m.energyLeading(0, 4) == doctest::Approx(m.cutoff()));
}

TEST_CASE("radial integrals") {
  ConfinementModel m(ModelParams::withExplicitK(3, 2, 1e4));
  for (int l = 0; l <= 2; ++l) CHECK(std::abs(radialIntegralAsymptotic(m, l, l, {1.0}) - 1) < std::pow(m.k, -1.5));
  const double rho = radialRho(m, 1);
  CHECK(std::abs(rho - std::sqrt(1 + 1 / m.k)) < 10 * std::pow(m.k, -1.5));
  CHECK(std::abs(rho - coefC(3, 2, m.k, 1)) < 10 * std::pow(m.k, -1.5));
  for (int l = 0; l <= 2; ++l)
    for (int L = 0; L <= 2; ++L)
      CHECK(std::abs(rHat(m, l, L) - 1 - (m.b(l) + m.b(L)) / (4 * m.k)) < 10 * std::pow(m.k, -1.5));
  CHECK_THROWS_AS(radialRho(m, 0), ArgumentError);
}

TEST_CASE("rho and c differ at first order unless D = 3") {
  for (int D = 2; D <= 5; ++D) {
    const double k = 1e4;
    ConfinementModel m(ModelParams::withExplicitK(D, 2, k));
    const double diff = radialRho(m, 1) - coefC(D, 2, k, 1);
    CHECK(std::abs(diff + 3.0 * (D - 1) * (D - 3) / (8 * k)) < 20 * std::pow(k, -1.5));
  }
}

TEST_CASE("finite-difference eigenvalues") {
  ConfinementModel m(ModelParams::withExplicitK(3, 2, 1e4));
  auto V = defaultPotential(m);
  for (int l = 0; l <= 2; ++l) {
    OdeResult r = odeValidate(m, V, l, 0);
    CHECK(r.constant <= 10);
    CHECK(r.tailWeight <= 1e-3);
    CHECK(r.lastChange <= 1e-6);
    CHECK(r.r.size() == r.g.size());
  }
  OdeResult g = odeValidate(m, V, 0, 0);
  CHECK(std::abs(g.energy) < 10 / std::sqrt(m.k));
  OdeResult one = odeValidate(m, V, 1, 0);
  CHECK(std::abs(one.energy - 2) < 10 / std::sqrt(m.k));
}

TEST_CASE("ODE solver on an exactly solvable well") {
  // -g'' + 2k (r-1)^2 g: levels (2n+1) sqrt(2k) up to exponentially small wall effects
  ConfinementModel m(ModelParams::withExplicitK(3, 0, 400));
  auto V = [&](double r) { return 2 * m.k * (r - 1) * (r - 1); };
  for (int n = 0; n <= 2; ++n) {
    OdeOptions opt;
    opt.rMin = -2;
    opt.rMax = 4;
    // b(0) = 0 for D = 3, so the centrifugal term drops out
    OdeResult r = odeValidate(m, V, 0, n, opt);
    CHECK(r.energy == doctest::Approx((2 * n + 1) * std::sqrt(2 * m.k)).epsilon(1e-6));
  }
}
