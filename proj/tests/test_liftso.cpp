#include "fsph/liftso.hpp"
#include "fsph/suites.hpp"

#include <doctest.h>

#include <numbers>

using namespace fsph;

namespace {

void requirePass(const Report& r) {
  for (const Check& c : r.checks()) {
    INFO(c.id << ": " << c.relation << " residual " << c.residual << " tol " << c.tolerance);
    CHECK((c.pass || c.skipped));
  }
}

}  // namespace

TEST_CASE("vector irrep of so(3)") {
  LiftedIrrep v = buildLifted(2, 1);
  CHECK(v.N() == 3);
  Eigen::SelfAdjointEigenSolver<MatC> es(v.L(0, 1));
  CHECK(es.eigenvalues()[0] == doctest::Approx(-1.0));
  CHECK(std::abs(es.eigenvalues()[1]) < 1e-14);
  CHECK(es.eigenvalues()[2] == doctest::Approx(1.0));
}

TEST_CASE("Casimir and branching") {
  LiftedIrrep v = buildLifted(3, 2);
  CHECK(maxAbs(v.casimir() - 8.0 * MatC::Identity(v.N(), v.N())) < 1e-12);
  for (int D = 2; D <= 4; ++D)
    for (int L = 0; L <= 3; ++L) {
      LiftedIrrep w = buildLifted(D, L);
      CHECK(w.N() == dimTruncated(D, L));
      requirePass(verifyLiftedStructure(w));
      requirePass(verifyLiftedLAction(w));
    }
}

TEST_CASE("branching coefficients") {
  CHECK(bCoefficient(3, 2, 0, 1) == doctest::Approx(-0.25));
  const BranchingData br = branchingCoefficients(ModelParams::withDefaultK(3, 2));
  CHECK(br.b[0][1] == doctest::Approx(-0.25));
  CHECK(std::abs(br.a[1] / br.a[0]) == doctest::Approx(std::sqrt(2.0 / 4)));
  CHECK(br.p[2].size() == 1);
  CHECK(br.p[2][0] == doctest::Approx(1.0));
  for (int D = 2; D <= 5; ++D)
    for (int L = 0; L <= 5; ++L) {
      const ModelParams p = ModelParams::withDefaultK(D, L);
      const BranchingData b = branchingCoefficients(p);
      for (int l = 0; l <= L; ++l)
        for (int kap = 0; 2 * kap <= L - l; ++kap)
          CHECK(b.b[l][kap] == doctest::Approx(bCoefficient(D, L, l, kap)).epsilon(1e-12));
      requirePass(verifyBranching(p, b));
    }
}

TEST_CASE("mu and m maps") {
  const ModelParams p = ModelParams::withExplicitK(3, 1, 16);
  CHECK(muMap(p, 0) == doctest::Approx(std::sqrt(1 + 1.0 / 16) / std::sqrt(3.0)));
  CHECK_THROWS_AS(muMap(p, 1), ArgumentError);
  CHECK(aSquared(3, 123.0) == 123.0);
  for (int D = 3; D <= 4; ++D)
    for (int L = 1; L <= 5; ++L)
      for (double k : {1e2, 1e4}) {
        const ModelParams q = ModelParams::withExplicitK(D, L, k);
        for (int l = 0; l < L; ++l) {
          CHECK(mMap(q, l) * mMap(q, l + 1) == doctest::Approx(muMap(q, l)).epsilon(1e-10));
          // |mu|^2 (L-l)(L+l+D-1) = c_{l+1}^2
          const double c = coefC(q, l + 1);
          CHECK(muMap(q, l) * muMap(q, l) * (L - l) * (L + l + D - 1) == doctest::Approx(c * c));
        }
      }
}

TEST_CASE("log Gamma") {
  for (double x : {0.5, 1.0, 2.5, 7.25, 30.0}) CHECK(logGamma(cplx(x, 0)).real() == doctest::Approx(std::lgamma(x)));
  // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
  for (double y : {0.3, 2.0, 10.0})
    CHECK(2 * logGamma(cplx(0.5, y)).real() == doctest::Approx(std::log(std::numbers::pi / std::cosh(std::numbers::pi * y))));
}

TEST_CASE("isomorphism with the fuzzy algebra") {
  for (int D = 2; D <= 3; ++D)
    for (int L = 0; L <= 3; ++L) {
      const ModelParams p = ModelParams::withDefaultK(D, L);
      FuzzyAlgebra alg = buildFuzzy(p);
      LiftedIrrep v = buildLifted(D, L);
      BranchingData br = branchingCoefficients(p);
      requirePass(verifyIsomorphism(alg, v, br));
      MatC U = isomorphismUnitary(v, br);
      CHECK(maxAbs(U.adjoint() * U - MatC::Identity(U.cols(), U.cols())) < 1e-10);
    }
  // hand-sized case
  const ModelParams p = ModelParams::withExplicitK(2, 1, 4);
  FuzzyAlgebra alg = buildFuzzy(p);
  LiftedIrrep v = buildLifted(2, 1);
  BranchingData br = branchingCoefficients(p);
  requirePass(verifyIsomorphism(alg, v, br));
}

TEST_CASE("parity and reflections through SO(D+1)") {
  for (int D = 2; D <= 3; ++D) {
    const ModelParams p = ModelParams::withDefaultK(D, 2);
    FuzzyAlgebra alg = buildFuzzy(p);
    LiftedIrrep v = buildLifted(D, 2);
    BranchingData br = branchingCoefficients(p);
    for (const MatD& g : signedPermutations(D)) requirePass(verifyParityRotation(alg, v, br, g, "signed permutation"));
  }
}
