#include "fsph/suites.hpp"

#include "fsph/cg.hpp"
#include "fsph/liftso.hpp"
#include "fsph/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

namespace fsph {

namespace {

std::string tagD(int D) { return "D=" + std::to_string(D); }
std::string tagP(const ModelParams& p) {
  char k[32];
  std::snprintf(k, sizeof k, "%g", p.k);
  return "D=" + std::to_string(p.D) + " Lambda=" + std::to_string(p.Lambda) + " k=" + k;
}

SymTensor randomSym(int D, int l, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  SymTensor t(D, l);
  for (int a = 0; a < t.coeffs().size(); ++a) t.coeffs()[a] = cplx(u(rng), u(rng));
  return t;
}

DenseTensor randomDense(int D, int l, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  DenseTensor t(D, l);
  for (int a = 0; a < t.data.size(); ++a) t.data[a] = u(rng);
  return t;
}

VecD randomUnit(int D, std::mt19937& rng) {
  std::normal_distribution<double> g;
  VecD v(D);
  for (int i = 0; i < D; ++i) v[i] = g(rng);
  return v / v.norm();
}

// Keeps the largest residual per check id across repeated runs.
void mergeMax(Report& into, const Report& from, const std::string& suffix) {
  for (const Check& c : from.checks()) {
    Check n = c;
    n.relation += suffix;
    bool found = false;
    for (const Check& e : into.checks())
      if (e.id == c.id) found = true;
    if (!found) {
      into.add(n);
      continue;
    }
    Report merged;
    for (const Check& e : into.checks()) {
      if (e.id == c.id && !(c.residual <= e.residual)) merged.add(n);
      else merged.add(e);
    }
    into = merged;
  }
}

}  // namespace

std::vector<Eigen::MatrixXd> signedPermutations(int D) {
  std::vector<int> perm(D);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Eigen::MatrixXd> out;
  do {
    for (int signs = 0; signs < (1 << D); ++signs) {
      MatD Q = MatD::Zero(D, D);
      for (int i = 0; i < D; ++i) Q(perm[i], i) = (signs >> i & 1) ? -1.0 : 1.0;
      out.push_back(Q);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------

Report projectorSuite(int D, int lmax) {
  std::mt19937 rng(1000 + D);
  Report rep;
  const std::string t = tagD(D) + " l<=" + std::to_string(lmax);
  double idem = 0, trace = 0, rank = 0;
  for (int l = 0; l <= lmax; ++l) {
    SymTensor x = randomSym(D, l, rng);
    SymTensor p = projectTraceFree(x);
    idem = std::max(idem, maxAbs(projectTraceFree(p).coeffs() - p.coeffs()) / maxAbs(x.coeffs()));
    if (l >= 2) trace = std::max(trace, maxAbs(contractPair(p, 0, 1).coeffs()) / maxAbs(x.coeffs()));
    Eigen::FullPivLU<MatD> lu(projectorOracle(D, l)->matrix(l));
    lu.setThreshold(1e-10);
    rank = std::max(rank, std::abs(double(lu.rank()) - double(dimV(D, l))));
  }
  rep.add(makeCheck("projector.idempotent", "P(P t) = P t, " + t, idem, 1e-12));
  rep.add(makeCheck("projector.tracefree", "delta contraction of P t vanishes, " + t, trace, 1e-12));
  rep.add(makeCheck("projector.rank", "rank of P on symmetric tensors = dim V^l, " + t, rank, 0));

  double ansatz = 0, compressed = 0;
  for (int l = 2; l <= lmax; ++l) {
    DenseTensor x = randomDense(D, l, rng);
    DenseTensor a = applyProjectorDense(x, Ansatz::LeadingSlots);
    DenseTensor b = applyProjectorDense(x, Ansatz::TrailingSlots);
    ansatz = std::max(ansatz, maxAbs(a.data - b.data));
    SymTensor s = randomSym(D, l, rng);
    DenseTensor c = applyProjectorDense(toDense(s), Ansatz::LeadingSlots);
    compressed = std::max(compressed, maxAbs(c.data - toDense(projectTraceFree(s)).data) / maxAbs(s.coeffs()));
  }
  rep.add(makeCheck("projector.ansatz", "leading-slot and trailing-slot recursions agree, " + t, ansatz, 1e-12));
  rep.add(makeCheck("projector.compressed", "dense recursion = compressed action on symmetric input, " + t,
                    compressed, 1e-12));

  // A_12 P_23 P_12 = P_23 P_12 A_23 on rank-3 tensors.
  double braid = 0;
  const MatD P = pairPermutation(D);
  for (const MatD& A : {pairTrace(D), pairTraceFree(D)}) {
    DenseTensor x = randomDense(D, 3, rng);
    DenseTensor lhs = applyPair(applyPair(applyPair(x, 0, P), 1, P), 0, A);
    DenseTensor rhs = applyPair(applyPair(applyPair(x, 1, A), 0, P), 1, P);
    braid = std::max(braid, maxAbs(lhs.data - rhs.data));
  }
  rep.add(makeCheck("projector.braid", "A_12 P_23 P_12 = P_23 P_12 A_23 for A = Pt, P, " + tagD(D), braid, 1e-12));

  double mres = 0;
  for (int l = 0; l <= lmax; ++l) {
    MatD want = (pairIdentity(D) + l * P - (2.0 * D * l / (D + 2.0 * l - 2.0)) * pairTrace(D)) / (l + 1.0);
    mres = std::max(mres, maxAbs(pairM(D, l) - want));
  }
  rep.add(makeCheck("projector.M", "M(l+1) = [1 + l P - 2Dl/(D+2l-2) Pt]/(l+1), " + t, mres, 1e-14));

  double gres = 0;
  for (int N = 0; N <= 8; N += 2) {
    PairingSum G(N);
    gres = std::max(gres, std::abs(G.traceByPairing(D) - G.trace(D)) / G.trace(D));
  }
  rep.add(makeCheck("projector.pairing", "tr G_N by explicit pairings = N!! D(D+2)...(D+N-2), N<=8, " + tagD(D), gres,
                    1e-14));
  return rep;
}

Report harmonicSuite(int D, int Lambda) {
  std::mt19937 rng(2000 + D);
  const std::string t = tagD(D) + " Lambda=" + std::to_string(Lambda);
  Report rep;
  TruncatedSpace B(D, Lambda);
  double dim = std::abs(double(B.N()) - double(dimTruncated(D, Lambda))) +
               std::abs(double(B.N()) - double(dimV(D + 1, Lambda)));
  double ortho = 0, herm = 0, cas = 0, tact = 0, trfree = 0;
  for (int l = 0; l <= Lambda; ++l) {
    const HarmonicSpace& s = B.space(l);
    dim += std::abs(double(s.dim()) - double(dimV(D, l)));
    const MatD& Bt = s.basisTensors();
    ortho = std::max(ortho, maxAbs(Bt.transpose() * s.weights().asDiagonal() * Bt - MatD::Identity(s.dim(), s.dim())));
    MatC C = MatC::Zero(s.dim(), s.dim());
    for (int h = 0; h < D; ++h)
      for (int k = h + 1; k < D; ++k) {
        MatC L = actionL(s, h, k);
        herm = std::max(herm, maxAbs(L - L.adjoint()));
        C += L * L;
      }
    cas = std::max(cas, maxAbs(C - casimirE(D, l) * MatC::Identity(s.dim(), s.dim())) / std::max(1.0, casimirE(D, l)));

    // t^h phi = raise + r^2 lower as homogeneous polynomials.
    std::mt19937 rng(500 + 10 * D + l);
    std::uniform_real_distribution<double> u(-1, 1);
    VecC coords(s.dim());
    for (auto& c : coords) c = cplx(u(rng), u(rng));
    SymTensor phi = s.tensor(coords);
    for (int h = 0; h < D; ++h) {
      Polynomial lhs = Polynomial::variable(D, h) * Polynomial::fromTensor(phi);
      lhs -= Polynomial::fromTensor(raiseT(*projectorOracle(D, l + 1), phi, h));
      if (l > 0) lhs -= Polynomial::fromTensor(lowerT(phi, h)).timesRadiusSquared();
      tact = std::max(tact, lhs.maxAbsCoeff() / std::max(1.0, maxAbs(phi.coeffs())));
    }
  }
  rep.add(makeCheck("harmonic.dim", "dim V^l, N = dimTruncated = dim V^Lambda_{D+1}, " + t, dim, 0));
  rep.add(makeCheck("harmonic.orthonormal", "basis orthonormal under Q_l, " + t, ortho, 1e-12));
  rep.add(makeCheck("harmonic.L.hermitian", "L_hk Hermitian, " + t, herm, 1e-12));
  rep.add(makeCheck("harmonic.casimir", "sum L_hk^2 = E_l on V^l, " + t, cas, 1e-12));
  rep.add(makeCheck("harmonic.tAction", "t^h T_l = T_{l+1} + d_l P T_{l-1}, " + t, tact, 1e-12));

  // Round trip of a random polynomial of degree Lambda through the harmonic parts.
  std::uniform_real_distribution<double> u(-1, 1);
  Polynomial p(D);
  for (int g = 0; g <= Lambda; ++g) {
    const IndexSpace& s = *indexSpace(D, g);
    for (int a = 0; a < s.size(); ++a) {
      Polynomial mono = Polynomial::constant(D, u(rng));
      for (int e : s[a].entries) mono = mono * Polynomial::variable(D, e);
      p += mono;
    }
  }
  std::vector<SymTensor> parts = decomposePolynomial(p, Lambda);
  for (const auto& ph : parts)
    if (ph.rank() >= 2) trfree = std::max(trfree, maxAbs(contractPair(ph, 0, 1).coeffs()));
  Polynomial back = composePolynomial(parts, D);
  double round = 0;
  for (int s = 0; s < 20; ++s) {
    VecD x = randomUnit(D, rng);
    round = std::max(round, std::abs(back.evaluate(x) - p.evaluate(x)));
  }
  rep.add(makeCheck("harmonic.decompose", "sum_l phi^l . t reproduces p on the sphere, " + t, round, 1e-11));
  rep.add(makeCheck("harmonic.decompose.tracefree", "every phi^l trace-free, " + t, trfree, 1e-11));
  return rep;
}

Report fuzzySuite(const ModelParams& p) {
  FuzzyAlgebra alg = buildFuzzy(p);
  Report rep;
  rep.append(verifyStructure(alg));
  rep.append(verifySnyder(alg));
  rep.append(verifyXsq(alg));
  rep.append(verifyAuxRelations(alg));
  const int N = alg.N();
  if (N <= 30) {
    GenerationResult g = generateAlgebra(alg);
    double gap = 0;
    const double comm = commutantDimension(alg, 1e-10, &gap);
    rep.add(makeCheck("fuzzy.generation", "words in x^i span M_N, " + tagP(p), double(N * N - g.dimension), 0,
                      "span " + std::to_string(g.dimension) + " of " + std::to_string(N * N)));
    rep.add(makeCheck("fuzzy.commutant", "commutant of {x^i} is C 1, " + tagP(p), std::abs(comm - 1), 0,
                      "relative singular gap " + std::to_string(gap)));
  } else {
    rep.add(skippedCheck("fuzzy.generation", "words in x^i span M_N, " + tagP(p), "N > 30"));
  }
  Report eq;
  if (p.D <= 3) {
    for (const MatD& Q : signedPermutations(p.D)) mergeMax(eq, verifyEquivariance(alg, Q, "signed permutation"), "");
  } else {
    MatD Q = MatD::Identity(p.D, p.D);
    Q(0, 0) = -1;
    mergeMax(eq, verifyEquivariance(alg, Q, "reflection of axis 1"), "");
    mergeMax(eq, verifyEquivariance(alg, -MatD::Identity(p.D, p.D), "parity"), "");
  }
  std::mt19937 rng(3000 + p.D);
  std::normal_distribution<double> g;
  MatD M(p.D, p.D);
  for (int i = 0; i < M.size(); ++i) M.data()[i] = g(rng);
  MatD R = Eigen::HouseholderQR<MatD>(M).householderQ();
  Report rot = verifyEquivariance(alg, R, "random orthogonal");
  for (const Check& c : rot.checks()) {
    Check n = c;
    n.id += ".rotation";
    eq.add(n);
  }
  rep.append(eq);
  return rep;
}

Report cgSuite(const ModelParams& p) {
  const int D = p.D, L = p.Lambda;
  const std::string t = tagP(p);
  Report rep;
  double oracle = 0;
  int compared = 0;
  for (int l = 0; l <= 10; ++l)
    for (int m = 0; l + m <= 10; ++m)
      for (int n : channelList(l, m)) {
        if (l + m + n > 10) continue;
        const double got = classicalNByIntegration(D, l, m, n);
        if (std::isnan(got)) continue;
        oracle = std::max(oracle, std::abs(got - classicalN(D, l, m, n)) / classicalN(D, l, m, n));
        ++compared;
      }
  rep.add(makeCheck("cg.closedForm", "closed-form N = sphere-integral pairing sums, l+m+n<=10, " + tagD(D), oracle,
                    1e-10, std::to_string(compared) + " channels"));

  NTable cls = classicalNRecursion(D, 6, 6);
  double rec = 0;
  for (int l = 0; l <= 6; ++l)
    for (int m = 0; m <= 6; ++m)
      for (int n : channelList(l, m)) rec = std::max(rec, std::abs(cls[l][m][n] - classicalN(D, l, m, n)) / classicalN(D, l, m, n));
  rep.add(makeCheck("cg.recursion.classical", "N-hat recursion with c = 1 reproduces N, l,m<=6, " + tagD(D), rec,
                    1e-12));

  FuzzyAlgebra alg = buildFuzzy(p);
  const int lmax = 2 * L + 1;
  NTable hat = fuzzyN(p, lmax, L);
  if (alg.N() <= 40) {
    SymmetrizedWords W(alg, lmax);
    std::mt19937 rng(4000 + D);
    double direct = 0;
    for (int l = 0; l <= lmax; ++l) {
      SymTensor f = projectTraceFree(randomSym(D, l, rng));
      MatC F = W.apply(f);
      const TruncatedSpace& B = alg.basis();
      for (int m = 0; m <= L; ++m) {
        const HarmonicSpace& s = B.space(m);
        for (int b = 0; b < s.dim(); ++b) {
          VecC got = F.middleCols(B.offset(m), s.dim()).col(b);
          VecC want = VecC::Zero(alg.N());
          for (int n : channelList(l, m)) {
            if (n > L) continue;
            want.segment(B.offset(n), B.space(n).dim()) +=
                hat[l][m][n] * B.space(n).coordinates(channelTensor(f, s.basisTensor(b), n));
          }
          direct = std::max(direct, maxAbs(got - want) / std::max(1.0, maxAbs(F)));
        }
      }
    }
    rep.add(makeCheck("cg.direct", "T-hat matrices = N-hat channel formula, l<=2Lambda+1, " + t, direct, 1e-9));
  } else {
    rep.add(skippedCheck("cg.direct", "T-hat matrices = N-hat channel formula, " + t, "N > 40"));
  }

  double zero = 0;
  for (int l = 0; l <= lmax; ++l)
    for (int m = 0; m <= L; ++m)
      for (int n : channelList(l, m))
        if (l - m > L || n > L) zero = std::max(zero, std::abs(hat[l][m][n]));
  rep.add(makeCheck("cg.zero", "N-hat = 0 if l-m > Lambda or n > Lambda, " + t, zero, 0));

  // N <= N-hat <= N c_Lambda^l whenever l + m <= Lambda, so that no path of the
  // recursion leaves H_Lambda; needs c_1 >= 1, which fails for D = 2.
  if (D >= 3) {
    const double cL = coefC(p, L);
    double viol = 0;
    int outside = 0;
    for (int l = 0; l <= L; ++l)
      for (int m = 0; m <= L; ++m)
        for (int n : channelList(l, m)) {
          const double N = classicalN(D, l, m, n), H = hat[l][m][n];
          const double v = std::max(N - H, H - N * std::pow(cL, l)) / N;
          if (l + m <= L) viol = std::max(viol, std::max(0.0, v));
          else if (v > 1e-12) ++outside;
        }
    rep.add(makeCheck("cg.bounds", "N <= N-hat <= N c_Lambda^l for l+m <= Lambda, " + t, viol, 1e-12,
                      std::to_string(outside) + " violations with l+m > Lambda, where truncation cuts paths"));
  } else {
    rep.add(skippedCheck("cg.bounds", "N <= N-hat <= N c_Lambda^l, " + t, "c_1 < 1 for D = 2"));
  }
  return rep;
}

Report liftSuite(const ModelParams& p) {
  FuzzyAlgebra alg = buildFuzzy(p);
  LiftedIrrep lifted = buildLifted(p.D, p.Lambda);
  BranchingData br = branchingCoefficients(p);
  Report rep;
  rep.append(verifyLiftedStructure(lifted));
  rep.append(verifyLiftedLAction(lifted));
  rep.append(verifyBranching(p, br));
  rep.append(verifyIsomorphism(alg, lifted, br));
  MatD g = MatD::Identity(p.D, p.D);
  g(0, 0) = -1;
  Report rot = verifyParityRotation(alg, lifted, br, g, "reflection of axis 1");
  mergeMax(rot, verifyParityRotation(alg, lifted, br, -MatD::Identity(p.D, p.D), "parity"), "");
  rep.append(rot);
  return rep;
}

Report radialSuite(const ModelParams& p) {
  ConfinementModel m(p);
  const std::string t = tagP(p);
  Report rep;
  rep.add(makeCheck("radial.ground", "E_{0,0} = 0, " + t, std::abs(m.energy(0, 0)), 1e-12 * std::sqrt(m.k)));

  const int lMax = p.Lambda + 2;
  auto sel = cutoffSelection(m, 2, lMax);
  std::vector<std::pair<int, int>> want;
  for (int l = 0; l <= p.Lambda; ++l) want.emplace_back(0, l);
  auto exact = cutoffSelectionExact(m, 2, lMax);
  rep.add(makeCheck("radial.cutoff", "kept states = {(0,l): l <= Lambda}, " + t, sel == want ? 0.0 : 1.0, 0,
                    "exact-formula energies keep " + std::to_string(exact.size()) + " states"));
  SpectrumTable spec = spectrumHarmonic(m);
  rep.add(makeCheck("radial.excited", "E_{n,l} > cutoff for n >= 1, " + t, std::max(0.0, -spec.excitedMargin), 0,
                    "margin " + std::to_string(spec.excitedMargin)));

  double rt = 0, rho = 0, chain = 0;
  for (int l = 0; l <= p.Lambda; ++l) {
    const double b = m.b(l);
    // exact remainder is (3b^2/4k^2) / (1 + 3b/2k)
    const double scale = b * b / (m.k * m.k * std::abs(1 + 1.5 * b / m.k));
    rt = std::max(rt, std::abs(m.rTilde(l) - 1 - b / (2 * m.k)) / std::max(1e-300, scale));
  }
  for (int l = 1; l <= p.Lambda; ++l) {
    const double db = m.b(l) - m.b(l - 1), scale = (1 + db * db) * std::pow(m.k, -1.5);
    const double series = radialRho(m, l);
    rho = std::max(rho, std::abs(series - 1 - (m.b(l) + m.b(l - 1)) / (4 * m.k)) / scale);
    chain = std::max(chain, std::abs(series - coefC(p, l)) / scale);
  }
  rep.add(makeCheck("radial.rtilde", "|r~_l - 1 - b/2k| <= b^2 / (k^2 |1 + 3b/2k|), " + t, rt, 1.0));
  if (p.Lambda >= 1) {
    rep.add(makeCheck("radial.rho", "rho_{l-1,l} = 1 + (b_l + b_{l-1})/4k + O(k^-3/2), " + t, rho, 1.0,
                      "residual in units of (1 + db^2) k^-3/2"));
    if (p.D == 3)
      rep.add(makeCheck("radial.rho.c", "rho_{l-1,l} = c_l + O(k^-3/2), " + t, chain, 1.0,
                        "residual in units of (1 + db^2) k^-3/2"));
    else
      rep.add(skippedCheck("radial.rho.c", "rho_{l-1,l} = c_l + O(k^-3/2), " + t,
                           "for D != 3 the two differ by -3(D-1)(D-3)/(8k) at first order"));
  }

  // ODE validation in the regime where the harmonic picture applies.
  const int lOde = std::min(p.Lambda, 2);
  ConfinementModel v(ModelParams::withExplicitK(p.D, lOde, 1e4));
  auto V = defaultPotential(v);
  double worstC = 0, tail = 0;
  for (int l = 0; l <= lOde; ++l) {
    OdeResult r = odeValidate(v, V, l, 0);
    worstC = std::max(worstC, r.constant);
    tail = std::max(tail, r.tailWeight);
  }
  const std::string tv = "D=" + std::to_string(p.D) + " l<=" + std::to_string(lOde) + " k=1e4";
  rep.add(makeCheck("radial.ode", "|E_fd - E_{0,l}| sqrt(k) <= 10, " + tv, worstC, 10.0));
  rep.add(makeCheck("radial.ode.tail", "weight of g^2 outside |r-1| <= 3 k^-1/4, " + tv, tail, 1e-3));
  return rep;
}

Report convergeSuite(int D, const std::vector<int>& lambdas) {
  Polynomial f = Polynomial::variable(D, 0), phi = Polynomial::constant(D, 1.0);
  ConvergenceTable tab = convergenceExperiment(D, f, phi, lambdas);
  double finite = 0, dec = -std::numeric_limits<double>::infinity(), bound = 0;
  std::string vacuous;
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    const auto& r = tab.rows[i];
    if (!std::isfinite(r.norm) || !std::isfinite(r.bound)) finite = 1;
    // With epsilon <= 0 (D = 2, small Lambda) the bound is not positive and says nothing.
    if (r.epsilon > 0) bound = std::max(bound, r.norm - r.bound);
    else vacuous += (vacuous.empty() ? "" : ",") + std::to_string(r.Lambda);
    if (i > 0) dec = std::max(dec, r.norm - tab.rows[i - 1].norm);
  }
  const std::string t = tagD(D) + " f=t1 phi=1";
  Report rep;
  rep.add(makeCheck("converge.finite", "norms and bounds finite, " + t, finite, 0));
  if (tab.rows.size() > 1)
    rep.add(makeCheck("converge.decreasing", "||(f-hat - f) phi|| strictly decreasing, " + t,
                      dec < 0 ? 0.0 : std::max(dec, 1e-300), 0));
  rep.add(makeCheck("converge.bound", "norm <= (exp(Lambda eps) - 1)(||f|| + eta)||phi||, " + t, std::max(0.0, bound),
                    0, vacuous.empty() ? "" : "epsilon <= 0 at Lambda=" + vacuous + ", rows not compared"));
  return rep;
}

}  // namespace fsph
