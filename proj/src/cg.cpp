#include "fsph/cg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fsph {

std::vector<int> channelList(int l, int m) {
  std::vector<int> out;
  for (int n = std::abs(l - m); n <= l + m; n += 2) out.push_back(n);
  return out;
}

bool inChannelList(int l, int m, int n) {
  return n >= std::abs(l - m) && n <= l + m && (l + m - n) % 2 == 0;
}

namespace {

void requireChannel(const char* who, int l, int m, int n) {
  if (l < 0 || m < 0 || !inChannelList(l, m, n))
    throw ArgumentError(std::string(who) + ": n = " + std::to_string(n) + " is not an allowed channel of (" +
                        std::to_string(l) + ", " + std::to_string(m) + ")");
}

}  // namespace

double classicalNPrinted(int D, int l, int m, int n) {
  requireChannel("classicalNPrinted", l, m, n);
  const int r = (l + m - n) / 2;
  return doubleFactorial(D + 2 * n - 2) * factorial(l) * factorial(m) /
         (doubleFactorial(D + 2 * n + 2 * r - 2) * factorial(l - r) * factorial(m - r));
}

double classicalN(int D, int l, int m, int n) {
  requireChannel("classicalN", l, m, n);
  // The r cross pairings between the two factors are unordered; dividing by r!
  // matches both the sphere-integral oracle and the c = 1 recursion.
  return classicalNPrinted(D, l, m, n) / factorial((l + m - n) / 2);
}

SymTensor channelTensor(const SymTensor& f, const SymTensor& phi, int n) {
  const int l = f.rank(), m = phi.rank();
  if (!inChannelList(l, m, n)) throw ArgumentError("channelTensor: channel not allowed");
  return projectTraceFree(contractSymmetrize(f, phi, (l + m - n) / 2));
}

std::map<int, SymTensor> decomposeProductClassical(const SymTensor& f, const SymTensor& phi) {
  std::map<int, SymTensor> out;
  for (int n : channelList(f.rank(), phi.rank())) {
    SymTensor c = channelTensor(f, phi, n);
    c.coeffs() *= classicalN(f.dim(), f.rank(), phi.rank(), n);
    out.emplace(n, std::move(c));
  }
  return out;
}

namespace {

SymTensor randomTraceFree(int D, int rank, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTensor t(D, rank);
  for (int a = 0; a < t.coeffs().size(); ++a) t.coeffs()[a] = u(rng);
  return projectTraceFree(t);
}

}  // namespace

double classicalNByIntegration(int D, int l, int m, int n, unsigned seed) {
  if (!inChannelList(l, m, n)) throw ArgumentError("classicalNByIntegration: channel not allowed");
  std::mt19937 rng(seed + 1000u * l + 37u * m + n);
  SymTensor f = randomTraceFree(D, l, rng);
  SymTensor phi = randomTraceFree(D, m, rng);
  SymTensor chi = channelTensor(f, phi, n);
  const double flat = flatInner(chi, chi).real();
  if (flat < 1e-20 * std::max(1.0, flatNorm(f) * flatNorm(phi))) return std::numeric_limits<double>::quiet_NaN();
  Polynomial prod = Polynomial::fromTensor(chi) * Polynomial::fromTensor(f) * Polynomial::fromTensor(phi);
  return prod.integrateSphere().real() / (Ql(D, n) * flat);
}

NTable fuzzyNRecursion(int D, int lmax, int mmax, const std::function<double(int)>& c) {
  NTable T(lmax + 1, std::vector<std::vector<double>>(mmax + 1));
  for (int m = 0; m <= mmax; ++m) {
    T[0][m].assign(m + 1, 0.0);
    T[0][m][m] = 1.0;
    for (int l = 0; l < lmax; ++l) {
      const auto& prev = T[l][m];
      auto& next = T[l + 1][m];
      next.assign(l + m + 2, 0.0);
      for (int n = 0; n <= l + m + 1; ++n) {
        double v = 0;
        if (n >= 1 && prev[n - 1] != 0) v += c(n) * prev[n - 1];
        if (n + 1 <= l + m && prev[n + 1] != 0) {
          double factor;
          if (n == 0)  // the (D+n-l+m-3)/(D+2n-2) ratio is 1 whenever the channel exists
            factor = (m - l == 1) ? 1.0 / D : 0.0;
          else
            factor = (n - l + m + 1.0) * (D + n - l + m - 3.0) / (2.0 * (D + 2.0 * n) * (D + 2.0 * n - 2.0));
          v += c(n + 1) * prev[n + 1] * factor;
        }
        next[n] = v;
      }
    }
  }
  return T;
}

NTable fuzzyN(const ModelParams& p, int lmax, int mmax) {
  return fuzzyNRecursion(p.D, lmax, mmax, [&](int n) { return coefC(p, n); });
}

NTable classicalNRecursion(int D, int lmax, int mmax) {
  return fuzzyNRecursion(D, lmax, mmax, [](int) { return 1.0; });
}

CgTable cgTable(const ModelParams& p, int l, int m) {
  CgTable t;
  t.D = p.D;
  t.l = l;
  t.m = m;
  t.channels = channelList(l, m);
  NTable hat = fuzzyN(p, l, m);
  for (int n : t.channels) {
    t.classical.push_back(classicalN(p.D, l, m, n));
    t.fuzzy.push_back(hat[l][m][n]);
  }
  return t;
}

// ---------------------------------------------------------------------------

SymmetrizedWords::SymmetrizedWords(const FuzzyAlgebra& alg, int maxRank) : D_(alg.D()), maxRank_(maxRank) {
  const int N = alg.N();
  S_.resize(maxRank + 1);
  S_[0].push_back(MatC::Identity(N, N));
  for (int s = 1; s <= maxRank; ++s) {
    const IndexSpace& cur = *indexSpace(D_, s);
    const IndexSpace& low = *indexSpace(D_, s - 1);
    S_[s].resize(cur.size());
    for (int b = 0; b < cur.size(); ++b) {
      MatC acc = MatC::Zero(N, N);
      const IndexKey key = cur.key(b);
      for (int c = 0; c < D_; ++c) {
        if (countIn(key, c) == 0) continue;
        acc.noalias() += alg.x(c) * S_[s - 1][low.position(key - keyUnit(c))];
      }
      S_[s][b] = std::move(acc);
    }
  }
}

MatC SymmetrizedWords::apply(const SymTensor& f) const {
  if (f.dim() != D_ || f.rank() > maxRank_) throw ArgumentError("SymmetrizedWords::apply: shape outside the table");
  const auto& words = S_[f.rank()];
  MatC out = MatC::Zero(words[0].rows(), words[0].cols());
  for (int b = 0; b < f.coeffs().size(); ++b)
    if (f.coeffs()[b] != cplx(0)) out += f.coeffs()[b] * words[b];
  return out;
}

std::vector<std::vector<MatC>> buildFuzzyHarmonics(const FuzzyAlgebra& alg, int lmax) {
  SymmetrizedWords words(alg, lmax);
  auto oracle = projectorOracle(alg.D(), lmax);
  std::vector<std::vector<MatC>> out(lmax + 1);
  for (int l = 0; l <= lmax; ++l)
    for (int a = 0; a < oracle->space(l).size(); ++a) out[l].push_back(words.apply(oracle->generator(l, a)));
  return out;
}

std::vector<SymTensor> fuzzyMultiply(const ModelParams& p, const std::vector<SymTensor>& f,
                                     const std::vector<SymTensor>& state) {
  const int Lam = p.Lambda;
  std::vector<SymTensor> out;
  for (int n = 0; n <= Lam; ++n) out.emplace_back(p.D, n);
  if (f.empty()) return out;
  const int lmax = static_cast<int>(f.size()) - 1;
  const int mmax = std::min(Lam, static_cast<int>(state.size()) - 1);
  if (mmax < 0) return out;
  NTable hat = fuzzyN(p, lmax, Lam);
  for (int l = 0; l <= lmax; ++l) {
    if (flatNorm(f[l]) == 0) continue;
    for (int m = 0; m <= mmax; ++m) {
      if (flatNorm(state[m]) == 0) continue;
      for (int n : channelList(l, m)) {
        if (n > Lam || hat[l][m][n] == 0) continue;
        SymTensor c = channelTensor(f[l], state[m], n);
        out[n].coeffs() += hat[l][m][n] * c.coeffs();
      }
    }
  }
  return out;
}

std::vector<SymTensor> classicalMultiply(const std::vector<SymTensor>& f, const std::vector<SymTensor>& phi) {
  if (f.empty() || phi.empty()) return {};
  const int D = f[0].dim();
  const int top = static_cast<int>(f.size() + phi.size()) - 2;
  std::vector<SymTensor> out;
  for (int n = 0; n <= top; ++n) out.emplace_back(D, n);
  for (const auto& a : f) {
    if (flatNorm(a) == 0) continue;
    for (const auto& b : phi) {
      if (flatNorm(b) == 0) continue;
      for (auto& [n, t] : decomposeProductClassical(a, b)) out[n].coeffs() += t.coeffs();
    }
  }
  return out;
}

double supNormOnSphere(const Polynomial& p, unsigned seed) {
  const int D = p.dim();
  std::vector<Polynomial> grad;
  for (int i = 0; i < D; ++i) {
    Polynomial g(D);
    for (const auto& [e, c] : p.terms()) {
      if (e[i] == 0) continue;
      Polynomial::Exponents f = e;
      --f[i];
      g.add(f, c * static_cast<double>(e[i]));
    }
    grad.push_back(std::move(g));
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  auto sample = [&] {
    VecD x(D);
    for (int i = 0; i < D; ++i) x[i] = nd(rng);
    return VecD(x / x.norm());
  };
  const int samples = 2000 * D;
  std::vector<std::pair<double, VecD>> pts;
  for (int s = 0; s < samples; ++s) {
    VecD x = sample();
    pts.emplace_back(std::abs(p.evaluate(x)), x);
  }
  std::partial_sort(pts.begin(), pts.begin() + std::min<int>(16, samples), pts.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = pts.empty() ? 0.0 : pts[0].first;
  for (int s = 0; s < std::min<int>(16, samples); ++s) {
    VecD x = pts[s].second;
    double val = pts[s].first;
    double step = 0.1;
    for (int it = 0; it < 400 && step > 1e-14; ++it) {
      const cplx v = p.evaluate(x);
      VecD g(D);
      for (int i = 0; i < D; ++i) g[i] = 2.0 * (std::conj(v) * grad[i].evaluate(x)).real();
      g -= g.dot(x) * x;  // tangent part of the gradient of |p|^2
      if (g.norm() < 1e-15) break;
      VecD y = x + step * g / g.norm();
      y /= y.norm();
      const double vy = std::abs(p.evaluate(y));
      if (vy > val) {
        x = y;
        val = vy;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, val);
  }
  return best;
}

namespace {

std::vector<SymTensor> difference(const std::vector<SymTensor>& a, const std::vector<SymTensor>& b, int D) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<SymTensor> out;
  for (std::size_t l = 0; l < n; ++l) {
    SymTensor t(D, static_cast<int>(l));
    if (l < a.size()) t.coeffs() += a[l].coeffs();
    if (l < b.size()) t.coeffs() -= b[l].coeffs();
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<SymTensor> partsOf(const Polynomial& p) {
  return decomposePolynomial(p, std::max(0, p.degree()));
}

ModelParams paramsFor(int D, int Lambda, double kOverride) {
  ModelParams p = kOverride > 0 ? ModelParams::withExplicitK(D, Lambda, kOverride) : ModelParams::withDefaultK(D, Lambda);
  p.validate();
  return p;
}

}  // namespace

ConvergenceTable convergenceExperiment(int D, const Polynomial& f, const Polynomial& phi,
                                       const std::vector<int>& lambdas, double kOverride) {
  if (f.dim() != D || phi.dim() != D) throw ArgumentError("convergenceExperiment: polynomial dimension mismatch");
  if (f.degree() > 12 || phi.degree() > 12)
    throw ArgumentError("convergenceExperiment: polynomial degree above 12 is not supported");
  ConvergenceTable table;
  table.D = D;
  const std::vector<SymTensor> fParts = partsOf(f), phiParts = partsOf(phi);
  table.fNorm = supNormOnSphere(f);
  table.phiNorm = std::sqrt(normSquared(phiParts));
  const std::vector<SymTensor> exact = classicalMultiply(fParts, phiParts);

  for (int Lam : lambdas) {
    ModelParams p = paramsFor(D, Lam, kOverride);
    ConvergenceRow row;
    row.Lambda = Lam;
    row.k = p.k;
    std::vector<SymTensor> fCut(fParts.begin(), fParts.begin() + std::min<std::size_t>(fParts.size(), 2 * Lam + 1));
    Polynomial tail(D);
    for (std::size_t l = fCut.size(); l < fParts.size(); ++l) tail += Polynomial::fromTensor(fParts[l]);
    row.eta = tail.degree() < 0 ? 0.0 : supNormOnSphere(tail);
    const std::vector<SymTensor> approx = fuzzyMultiply(p, fCut, phiParts);
    row.norm = std::sqrt(normSquared(difference(approx, exact, D)));
    row.epsilon = epsilonBound(p);
    row.bound = std::expm1(Lam * row.epsilon) * (table.fNorm + row.eta) * table.phiNorm;
    row.withinBound = row.norm <= row.bound;
    table.rows.push_back(row);
  }
  return table;
}

std::vector<double> productConvergence(int D, const Polynomial& f, const Polynomial& g, const Polynomial& phi,
                                       const std::vector<int>& lambdas) {
  const std::vector<SymTensor> fParts = partsOf(f), gParts = partsOf(g), phiParts = partsOf(phi);
  const std::vector<SymTensor> exact = classicalMultiply(classicalMultiply(fParts, gParts), phiParts);
  std::vector<double> out;
  for (int Lam : lambdas) {
    ModelParams p = paramsFor(D, Lam, 0);
    auto cut = [&](const std::vector<SymTensor>& v) {
      return std::vector<SymTensor>(v.begin(), v.begin() + std::min<std::size_t>(v.size(), 2 * Lam + 1));
    };
    const std::vector<SymTensor> approx = fuzzyMultiply(p, cut(fParts), fuzzyMultiply(p, cut(gParts), phiParts));
    out.push_back(std::sqrt(normSquared(difference(approx, exact, D))));
  }
  return out;
}

}  // namespace fsph
