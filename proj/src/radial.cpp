#include "fsph/radial.hpp"

#include <cmath>
#include <limits>

namespace fsph {

ConfinementModel::ConfinementModel(const ModelParams& p) : D(p.D), Lambda(p.Lambda), k(p.k) { p.validate(); }

double ConfinementModel::b(int l) const { return (D * D - 4.0 * D + 3 + 4.0 * l * (l + D - 2)) / 4.0; }

double ConfinementModel::V0() const {
  const double b0 = b(0);
  return -std::sqrt(kl(0)) - 2 * b0 * (k + b0) / (3 * b0 + 2 * k);
}

double ConfinementModel::energy(int n, int l) const {
  const double bl = b(l);
  return (2 * n + 1) * std::sqrt(kl(l)) + V0() + 2 * bl * (k + bl) / (3 * bl + 2 * k);
}

double ConfinementModel::energyLeading(int n, int l) const { return casimirE(D, l) + 2 * n * std::sqrt(2 * k); }

SpectrumTable spectrumHarmonic(const ConfinementModel& m) {
  SpectrumTable t;
  t.excitedMargin = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= m.Lambda + 2; ++l) {
      SpectrumRow r{n, l, m.energy(n, l), m.energyLeading(n, l), false};
      r.kept = r.leading <= m.cutoff();
      if (n >= 1) t.excitedMargin = std::min(t.excitedMargin, r.energy - m.cutoff());
      t.rows.push_back(r);
    }
  return t;
}

namespace {

template <class E>
std::vector<std::pair<int, int>> select(const ConfinementModel& m, int nMax, int lMax, E energy) {
  std::vector<std::pair<int, int>> out;
  for (int n = 0; n <= nMax; ++n)
    for (int l = 0; l <= lMax; ++l)
      if (energy(n, l) <= m.cutoff()) out.emplace_back(n, l);
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> cutoffSelection(const ConfinementModel& m, int nMax, int lMax) {
  return select(m, nMax, lMax, [&](int n, int l) { return m.energyLeading(n, l); });
}

std::vector<std::pair<int, int>> cutoffSelectionExact(const ConfinementModel& m, int nMax, int lMax) {
  return select(m, nMax, lMax, [&](int n, int l) { return m.energy(n, l); });
}

double rHat(const ConfinementModel& m, int l, int L) {
  const double sl = std::sqrt(m.kl(l)), sL = std::sqrt(m.kl(L));
  return (sl * m.rTilde(l) + sL * m.rTilde(L)) / (sl + sL);
}

double radialIntegralAsymptotic(const ConfinementModel& m, int l, int L, const std::vector<double>& h, int terms) {
  const double sl = std::sqrt(m.kl(l)), sL = std::sqrt(m.kl(L)), s = sl + sL;
  const double dr = m.rTilde(l) - m.rTilde(L);
  const double r = rHat(m, l, L);
  std::vector<double> d = h;
  double sum = 0, scale = 1;
  for (int n = 0; n < terms; ++n) {
    double v = 0;
    for (int j = static_cast<int>(d.size()) - 1; j >= 0; --j) v = v * r + d[j];
    sum += v / (doubleFactorial(2 * n) * scale);
    scale *= s;
    // two derivatives for the next term
    for (int rep = 0; rep < 2; ++rep) {
      if (d.empty()) break;
      for (std::size_t j = 1; j < d.size(); ++j) d[j - 1] = static_cast<double>(j) * d[j];
      d.pop_back();
    }
  }
  return std::exp(-sl * sL * dr * dr / (2 * s)) * sum;
}

double radialRho(const ConfinementModel& m, int l) {
  if (l < 1) throw ArgumentError("radialRho: need l >= 1");
  return radialIntegralAsymptotic(m, l, l - 1, {0.0, 1.0});
}

std::function<double(double)> defaultPotential(const ConfinementModel& m, double T) {
  const double V0 = m.V0(), k = m.k;
  return [=](double r) {
    const double core = T / (r * r), well = V0 + 2 * k * (r - 1) * (r - 1);
    if (r <= 0.25) return core;
    if (r >= 0.5) return well;
    // C^1 smoothstep on [0.25, 0.5]
    const double x = (r - 0.25) / 0.25, s = x * x * (3 - 2 * x);
    return (1 - s) * core + s * well;
  };
}

namespace {

// Symmetric tridiagonal operator 2/h^2 + W_i on the diagonal, -1/h^2 off it.
struct Tridiagonal {
  std::vector<double> diag;
  double off;

  // Number of eigenvalues below x.
  int countBelow(double x) const {
    int c = 0;
    double q = 1;
    const double off2 = off * off;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      q = diag[i] - x - (i ? off2 / q : 0.0);
      if (q == 0) q = -1e-300;
      if (q < 0) ++c;
    }
    return c;
  }

  double eigenvalue(int index, double lo, double hi) const {
    while (countBelow(hi) <= index) hi += (hi - lo) + 1;
    while (countBelow(lo) > index) lo -= (hi - lo) + 1;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (countBelow(mid) > index ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  }

  // Solve (T - x) y = rhs (Thomas algorithm).
  std::vector<double> solve(double x, const std::vector<double>& rhs) const {
    const std::size_t n = diag.size();
    std::vector<double> c(n), d(n);
    double beta = diag[0] - x;
    d[0] = rhs[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
      c[i] = off / beta;
      beta = diag[i] - x - off * c[i];
      if (beta == 0) beta = 1e-300;
      d[i] = (rhs[i] - off * d[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i + 1] * d[i + 1];
    return d;
  }
};

Tridiagonal discretize(const ConfinementModel& m, const std::function<double(double)>& V, int l, double a,
                       double b, int intervals) {
  const double h = (b - a) / intervals, bl = m.b(l);
  Tridiagonal t;
  t.off = -1 / (h * h);
  t.diag.resize(intervals - 1);
  for (int i = 1; i < intervals; ++i) {
    const double r = a + i * h;
    t.diag[i - 1] = 2 / (h * h) + bl / (r * r) + V(r);
  }
  return t;
}

}  // namespace

OdeResult odeValidate(const ConfinementModel& m, const std::function<double(double)>& V, int l, int n,
                      const OdeOptions& opt) {
  if (l < 0 || n < 0) throw ArgumentError("odeValidate: need l, n >= 0");
  OdeResult res;
  res.harmonic = m.energy(n, l);
  const double guess = res.harmonic, spread = 4 * std::sqrt(m.kl(l));
  std::vector<double> plain, extrapolated;
  int intervals = opt.initialIntervals;
  bool settled = false;
  for (int level = 0; level < opt.maxLevels; ++level, intervals *= 2) {
    Tridiagonal t = discretize(m, V, l, opt.rMin, opt.rMax, intervals);
    plain.push_back(t.eigenvalue(n, guess - spread, guess + spread));
    if (plain.size() >= 2) extrapolated.push_back((4 * plain.back() - plain[plain.size() - 2]) / 3);
    res.intervals = intervals;
    if (extrapolated.size() >= 2) {
      const double a = extrapolated.back(), b = extrapolated[extrapolated.size() - 2];
      res.lastChange = std::abs(a - b) / std::max(1.0, std::abs(a));
      if (res.lastChange <= opt.relTol) {
        settled = true;
        break;
      }
    }
  }
  if (!settled)
    throw NumericalError("odeValidate: eigenvalue did not settle under grid doubling (last relative change " +
                         std::to_string(res.lastChange) + ")");
  res.energy = extrapolated.back();
  res.constant = std::abs(res.energy - res.harmonic) * std::sqrt(m.k);

  // Eigenfunction on the finest grid by inverse iteration.
  Tridiagonal t = discretize(m, V, l, opt.rMin, opt.rMax, res.intervals);
  const double h = (opt.rMax - opt.rMin) / res.intervals;
  std::vector<double> y(t.diag.size(), 1.0);
  const double shift = plain.back() - 1e-9 * std::max(1.0, std::abs(plain.back()));
  for (int it = 0; it < 4; ++it) {
    y = t.solve(shift, y);
    double s = 0;
    for (double v : y) s += v * v;
    s = std::sqrt(s * h);
    for (double& v : y) v /= s;
  }
  // Sign convention: positive where |g| peaks.
  std::size_t peak = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) > std::abs(y[peak])) peak = i;
  if (y[peak] < 0)
    for (double& v : y) v = -v;
  const double width = 3 * std::pow(m.k, -0.25);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = opt.rMin + (i + 1) * h;
    if (std::abs(r - 1) > width) res.tailWeight += y[i] * y[i] * h;
  }
  const int stride = std::max<int>(1, static_cast<int>(y.size()) / std::max(1, opt.samples));
  for (std::size_t i = 0; i < y.size(); i += stride) {
    res.r.push_back(opt.rMin + (i + 1) * h);
    res.g.push_back(y[i]);
  }
  return res;
}

}  // namespace fsph
