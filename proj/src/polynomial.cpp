#include "fsph/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace fsph {

Polynomial Polynomial::constant(int D, cplx c) {
  Polynomial p(D);
  p.add(Exponents(D, 0), c);
  return p;
}

Polynomial Polynomial::variable(int D, int i) {
  Polynomial p(D);
  Exponents e(D, 0);
  e.at(i) = 1;
  p.add(e, 1.0);
  return p;
}

Polynomial Polynomial::fromTensor(const SymTensor& t) {
  Polynomial p(t.dim());
  const IndexSpace& S = t.indices();
  for (int a = 0; a < S.size(); ++a) {
    if (t.coeffs()[a] == cplx(0)) continue;
    Exponents e(t.dim(), 0);
    for (int c : S[a].entries) ++e[c];
    p.add(e, S.multiplicity(a) * t.coeffs()[a]);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add(const Exponents& e, cplx c) {
  if (static_cast<int>(e.size()) != D_) throw ArgumentError("polynomial: exponent length mismatch");
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) it->second += c;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.D_ != D_) throw ArgumentError("polynomial: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.D_ != D_) throw ArgumentError("polynomial: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.D_ != b.D_) throw ArgumentError("polynomial: dimension mismatch");
  Polynomial r(a.D_);
  Polynomial::Exponents e(a.D_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.D_; ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::homogeneousPart(int g) const {
  Polynomial r(D_);
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (s == g) r.add(e, c);
  }
  return r;
}

SymTensor Polynomial::homogeneousTensor(int g) const {
  SymTensor t(D_, g);
  const IndexSpace& S = t.indices();
  for (const auto& [e, c] : terms_) {
    int s = 0;
    IndexKey key = 0;
    for (int i = 0; i < D_; ++i) {
      s += e[i];
      key += static_cast<IndexKey>(e[i]) * keyUnit(i);
    }
    if (s != g) continue;
    int a = S.position(key);
    t.coeffs()[a] += c / S.multiplicity(a);
  }
  return t;
}

Polynomial Polynomial::laplacian() const {
  Polynomial r(D_);
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < D_; ++i) {
      if (e[i] < 2) continue;
      Exponents f = e;
      f[i] -= 2;
      r.add(f, c * static_cast<double>(e[i] * (e[i] - 1)));
    }
  return r;
}

Polynomial Polynomial::timesRadiusSquared() const {
  Polynomial r(D_);
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < D_; ++i) {
      Exponents f = e;
      f[i] += 2;
      r.add(f, c);
    }
  return r;
}

Polynomial Polynomial::divideByRadiusSquared(double tol) const {
  // Eliminate x_0^2 repeatedly; what remains must vanish for exact divisibility.
  std::map<Exponents, cplx> rem = terms_;
  Polynomial q(D_);
  const double scale = std::max(1.0, maxAbsCoeff());
  while (!rem.empty()) {
    auto it = std::prev(rem.end());
    if (it->first[0] < 2) break;
    Exponents m = it->first;
    cplx c = it->second;
    rem.erase(it);
    m[0] -= 2;
    q.add(m, c);
    for (int i = 1; i < D_; ++i) {
      Exponents f = m;
      f[i] += 2;
      rem[f] -= c;
    }
  }
  for (const auto& [e, c] : rem)
    if (std::abs(c) > tol * scale) throw NumericalError("divideByRadiusSquared: polynomial not divisible by r^2");
  return q;
}

cplx Polynomial::evaluate(const VecD& x) const {
  cplx s = 0;
  for (const auto& [e, c] : terms_) {
    double m = 1;
    for (int i = 0; i < D_; ++i) m *= std::pow(x[i], e[i]);
    s += c * m;
  }
  return s;
}

cplx Polynomial::integrateSphere() const {
  cplx s = 0;
  for (const auto& [e, c] : terms_) s += c * sphereMomentFromCounts(e);
  return s;
}

double Polynomial::maxAbsCoeff() const {
  double m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial r(D_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) r.add(e, c);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  int D;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    std::size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) && s[end] != '+' && s[end] != '-' &&
           s[end] != '*')
      ++end;
    std::string tok = pos < s.size() ? s.substr(pos, std::max<std::size_t>(1, end - pos)) : "<end of input>";
    throw ArgumentError("polynomial parse error at position " + std::to_string(pos) + ": " + what + " near '" + tok +
                        "'");
  }

  Polynomial factor() {
    skip();
    if (pos >= s.size()) fail("expected a number or t<i>");
    if (s[pos] == 't') {
      std::size_t start = ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) {
        pos = start - 1;
        fail("expected index after 't'");
      }
      int i = std::stoi(s.substr(start, pos - start));
      if (i < 1 || i > D) {
        pos = start - 1;
        fail("variable index outside 1.." + std::to_string(D));
      }
      return Polynomial::variable(D, i - 1);
    }
    if (!std::isdigit(static_cast<unsigned char>(s[pos])) && s[pos] != '.') fail("unexpected token");
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("unexpected token");
    pos += static_cast<std::size_t>(end - begin);
    return Polynomial::constant(D, v);
  }

  Polynomial term() {
    Polynomial p = factor();
    for (;;) {
      skip();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        p = p * factor();
      } else {
        return p;
      }
    }
  }

  Polynomial parse() {
    Polynomial total(D);
    skip();
    double sign = 1.0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
    total += term() * sign;
    for (;;) {
      skip();
      if (pos >= s.size()) break;
      if (s[pos] != '+' && s[pos] != '-') fail("expected '+' or '-'");
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      total += term() * sign;
    }
    return total;
  }
};

}  // namespace

Polynomial parsePolynomial(const std::string& text, int D) {
  if (D < 1) throw ArgumentError("polynomial: D must be positive");
  Parser p{text, D};
  return p.parse();
}

std::string formatPolynomial(const Polynomial& p) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (c == cplx(0)) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    for (int i = 0; i < p.dim(); ++i)
      for (int k = 0; k < e[i]; ++k) os << "*t" << (i + 1);
  }
  return first ? "0" : os.str();
}

}  // namespace fsph
