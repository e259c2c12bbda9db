#include "locfact/rational.hpp"

#include <cmath>
#include <map>

namespace locfact {

static i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat Rat::make(i128 num, i128 den) {
  require(den != 0, Err::DivisionByZero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 lim = (i128)1 << 62;
  require(num < lim && num > -lim && den < lim, Err::DomainError, "rational overflow");
  Rat r;
  r.n = (i64)num;
  r.d = (i64)den;
  return r;
}

std::string Rat::str() const {
  if (d == 1) return std::to_string(n);
  return std::to_string(n) + "/" + std::to_string(d);
}

Rat Phase::reduce(Rat r) {
  i64 q = r.n / r.d;
  if (r.n % r.d < 0) q -= 1;
  return r - Rat(q);
}

int Phase::as_sign() const {
  if (t.n == 0) return 1;
  if (t.n == 1 && t.d == 2) return -1;
  fail(Err::DomainError, "phase " + t.str() + " is not a sign");
}

std::complex<double> unit_circle(const Rat& t) {
  double a = 2.0 * M_PI * t.dbl();
  return {std::cos(a), std::sin(a)};
}

std::complex<double> Phase::cx() const { return unit_circle(t); }

void CycInt::add_root(const Phase& p, i64 weight) {
  // zeta-exponent of p relative to order n; p.order() must divide n.
  require(n % p.t.d == 0, Err::DomainError, "root order does not divide cyclotomic base order");
  i64 k = p.t.n * (n / p.t.d);
  c[k % n] += weight;
}

CycInt CycInt::operator+(const CycInt& o) const {
  require(n == o.n, Err::DomainError, "cyclotomic order mismatch");
  CycInt r(n);
  for (i64 i = 0; i < n; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
  require(n == o.n, Err::DomainError, "cyclotomic order mismatch");
  CycInt r(n);
  for (i64 i = 0; i < n; ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
  require(n == o.n, Err::DomainError, "cyclotomic order mismatch");
  CycInt r(n);
  for (i64 i = 0; i < n; ++i) {
    if (!c[i]) continue;
    for (i64 j = 0; j < n; ++j) {
      if (!o.c[j]) continue;
      r.c[(i + j) % n] += c[i] * o.c[j];
    }
  }
  return r;
}

std::vector<i64> cyclotomic_poly(i64 n) {
  static std::map<i64, std::vector<i64>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<i64> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (i64 d = 1; d < n; ++d) {
    if (n % d) continue;
    std::vector<i64> div = cyclotomic_poly(d);
    // exact polynomial division poly / div
    std::vector<i64> quot(poly.size() - div.size() + 1, 0);
    std::vector<i64> rem = poly;
    for (i64 i = (i64)quot.size() - 1; i >= 0; --i) {
      i64 coef = rem[i + div.size() - 1] / div.back();
      quot[i] = coef;
      for (size_t j = 0; j < div.size(); ++j) rem[i + j] -= coef * div[j];
    }
    poly = quot;
  }
  cache[n] = poly;
  return poly;
}

bool CycInt::is_zero() const {
  bool any = false;
  for (i64 v : c) any |= (v != 0);
  if (!any) return true;
  // Reduce the coefficient polynomial mod Phi_n; zero iff all remainders vanish.
  std::vector<i64> phi = cyclotomic_poly(n);
  std::vector<i64> rem = c;
  i64 deg = (i64)phi.size() - 1;
  for (i64 i = (i64)rem.size() - 1; i >= deg; --i) {
    i64 coef = rem[i];  // phi is monic
    if (!coef) continue;
    for (i64 j = 0; j <= deg; ++j) rem[i - deg + j] -= coef * phi[j];
  }
  for (i64 i = 0; i < deg && i < (i64)rem.size(); ++i)
    if (rem[i]) return false;
  return true;
}

std::complex<double> CycInt::cx() const {
  std::complex<double> s = 0;
  for (i64 k = 0; k < n; ++k)
    if (c[k]) s += double(c[k]) * unit_circle(Rat(k, n));
  return s;
}

const char* err_name(Err e) {
  switch (e) {
    case Err::PrecisionExhausted: return "PrecisionExhausted";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::DomainError: return "DomainError";
    case Err::NoExtension: return "NoExtension";
    case Err::PoleError: return "PoleError";
    case Err::UnsupportedTestFunction: return "UnsupportedTestFunction";
    case Err::CrossCheckFailure: return "CrossCheckFailure";
    case Err::NoStabilization: return "NoStabilization";
    case Err::TailNotResolved: return "TailNotResolved";
    case Err::SingularParameter: return "SingularParameter";
    case Err::GaloisStabilityViolation: return "GaloisStabilityViolation";
    case Err::RationalityFailure: return "RationalityFailure";
    case Err::RestrictionMismatch: return "RestrictionMismatch";
    case Err::DegenerateGamma: return "DegenerateGamma";
    case Err::StabilizationFailure: return "StabilizationFailure";
    case Err::HypothesisViolation: return "HypothesisViolation";
    case Err::EpsilonNotSign: return "EpsilonNotSign";
    case Err::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace locfact
