#ifndef LOCFACT_RATIONAL_HPP
#define LOCFACT_RATIONAL_HPP

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "locfact/errors.hpp"

namespace locfact {

using i64 = long long;
using u32 = std::uint32_t;
using u64 = unsigned long long;
using i128 = __int128;
using u128 = unsigned __int128;

// Exact rational with i64 numerator/denominator, always normalized (d > 0,
// gcd(n,d) = 1).  Intermediate products run through __int128; overflow of the
// normalized result throws rather than wrapping.
struct Rat {
  i64 n = 0;
  i64 d = 1;

  Rat() = default;
  Rat(i64 num) : n(num), d(1) {}
  Rat(i64 num, i64 den) { *this = make(num, den); }

  static Rat make(i128 num, i128 den);

  Rat operator+(const Rat& o) const { return make((i128)n * o.d + (i128)o.n * d, (i128)d * o.d); }
  Rat operator-(const Rat& o) const { return make((i128)n * o.d - (i128)o.n * d, (i128)d * o.d); }
  Rat operator*(const Rat& o) const { return make((i128)n * o.n, (i128)d * o.d); }
  Rat operator/(const Rat& o) const {
    require(o.n != 0, Err::DivisionByZero, "rational division by zero");
    return make((i128)n * o.d, (i128)d * o.n);
  }
  Rat operator-() const { return make(-(i128)n, d); }
  bool operator==(const Rat& o) const { return n == o.n && d == o.d; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return (i128)n * o.d < (i128)o.n * d; }

  double dbl() const { return double(n) / double(d); }
  std::string str() const;
};

// Exact phase: a rational t representing the unit complex number e^(2*pi*i*t),
// stored reduced mod 1 with 0 <= t < 1.
struct Phase {
  Rat t;

  Phase() = default;
  explicit Phase(Rat r) : t(reduce(r)) {}
  Phase(i64 num, i64 den) : t(reduce(Rat(num, den))) {}

  static Rat reduce(Rat r);
  static Phase one() { return Phase(); }
  static Phase half() { return Phase(1, 2); }
  static Phase of_sign(int s) { return s >= 0 ? one() : half(); }

  Phase operator*(const Phase& o) const { return Phase(t + o.t); }
  Phase operator/(const Phase& o) const { return Phase(t - o.t); }
  Phase inv() const { return Phase(-t); }
  Phase pow(i64 k) const { return Phase(t * Rat(k)); }
  bool operator==(const Phase& o) const { return t == o.t; }
  bool operator!=(const Phase& o) const { return !(*this == o); }
  bool is_one() const { return t.n == 0; }
  // Order as a root of unity (the denominator of t).
  i64 order() const { return t.d; }
  int as_sign() const;  // +1 / -1; DomainError if not a real sign

  std::complex<double> cx() const;
};

// Exact element of Z[zeta_n]: integer combination sum_k c[k] * zeta_n^k.
// Used where exact vanishing of root-of-unity sums must be decided.
struct CycInt {
  i64 n = 1;
  std::vector<i64> c;  // size n

  explicit CycInt(i64 order = 1) : n(order), c(order, 0) {}

  void add_root(const Phase& p, i64 weight);

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;  // cyclic convolution (zeta_n^n = 1)
  bool is_zero() const;                     // exact: reduction mod the n-th cyclotomic polynomial
  bool operator==(const CycInt& o) const { return (*this - o).is_zero(); }
  std::complex<double> cx() const;
};

// Cyclotomic polynomial Phi_n as integer coefficient vector (low degree first).
std::vector<i64> cyclotomic_poly(i64 n);

std::complex<double> unit_circle(const Rat& t);

}  // namespace locfact

#endif
