#include "locfact/field.hpp"

#include <algorithm>

namespace locfact {

const char* ext_name(Ext e) {
  switch (e) {
    case Ext::Unramified: return "unramified";
    case Ext::RamifiedP: return "ramified_p";
    case Ext::RamifiedUP: return "ramified_up";
  }
  return "?";
}

Ext ext_from_name(const std::string& s) {
  if (s == "unramified") return Ext::Unramified;
  if (s == "ramified_p") return Ext::RamifiedP;
  if (s == "ramified_up") return Ext::RamifiedUP;
  fail(Err::ConfigError, "unknown extension kind '" + s + "'");
}

int FieldConfig::max_prec(i64 p) {
  // largest m with p^m < 2^62, so unit digits fit one u64 word
  int m = 0;
  u128 v = 1;
  while (v * (u128)p < ((u128)1 << 62)) {
    v *= (u128)p;
    ++m;
  }
  return m;
}

FieldConfig::FieldConfig(i64 p_, Ext ext_, int prec_) : p(p_), ext(ext_), prec(prec_) {
  require(p >= 3, Err::ConfigError, "p must be an odd prime");
  for (i64 d = 2; d * d <= p; ++d)
    require(p % d != 0, Err::ConfigError, "p must be prime");
  require(prec >= 8, Err::ConfigError, "working precision must be at least 8");
  require(prec <= max_prec(p), Err::ConfigError,
          "working precision exceeds single-word limit for p=" + std::to_string(p));
  ppow.resize(prec + 1);
  ppow[0] = 1;
  for (int i = 1; i <= prec; ++i) ppow[i] = ppow[i - 1] * (u64)p;
  for (i64 u = 2; u < p; ++u)
    if (legendre(u, p) == -1) {
      nonresidue = u;
      break;
    }
}

i64 FieldConfig::rho_int() const {
  switch (ext) {
    case Ext::Unramified: return nonresidue;
    case Ext::RamifiedP: return p;
    case Ext::RamifiedUP: return nonresidue * p;
  }
  return 0;
}

std::string FieldConfig::label() const {
  return "p" + std::to_string(p) + ":" + ext_name(ext);
}

int legendre(i64 a, i64 p) {
  a %= p;
  if (a < 0) a += p;
  require(a != 0, Err::DomainError, "legendre symbol of 0");
  i64 r = 1, base = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = (i64)((i128)r * base % p);
    base = (i64)((i128)base * base % p);
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// ----- Fp -----

Fp Fp::exact_zero(const FieldConfig& F) {
  Fp x;
  x.F = &F;
  return x;
}

Fp Fp::zero_at(const FieldConfig& F, i64 abs_prec) {
  Fp x;
  x.F = &F;
  x.zabs = abs_prec;
  return x;
}

static u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

Fp Fp::unit_pow(const FieldConfig& F, u64 unit, i64 val) {
  u64 m = F.pw(F.prec);
  unit %= m;
  require(unit % (u64)F.p != 0, Err::DomainError, "unit part divisible by p");
  Fp x;
  x.F = &F;
  x.zero = false;
  x.v = val;
  x.u = unit;
  x.prec = F.prec;
  x.zabs = 0;
  return x;
}

Fp Fp::from_int(const FieldConfig& F, i64 n) {
  if (n == 0) return exact_zero(F);
  i64 v = 0;
  bool neg = n < 0;
  u64 a = neg ? (u64)(-(n + 1)) + 1 : (u64)n;
  while (a % (u64)F.p == 0) {
    a /= (u64)F.p;
    ++v;
  }
  u64 m = F.pw(F.prec);
  u64 u = a % m;
  if (neg) u = (m - u) % m;
  return unit_pow(F, u, v);
}

// Newton lift of the inverse of a unit, to kdig digits.
static u64 inv_unit(const FieldConfig& F, u64 u, int kdig) {
  i64 p = F.p;
  u64 x = 1, base = u % (u64)p, e = (u64)(p - 2);
  while (e) {
    if (e & 1) x = mulmod(x, base, (u64)p);
    base = mulmod(base, base, (u64)p);
    e >>= 1;
  }
  int k = 1;
  while (k < kdig) {
    k = std::min(2 * k, kdig);
    u64 m = F.pw(k);
    x = mulmod(x, (2 + m - mulmod(u % m, x, m)) % m, m);
  }
  return x % F.pw(kdig);
}

Fp Fp::from_rat(const FieldConfig& F, const Rat& r) {
  return from_int(F, r.n) / from_int(F, r.d);
}

i64 Fp::val() const {
  if (zero) {
    require(zabs == ZEXACT, Err::PrecisionExhausted,
            "valuation of a value indistinguishable from zero");
    fail(Err::DomainError, "valuation of exact zero");
  }
  return v;
}

u64 Fp::unit_mod(int k) const {
  require(!zero, Err::PrecisionExhausted, "unit digits of zero");
  require(k <= prec, Err::PrecisionExhausted, "requested digits beyond certified precision");
  return u % F->pw(k);
}

i64 Fp::residue() const { return zero ? 0 : (i64)(u % (u64)F->p); }

u64 Fp::digits_mod(int k) const {
  if (zero) {
    require(zabs >= k, Err::PrecisionExhausted, "digits beyond certified zero bound");
    return 0;
  }
  require(v >= 0, Err::DomainError, "digits of a non-integral element");
  if (v >= k) return 0;
  require(v + prec >= k, Err::PrecisionExhausted, "digits beyond certified precision");
  return mulmod(u % F->pw(k - (int)v), F->pw((int)v), F->pw(k));
}

Fp Fp::operator-() const {
  if (zero) return *this;
  Fp x = *this;
  x.u = F->pw(prec) - u;
  return x;
}

Fp Fp::operator+(const Fp& o) const {
  require(F == o.F || *F == *o.F, Err::DomainError, "mixed field configs");
  if (zero && o.zero) {
    Fp z = *this;
    z.zabs = std::min(zabs, o.zabs);
    return z;
  }
  if (zero || o.zero) {
    const Fp& x = zero ? o : *this;
    i64 cap = zero ? zabs : o.zabs;
    if (x.v >= cap) return zero_at(*F, cap);
    Fp r = x;
    r.prec = (int)std::min<i64>(x.prec, cap - x.v);
    r.u %= F->pw(r.prec);
    return r;
  }
  i64 m = std::min(v, o.v);
  i64 A = std::min(std::min(v + prec, o.v + o.prec), m + F->prec);
  int k = (int)(A - m);
  u64 mod = F->pw(k);
  u64 d1 = (v - m >= k) ? 0 : mulmod(u % F->pw(k - (int)(v - m)), F->pw((int)(v - m)), mod);
  u64 d2 = (o.v - m >= k) ? 0 : mulmod(o.u % F->pw(k - (int)(o.v - m)), F->pw((int)(o.v - m)), mod);
  u64 s = (d1 + d2) % mod;
  if (s == 0) return zero_at(*F, A);
  int w = 0;
  while (s % (u64)F->p == 0) {
    s /= (u64)F->p;
    ++w;
  }
  Fp r;
  r.F = F;
  r.zero = false;
  r.zabs = 0;
  r.v = m + w;
  r.u = s;
  r.prec = k - w;
  return r;
}

Fp Fp::operator-(const Fp& o) const { return *this + (-o); }

Fp Fp::operator*(const Fp& o) const {
  require(F == o.F || *F == *o.F, Err::DomainError, "mixed field configs");
  if (zero || o.zero) {
    if ((zero && zabs == ZEXACT) || (o.zero && o.zabs == ZEXACT)) return exact_zero(*F);
    i64 cap = (zero ? zabs : v) + (o.zero ? o.zabs : o.v);
    return zero_at(*F, std::min<i64>(cap, ZEXACT));
  }
  Fp r;
  r.F = F;
  r.zero = false;
  r.zabs = 0;
  r.v = v + o.v;
  r.prec = std::min(prec, o.prec);
  r.u = mulmod(u % F->pw(r.prec), o.u % F->pw(r.prec), F->pw(r.prec));
  return r;
}

Fp Fp::inv() const {
  if (zero) {
    if (zabs == ZEXACT) fail(Err::DivisionByZero, "inverse of zero");
    fail(Err::PrecisionExhausted, "inverse of a value indistinguishable from zero");
  }
  Fp r = *this;
  r.v = -v;
  r.u = inv_unit(*F, u, prec);
  return r;
}

Fp Fp::operator/(const Fp& o) const { return *this * o.inv(); }

Fp Fp::pow(i64 k) const {
  if (zero) {
    if (zabs == ZEXACT) {
      require(k > 0, Err::DomainError, "zero to a non-positive power");
      return *this;
    }
    require(k > 0, Err::PrecisionExhausted, "imprecise zero to a non-positive power");
    return zero_at(*F, std::min<i64>(k * zabs, ZEXACT));
  }
  if (k < 0) return inv().pow(-k);
  Fp r = from_int(*F, 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

std::string Fp::str() const {
  if (zero) return zabs == ZEXACT ? "0" : "O(p^" + std::to_string(zabs) + ")";
  return std::to_string(u) + "*p^" + std::to_string(v) + "+O(p^" + std::to_string(v + prec) + ")";
}

// ----- Ex -----

Ex Ex::exact_zero(const FieldConfig& F) { return Ex(Fp::exact_zero(F), Fp::exact_zero(F)); }
Ex Ex::from_F(const Fp& x) { return Ex(x, Fp::exact_zero(*x.F)); }
Ex Ex::from_int(const FieldConfig& F, i64 n) { return from_F(Fp::from_int(F, n)); }
Ex Ex::omega(const FieldConfig& F) { return Ex(Fp::exact_zero(F), Fp::from_int(F, 1)); }

static Fp rho_fp(const FieldConfig& F) { return Fp::from_int(F, F.rho_int()); }

Fp Ex::norm() const { return a * a - rho_fp(cfg()) * b * b; }
Fp Ex::trace() const { return a + a; }

Ex Ex::operator*(const Ex& o) const {
  Fp na = a * o.a + rho_fp(cfg()) * b * o.b;
  Fp nb = a * o.b + b * o.a;
  return Ex(na, nb);
}

Ex Ex::inv() const {
  Fp n = norm();
  if (n.is_zero()) {
    bool exact0 = a.is_zero() && b.is_zero() && a.zabs == Fp::ZEXACT && b.zabs == Fp::ZEXACT;
    if (exact0) fail(Err::DivisionByZero, "inverse of zero in E");
    fail(Err::PrecisionExhausted, "inverse of an E-value whose norm vanishes at precision");
  }
  Ex c = conj();
  return Ex(c.a / n, c.b / n);
}

Ex Ex::pow(i64 k) const {
  if (k < 0) return inv().pow(-k);
  Ex r = Ex::from_int(cfg(), 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

i64 Ex::val() const {
  const FieldConfig& F = cfg();
  bool za = a.is_zero(), zb = b.is_zero();
  require(!(za && zb), Err::PrecisionExhausted, "valuation of zero in E");
  if (F.ext == Ext::Unramified) {
    if (za) return b.val();
    if (zb) return a.val();
    return std::min(a.val(), b.val());
  }
  if (za) return 2 * b.val() + 1;
  if (zb) return 2 * a.val();
  return std::min(2 * a.val(), 2 * b.val() + 1);
}

Fp Ex::f_part(const char* what) const {
  if (!b.is_zero()) {
    i64 ref = a.is_zero() ? b.val() : std::min(a.val(), b.val());
    require(b.val() >= ref + cfg().prec - 2, Err::GaloisStabilityViolation,
            std::string(what) + ": omega-component does not vanish");
  }
  return a;
}

std::string Ex::str() const { return "(" + a.str() + ") + (" + b.str() + ")*w"; }

// ----- field-level operations -----

int sgn_ef(const FieldConfig& F, const Fp& x) {
  require(!x.is_zero(), Err::PrecisionExhausted, "sign character of zero");
  i64 v = x.val();
  i64 ux = x.residue();
  int eps = (int)(((F.p - 1) / 2) & 1);  // parity of (p-1)/2
  switch (F.ext) {
    case Ext::Unramified:
      return (v & 1) ? -1 : 1;
    case Ext::RamifiedP: {
      int s = legendre(ux, F.p);
      if ((v & 1) && eps) s = -s;
      return s;
    }
    case Ext::RamifiedUP: {
      int s = legendre(ux, F.p);
      if (v & 1) s = -s;  // nonresidue factor of rho contributes (-1)^v
      if ((v & 1) && eps) s = -s;
      return s;
    }
  }
  return 0;
}

Ex uniformizer_E(const FieldConfig& F) {
  return F.ext == Ext::Unramified ? Ex::from_int(F, F.p) : Ex::omega(F);
}

Fp teichmuller(const FieldConfig& F, i64 residue) {
  residue %= F.p;
  if (residue < 0) residue += F.p;
  require(residue != 0, Err::DomainError, "teichmuller lift of 0");
  Fp x = Fp::from_int(F, residue);
  for (int i = 0; i < F.prec + 2; ++i) x = x.pow(F.p);
  return x;
}

Ex teichmuller_E(const FieldConfig& F, i64 ra, i64 rb) {
  if (F.ext != Ext::Unramified) {
    require(rb % F.p == 0, Err::DomainError, "residue field of a ramified extension is F_p");
    return Ex::from_F(teichmuller(F, ra));
  }
  require(ra % F.p || rb % F.p, Err::DomainError, "teichmuller lift of 0");
  Ex x(Fp::from_int(F, ra), Fp::from_int(F, rb));
  i64 q = F.p * F.p;
  for (int i = 0; i < F.prec + 2; ++i) x = x.pow(q);
  return x;
}

// Lower bound on val_E, treating fuzzy zeros by their certified absolute precision.
static i64 ex_val_floor(const Ex& x) {
  const FieldConfig& F = x.cfg();
  i64 va = x.a.is_zero() ? x.a.zabs : x.a.val();
  i64 vb = x.b.is_zero() ? x.b.zabs : x.b.val();
  if (F.ext == Ext::Unramified) return std::min(va, vb);
  return std::min(2 * va, 2 * vb + 1);
}

// Convergence bound shared by exp and log: val_E(x) * (p-1) > e.
static void check_exp_domain(const FieldConfig& F, i64 val_e, const char* who) {
  require(val_e * (F.p - 1) > F.e(), Err::DomainError,
          std::string(who) + ": argument valuation too small for convergence");
}

// Number of series terms certifying every dropped term beyond `target` (E-valuation).
// vx is val_E of the argument; `factorial` switches v_p(n!) (exp) vs v_p(n) (log).
static i64 series_nstop(const FieldConfig& F, i64 vx, i64 target, bool factorial) {
  i64 acc = 0, nstop = 1;
  for (i64 n = 1;; ++n) {
    require(n < 30000, Err::PrecisionExhausted, "series bound scan overflow");
    i64 vp = 0, m = n;
    while (m % F.p == 0) {
      m /= F.p;
      ++vp;
    }
    i64 vden = factorial ? (acc += vp) : vp;
    if (n * vx - F.e() * vden <= target) nstop = n;
    // linear minorant n*vx - e*(n-1)/(p-1) dominates all later terms
    if (n * vx - (F.e() * (n - 1) + F.p - 2) / (F.p - 1) > target) break;
  }
  return nstop;
}

template <typename T>
static T exp_series(const T& x, const FieldConfig& F, i64 vx) {
  // dropped terms must clear the result's absolute precision, which rides at
  // the argument's valuation plus the working window
  i64 target = vx + (i64)F.prec * F.e() + 2;
  i64 nstop = series_nstop(F, vx, target, true);
  T term = x, acc = x;
  for (i64 n = 2; n <= nstop; ++n) {
    term = term * x * T::from_F(Fp::from_int(F, n).inv());
    acc = acc + term;
  }
  return acc + T::from_int(F, 1);
}

template <typename T>
static T log_series(const T& z, const FieldConfig& F, i64 vz) {
  i64 target = vz + (i64)F.prec * F.e() + 2;
  i64 nstop = series_nstop(F, vz, target, false);
  T zp = z, acc = z;
  for (i64 n = 2; n <= nstop; ++n) {
    zp = zp * z;
    acc = acc + zp * T::from_F(Fp::from_int(F, (n % 2 == 0) ? -n : n).inv());
  }
  return acc;
}

// Adapter so the series templates cover Fp alongside Ex.
struct FWrap {
  Fp x;
  static FWrap from_F(const Fp& v) { return {v}; }
  static FWrap from_int(const FieldConfig& F, i64 n) { return {Fp::from_int(F, n)}; }
  FWrap operator*(const FWrap& o) const { return {x * o.x}; }
  FWrap operator+(const FWrap& o) const { return {x + o.x}; }
};

Fp padic_exp(const Fp& x) {
  const FieldConfig& F = *x.F;
  if (x.is_zero()) {
    if (x.zabs == Fp::ZEXACT) return Fp::from_int(F, 1);
    check_exp_domain(F, x.zabs * F.e(), "exp");
    return Fp::from_int(F, 1) + x;
  }
  check_exp_domain(F, x.val() * F.e(), "exp");
  return exp_series(FWrap{x}, F, x.val() * F.e()).x;
}

Fp padic_log(const Fp& y) {
  const FieldConfig& F = *y.F;
  Fp z = y - Fp::from_int(F, 1);
  if (z.is_zero()) {
    if (z.zabs == Fp::ZEXACT) return Fp::exact_zero(F);
    check_exp_domain(F, z.zabs * F.e(), "log");
    return z;
  }
  check_exp_domain(F, z.val() * F.e(), "log");
  return log_series(FWrap{z}, F, z.val() * F.e()).x;
}

Ex padic_exp(const Ex& x) {
  const FieldConfig& F = x.cfg();
  if (x.is_zero()) {
    if (x.a.zabs == Fp::ZEXACT && x.b.zabs == Fp::ZEXACT) return Ex::one(F);
    check_exp_domain(F, ex_val_floor(x), "exp");
    return Ex::one(F) + x;
  }
  i64 vx = ex_val_floor(x);
  check_exp_domain(F, vx, "exp");
  return exp_series(x, F, vx);
}

Ex padic_log(const Ex& y) {
  const FieldConfig& F = y.cfg();
  Ex z = y - Ex::one(F);
  if (z.is_zero()) {
    if (z.a.zabs == Fp::ZEXACT && z.b.zabs == Fp::ZEXACT) return Ex::exact_zero(F);
    check_exp_domain(F, ex_val_floor(z), "log");
    return z;
  }
  i64 vz = ex_val_floor(z);
  check_exp_domain(F, vz, "log");
  return log_series(z, F, vz);
}

Ex hilbert90_gamma(const Ex& y) {
  const FieldConfig& F = y.cfg();
  Fp n1 = y.norm() - Fp::from_int(F, 1);
  require(n1.is_zero(), Err::DomainError, "hilbert90_gamma: argument is not norm-one");
  Ex g = y + Ex::one(F);
  require(!g.is_zero(), Err::DomainError, "hilbert90_gamma: no solution of this form at y = -1");
  return g;
}

Fp sqrt_unit(const Fp& x) {
  const FieldConfig& F = *x.F;
  require(!x.is_zero(), Err::DomainError, "sqrt of zero");
  require(x.val() % 2 == 0, Err::DomainError, "sqrt of odd valuation");
  i64 r = x.residue();
  require(legendre(r, F.p) == 1, Err::DomainError, "sqrt of a non-square unit");
  i64 s0 = 0;
  for (i64 t = 1; t < F.p; ++t)
    if (t * t % F.p == r) {
      s0 = t;
      break;
    }
  Fp xv = x;  // unit part at x's own certified precision
  xv.v = 0;
  Fp s = Fp::from_int(F, s0);
  Fp half = Fp::from_rat(F, Rat(1, 2));
  for (int i = 0; i < F.prec + 2; ++i) s = half * (s + xv / s);
  s.v += x.val() / 2;
  return s;
}

}  // namespace locfact
