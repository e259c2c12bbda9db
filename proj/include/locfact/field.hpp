#ifndef LOCFACT_FIELD_HPP
#define LOCFACT_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "locfact/rational.hpp"

namespace locfact {

// Which quadratic extension E = F(sqrt(rho)) of F = Q_p is in play.
//   Unramified : rho = u, the smallest positive non-residue mod p
//   RamifiedP  : rho = p
//   RamifiedUP : rho = u*p
enum class Ext { Unramified, RamifiedP, RamifiedUP };

const char* ext_name(Ext e);
Ext ext_from_name(const std::string& s);

// Base field + extension data at a fixed working precision (digits of p).
// All element arithmetic below carries a pointer to its config.
struct FieldConfig {
  i64 p = 3;
  Ext ext = Ext::Unramified;
  int prec = 20;

  i64 nonresidue = 0;  // u: smallest positive quadratic non-residue mod p
  std::vector<u64> ppow;  // p^0 .. p^prec

  FieldConfig(i64 p_, Ext ext_, int prec_);

  int e() const { return ext == Ext::Unramified ? 1 : 2; }
  int f() const { return ext == Ext::Unramified ? 2 : 1; }
  i64 qE() const { return ext == Ext::Unramified ? p * p : p; }
  // rho as a plain integer (u, p, or u*p)
  i64 rho_int() const;
  u64 pw(int k) const { return ppow[k]; }
  static int max_prec(i64 p);
  bool operator==(const FieldConfig& o) const {
    return p == o.p && ext == o.ext && prec == o.prec;
  }
  std::string label() const;
};

// Element of F = Q_p in capped-relative representation: x = u * p^v with the
// unit u certified to `prec` base-p digits.  A "zero" knows only that its
// valuation is >= zabs; exact zeros use zabs = ZEXACT.
struct Fp {
  static constexpr i64 ZEXACT = i64(1) << 40;

  const FieldConfig* F = nullptr;
  i64 v = 0;
  u64 u = 0;
  int prec = 0;
  bool zero = true;
  i64 zabs = ZEXACT;

  Fp() = default;

  static Fp exact_zero(const FieldConfig& F);
  static Fp zero_at(const FieldConfig& F, i64 abs_prec);
  static Fp from_int(const FieldConfig& F, i64 n);
  static Fp from_rat(const FieldConfig& F, const Rat& r);
  static Fp unit_pow(const FieldConfig& F, u64 unit, i64 val);  // unit * p^val, full precision

  bool is_zero() const { return zero; }
  i64 val() const;                    // PrecisionExhausted on a fuzzy zero
  u64 unit_mod(int k) const;          // leading unit digits mod p^k
  i64 residue() const;                // unit digit mod p (0 for zero)
  u64 digits_mod(int k) const;        // canonical residue mod p^k of an integral element
  i64 abs_prec() const { return zero ? zabs : v + prec; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const;
  Fp operator-() const;
  Fp inv() const;
  Fp pow(i64 k) const;

  // Indistinguishable from o at the shared certified precision.
  bool same(const Fp& o) const { return (*this - o).is_zero(); }
  std::string str() const;
};

// Element of E = F(omega), omega^2 = rho, stored as a + b*omega.
// The canonical trace-zero delta is omega itself.
struct Ex {
  Fp a, b;

  Ex() = default;
  Ex(Fp a_, Fp b_) : a(a_), b(b_) {}

  static Ex exact_zero(const FieldConfig& F);
  static Ex from_F(const Fp& x);
  static Ex from_int(const FieldConfig& F, i64 n);
  static Ex omega(const FieldConfig& F);  // the generator, = delta
  static Ex one(const FieldConfig& F) { return from_int(F, 1); }

  const FieldConfig& cfg() const { return *a.F; }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  Ex conj() const { return Ex(a, -b); }
  Fp norm() const;   // a^2 - rho b^2
  Fp trace() const;  // 2a

  Ex operator+(const Ex& o) const { return Ex(a + o.a, b + o.b); }
  Ex operator-(const Ex& o) const { return Ex(a - o.a, b - o.b); }
  Ex operator*(const Ex& o) const;
  Ex operator/(const Ex& o) const { return *this * o.inv(); }
  Ex operator-() const { return Ex(-a, -b); }
  Ex inv() const;
  Ex pow(i64 k) const;

  // Valuation normalized so val_E(uniformizer of E) = 1.
  i64 val() const;
  bool same(const Ex& o) const { return (*this - o).is_zero(); }
  // F-part of an element asserted to lie in F (b must vanish at precision).
  Fp f_part(const char* what) const;
  std::string str() const;
};

// --- field-level operations ---

int legendre(i64 a, i64 p);  // Legendre symbol of a mod p, a not divisible by p

// Quadratic character of F^x attached to E/F: +1 exactly on norms from E^x.
int sgn_ef(const FieldConfig& F, const Fp& x);

// Uniformizer of E: p when unramified, omega when ramified.
Ex uniformizer_E(const FieldConfig& F);

// Teichmueller lift: the unique (q-1)-st root of unity congruent to x mod p.
Fp teichmuller(const FieldConfig& F, i64 residue);
Ex teichmuller_E(const FieldConfig& F, i64 ra, i64 rb);  // lift of ra + rb*omega mod p_E

// Exponential / logarithm with the tame convergence bound (p odd):
// exp needs val_p(x) > 1/(p-1); log(y) needs the same for y - 1. DomainError outside.
Fp padic_exp(const Fp& x);
Fp padic_log(const Fp& y);
Ex padic_exp(const Ex& x);
Ex padic_log(const Ex& y);

// gamma = 1 + y satisfies gamma * conj(gamma)^{-1} = y for norm-one y != -1.
Ex hilbert90_gamma(const Ex& y);

// Square root of a unit square in F (Hensel); DomainError if not a square.
Fp sqrt_unit(const Fp& x);

}  // namespace locfact

#endif
