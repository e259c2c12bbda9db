#pragma once

#include <array>
#include <string>
#include <vector>

#include "field.hpp"

namespace locfact {

// ---------------------------------------------------------------------------
// Unit group structure.
//
// (O/w^m)^x is decomposed as an internal direct product
//     <g0> x <g1> x <g2> x <g3>
// where g0 generates the prime-to-p torsion (a Teichmueller lift) and the
// rest form a basis of the principal units 1 + wO modulo 1 + w^m O.  The
// principal unit part has rank 1 over the base field and rank <= 2 over the
// quadratic extension except when the extension contains the p-th roots of
// unity (p = 3 with ramification through u*p), where the extra p-torsion
// raises the rank to 3.  Unused slots carry order 1.  The basis is found by
// a deterministic greedy scan (maximal order modulo the span so far, with
// the usual purity adjustment), and the construction verifies that the
// product map over the exponent box is a bijection before the group is used.
//
// Exponent tuples are linearized in mixed radix,
//     e = e0 + n0*(e1 + n1*(e2 + n2*e3)),
// and the same linearization indexes the dual group: a character is stored
// as a single integer c, acting on g_i by the phase c_i / n_i.
// ---------------------------------------------------------------------------

constexpr int UG_SLOTS = 4;

struct UnitGroup {
  const FieldConfig* F = nullptr;
  bool on_ext = false;  // units of O_E when true, of O_F when false
  int depth = 0;        // m >= 1

  std::array<Ex, UG_SLOTS> gens;
  std::array<i64, UG_SLOTS> ord{1, 1, 1, 1};
  i64 size = 1;

  // residue keys: a mod p^amod and b mod p^bmod, key = a + b * p^amod
  int amod = 0, bmod = 0;
  std::vector<u32> dlog;  // key -> linearized exponent; ~0u marks non-units

  size_t key(const Ex& u) const;
  i64 index(const Ex& u) const;  // linearized discrete log
  std::array<i64, UG_SLOTS> exps(const Ex& u) const;
  std::array<i64, UG_SLOTS> split(i64 linear) const;
};

// Shared read-only table, built on first use per (config, side, depth).
const UnitGroup& unit_group(const FieldConfig& F, bool on_ext, int depth);

// Largest depth whose discrete-log table fits the memory budget.
int max_char_depth(const FieldConfig& F, bool on_ext);

// Generators of the principal unit filtration layer 1 + w^j O modulo
// 1 + w^(j+1) O, as explicit elements (used for conductor probes).
std::vector<Ex> one_unit_layer_gens(const FieldConfig& F, bool on_ext, int j);

// ---------------------------------------------------------------------------
// Additive characters.
//
// The base character of F is fixed once: psi0(x) = e^{2 pi i {x}} with {x}
// the p-power fractional part, so psi0 is trivial on O_F and nontrivial on
// p^{-1} O_F.  Every additive character in play is psi0(lambda * x) composed
// with nothing (on F), with the trace (on E), or with multiplication by delta
// followed by the trace (the conjugate-odd normalization on E).  The two
// E-side variants are evaluation rules, not separate stored data.
// ---------------------------------------------------------------------------

enum class AddKind { OnF, TraceE, TraceDeltaE };

struct AddChar {
  const FieldConfig* F = nullptr;
  AddKind kind = AddKind::OnF;
  Fp lambda;

  static AddChar standard(const FieldConfig& F);
  static AddChar scaled(const FieldConfig& F, const Fp& lambda);
  AddChar trace() const;        // x in E  |->  psi(Tr x)
  AddChar trace_delta() const;  // x in E  |->  psi(Tr(delta x))

  // Largest n with psi trivial on w^n O and nontrivial on w^{n-1} O,
  // in the valuation normalization of the side the character lives on.
  i64 conductor() const;

  Phase eval(const Fp& x) const;  // OnF only
  Phase eval(const Ex& x) const;
};

// ---------------------------------------------------------------------------
// Multiplicative characters of finite order.
//
// A character is determined by its depth m (it is trivial on 1 + w^m O and
// depth 0 means unramified), the dual index against the fixed generator
// basis of (O/w^m)^x, and its value at the canonical uniformizer (p, or
// omega on a ramified extension).  Values are exact phases.
// ---------------------------------------------------------------------------

enum class DualSign { Plus, Minus, None };

struct MultChar {
  const FieldConfig* F = nullptr;
  bool on_ext = false;
  int depth = 0;
  i64 unit_exponent = 0;
  Phase unif;

  static MultChar make(const FieldConfig& F, bool on_ext, int depth,
                       i64 unit_exponent, Phase unif);
  static MultChar trivial(const FieldConfig& F, bool on_ext);
  // The quadratic character of F^x that is +1 exactly on norms from E^x.
  static MultChar sign_of_norms(const FieldConfig& F);

  Phase eval(const Fp& x) const;
  Phase eval(const Ex& x) const;
  Phase eval_unit(const Ex& u) const;  // unit part only (val 0 required)

  // a(mu): minimal k >= 0 with mu trivial on 1 + w^k O (k = 0: on all units).
  i64 conductor() const;
  i64 order() const;
  bool is_trivial() const;
  bool is_trivial_on_units() const { return unit_exponent == 0; }

  MultChar restrict_to_F() const;        // E-side characters only
  DualSign conjugate_dual_sign() const;  // E-side characters only

  std::string serialize() const;  // "field:depth:unit_exponent:phase_n/phase_d"
  static MultChar parse(const FieldConfig& F, const std::string& s);
};

// Extend an F-side character to the quadratic extension at depth e * m.
// Among all extensions the one with the smallest unit_exponent, then the
// smallest uniformizer phase, is chosen, so the result is deterministic.
MultChar extend_character(const MultChar& target);

// Pointwise equality as characters (evaluation agreement on generators).
bool char_equal(const MultChar& x, const MultChar& y);

}  // namespace locfact
