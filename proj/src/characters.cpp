#include "locfact/characters.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "locfact/norm_one.hpp"

namespace locfact {

namespace {

constexpr i64 TABLE_BUDGET = 1'000'000;
constexpr u32 NOT_A_UNIT = 0xFFFFFFFFu;

i64 primroot(i64 p) {
  std::vector<i64> primes;
  i64 m = p - 1;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    primes.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) primes.push_back(m);
  for (i64 r = 2; r < p; ++r) {
    bool ok = true;
    for (i64 ell : primes) {
      i64 x = 1, b = r, k = (p - 1) / ell;
      while (k) {
        if (k & 1) x = x * b % p;
        b = b * b % p;
        k >>= 1;
      }
      if (x == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  fail(Err::DomainError, "no primitive root");
}

// Residue pair (a mod p^A, b mod p^B) of a + b*omega in O/w^m.  With
// A = ceil(m/2), B = floor(m/2) in the ramified case the cross term rho*b*d
// is determined mod p^A by b*d mod p^B because rho carries one factor of p.
struct PairRing {
  u64 pA, pB;
  u64 rho;

  using P = std::pair<u64, u64>;

  P one() const { return {1 % pA, 0}; }

  P mul(const P& x, const P& y) const {
    u64 bd = (u64)((u128)x.second * y.second % pB);
    u64 a = (u64)(((u128)x.first * y.first + (u128)rho * bd) % pA);
    u64 b = (u64)(((u128)x.first * y.second + (u128)x.second * y.first) % pB);
    return {a, b};
  }

  P pow(P x, i64 k) const {
    P r = one();
    while (k) {
      if (k & 1) r = mul(r, x);
      x = mul(x, x);
      k >>= 1;
    }
    return r;
  }

  u64 key(const P& x) const { return x.first + x.second * pA; }
};

std::unique_ptr<UnitGroup> build_unit_group(const FieldConfig& F, bool on_ext,
                                            int m) {
  auto out = std::make_unique<UnitGroup>();
  UnitGroup& G = *out;
  G.F = &F;
  G.on_ext = on_ext;
  G.depth = m;
  bool ram = on_ext && F.ext != Ext::Unramified;
  if (!on_ext) {
    G.amod = m;
    G.bmod = 0;
  } else if (!ram) {
    G.amod = m;
    G.bmod = m;
  } else {
    G.amod = (m + 1) / 2;
    G.bmod = m / 2;
  }
  PairRing R{F.pw(G.amod), F.pw(G.bmod), on_ext ? (u64)F.rho_int() : 0};

  // prime-to-p torsion
  i64 n0;
  Ex g0 = Ex::one(F);
  if (on_ext && F.ext == Ext::Unramified) {
    g0 = teichmuller_generator_E(F);
    n0 = F.p * F.p - 1;
  } else {
    g0 = Ex::from_F(teichmuller(F, primroot(F.p)));
    n0 = F.p - 1;
  }
  PairRing::P G0{g0.a.digits_mod(G.amod),
                 G.bmod ? g0.b.digits_mod(G.bmod) : 0};

  // principal units 1 + wO mod 1 + w^m O, enumerated in a fixed order
  i64 hsize;
  std::function<PairRing::P(i64)> elem;
  if (!on_ext) {
    hsize = (i64)F.pw(m - 1);
    elem = [&F, m](i64 i) -> PairRing::P {
      return {(1 + (u64)F.p * (u64)i) % F.pw(m), 0};
    };
  } else if (!ram) {
    i64 side = (i64)F.pw(m - 1);
    hsize = side * side;
    elem = [&F, m, side](i64 i) -> PairRing::P {
      return {(1 + (u64)F.p * (u64)(i % side)) % F.pw(m),
              (u64)F.p * (u64)(i / side) % F.pw(m)};
    };
  } else {
    i64 side = (i64)F.pw(G.amod - 1);
    hsize = (i64)F.pw(m - 1);
    int am = G.amod, bm = G.bmod;
    elem = [&F, side, am, bm](i64 i) -> PairRing::P {
      return {(1 + (u64)F.p * (u64)(i % side)) % F.pw(am),
              (u64)(i / side) % F.pw(bm)};
    };
  }

  // Greedy basis of the principal unit p-group: each round takes the element
  // of maximal order modulo the span built so far and straightens it into an
  // exact complement (the span exponents of its power are divisible by that
  // order because round orders only decrease).
  std::vector<PairRing::P> pgens;
  std::vector<i64> pord;
  std::unordered_map<u64, std::array<i64, 3>> span;
  span.reserve((size_t)hsize * 2);
  span.emplace(R.key(R.one()), std::array<i64, 3>{0, 0, 0});
  i64 covered = 1;
  while (covered < hsize) {
    require(pgens.size() < 3, Err::DomainError,
            "principal unit rank exceeds three");
    i64 best_ord = 1, best_i = -1;
    for (i64 i = 0; i < hsize; ++i) {
      PairRing::P x = elem(i);
      i64 o = 1;
      while (!span.count(R.key(x))) {
        x = R.pow(x, F.p);
        o *= F.p;
        require(o <= hsize, Err::DomainError, "principal unit order overflow");
      }
      if (o > best_ord) {
        best_ord = o;
        best_i = i;
      }
    }
    require(best_i >= 0, Err::DomainError, "span does not exhaust the units");
    PairRing::P g = elem(best_i);
    const auto& t = span.at(R.key(R.pow(g, best_ord)));
    for (size_t j = 0; j < pgens.size(); ++j) {
      require(t[j] % best_ord == 0, Err::DomainError,
              "purity adjustment not integral");
      i64 back = (pord[j] - t[j] / best_ord % pord[j]) % pord[j];
      g = R.mul(g, R.pow(pgens[j], back));
    }
    // extend the span by the straightened generator
    std::vector<std::pair<u64, std::array<i64, 3>>> base(span.begin(),
                                                         span.end());
    PairRing::P gp = g;
    for (i64 k = 1; k < best_ord; ++k) {
      for (auto& [key, ex] : base) {
        auto nx = ex;
        nx[pgens.size()] = k;
        PairRing::P cell{key % R.pA, key / R.pA};
        span.emplace(R.key(R.mul(cell, gp)), nx);
      }
      gp = R.mul(gp, g);
    }
    pgens.push_back(g);
    pord.push_back(best_ord);
    covered *= best_ord;
  }

  G.ord = {n0, 1, 1, 1};
  G.gens = {g0, Ex::one(F), Ex::one(F), Ex::one(F)};
  for (size_t j = 0; j < pgens.size(); ++j) {
    G.ord[j + 1] = pord[j];
    G.gens[j + 1] = Ex(Fp::from_int(F, (i64)pgens[j].first),
                       Fp::from_int(F, (i64)pgens[j].second));
  }
  G.size = n0 * covered;

  // fill the table; any collision disproves the direct product claim
  std::array<PairRing::P, UG_SLOTS> gp{G0, R.one(), R.one(), R.one()};
  for (size_t j = 0; j < pgens.size(); ++j) gp[j + 1] = pgens[j];
  G.dlog.assign((size_t)(R.pA * R.pB), NOT_A_UNIT);
  i64 e = 0;
  PairRing::P x3 = R.one();
  for (i64 e3 = 0; e3 < G.ord[3]; ++e3) {
    PairRing::P x2 = x3;
    for (i64 e2 = 0; e2 < G.ord[2]; ++e2) {
      PairRing::P x1 = x2;
      for (i64 e1 = 0; e1 < G.ord[1]; ++e1) {
        PairRing::P x0 = x1;
        for (i64 e0 = 0; e0 < G.ord[0]; ++e0) {
          u64 k = R.key(x0);
          require(G.dlog[k] == NOT_A_UNIT, Err::DomainError,
                  "unit group basis collision");
          G.dlog[k] = (u32)e;
          ++e;
          x0 = R.mul(x0, gp[0]);
        }
        x1 = R.mul(x1, gp[1]);
      }
      x2 = R.mul(x2, gp[2]);
    }
    x3 = R.mul(x3, gp[3]);
  }
  return out;
}

Phase frac_phase(const Fp& y) {
  if (y.is_zero()) {
    require(y.abs_prec() >= 0, Err::PrecisionExhausted,
            "cannot certify integrality");
    return Phase::one();
  }
  i64 v = y.val();
  if (v >= 0) return Phase::one();
  int m = (int)(-v);
  require(m <= y.prec, Err::PrecisionExhausted,
          "fractional digits beyond certified precision");
  return Phase((i64)y.unit_mod(m), (i64)y.F->pw(m));
}

i64 lcm_checked(i64 a, i64 b) {
  i64 g = std::gcd(a, b);
  i128 l = (i128)(a / g) * b;
  require(l < (i128(1) << 62), Err::DomainError, "character order overflow");
  return (i64)l;
}

}  // namespace

// --- UnitGroup ---

size_t UnitGroup::key(const Ex& x) const {
  if (!on_ext) (void)x.f_part("base field unit");
  u64 a = x.a.digits_mod(amod);
  u64 b = bmod ? x.b.digits_mod(bmod) : 0;
  return (size_t)(a + b * F->pw(amod));
}

i64 UnitGroup::index(const Ex& x) const {
  u32 d = dlog[key(x)];
  require(d != NOT_A_UNIT, Err::DomainError, "not a unit at this depth");
  return (i64)d;
}

std::array<i64, UG_SLOTS> UnitGroup::split(i64 lin) const {
  require(lin >= 0 && lin < size, Err::ConfigError, "exponent out of range");
  std::array<i64, UG_SLOTS> e{};
  for (int i = 0; i < UG_SLOTS; ++i) {
    e[i] = lin % ord[i];
    lin /= ord[i];
  }
  return e;
}

std::array<i64, UG_SLOTS> UnitGroup::exps(const Ex& x) const {
  return split(index(x));
}

int max_char_depth(const FieldConfig& F, bool on_ext) {
  int per = (on_ext && F.ext == Ext::Unramified) ? 2 : 1;
  int m = 0;
  i64 space = 1;
  while (m + 1 <= F.prec - 2) {
    bool over = false;
    i64 next = space;
    for (int i = 0; i < per && !over; ++i) {
      next *= F.p;
      if (next > TABLE_BUDGET) over = true;
    }
    if (over) break;
    space = next;
    ++m;
  }
  return m;
}

const UnitGroup& unit_group(const FieldConfig& F, bool on_ext, int depth) {
  require(depth >= 1, Err::ConfigError, "unit group needs positive depth");
  require(depth <= max_char_depth(F, on_ext), Err::ConfigError,
          "depth exceeds the discrete-log table budget");
  static std::mutex mu;
  static std::map<std::tuple<i64, int, int, bool, int>,
                  std::unique_ptr<UnitGroup>>
      registry;
  std::lock_guard<std::mutex> lock(mu);
  auto k = std::make_tuple(F.p, (int)F.ext, F.prec, on_ext, depth);
  auto it = registry.find(k);
  if (it == registry.end())
    it = registry.emplace(k, build_unit_group(F, on_ext, depth)).first;
  return *it->second;
}

std::vector<Ex> one_unit_layer_gens(const FieldConfig& F, bool on_ext, int j) {
  require(j >= 1 && j <= 2 * (F.prec - 2), Err::ConfigError,
          "layer outside the working window");
  Fp one = Fp::from_int(F, 1);
  if (!on_ext) return {Ex::from_F(one + Fp::unit_pow(F, 1, j))};
  if (F.ext == Ext::Unramified)
    return {Ex::from_F(one + Fp::unit_pow(F, 1, j)),
            Ex(one, Fp::unit_pow(F, 1, j))};
  if (j % 2 == 0) return {Ex::from_F(one + Fp::unit_pow(F, 1, j / 2))};
  return {Ex(one, Fp::unit_pow(F, 1, (j - 1) / 2))};
}

// --- additive characters ---

AddChar AddChar::standard(const FieldConfig& F) {
  return scaled(F, Fp::from_int(F, 1));
}

AddChar AddChar::scaled(const FieldConfig& F, const Fp& lambda) {
  require(!lambda.is_zero(), Err::ConfigError,
          "additive character scale must be nonzero");
  AddChar c;
  c.F = &F;
  c.kind = AddKind::OnF;
  c.lambda = lambda;
  return c;
}

AddChar AddChar::trace() const {
  require(kind == AddKind::OnF, Err::ConfigError,
          "trace lift starts from a base field character");
  AddChar c = *this;
  c.kind = AddKind::TraceE;
  return c;
}

AddChar AddChar::trace_delta() const {
  require(kind == AddKind::OnF, Err::ConfigError,
          "trace lift starts from a base field character");
  AddChar c = *this;
  c.kind = AddKind::TraceDeltaE;
  return c;
}

Phase AddChar::eval(const Fp& x) const {
  require(kind == AddKind::OnF, Err::DomainError,
          "extension character needs an extension argument");
  return frac_phase(lambda * x);
}

Phase AddChar::eval(const Ex& x) const {
  switch (kind) {
    case AddKind::OnF:
      return frac_phase(lambda * x.f_part("additive character argument"));
    case AddKind::TraceE:
      return frac_phase(lambda * x.trace());
    case AddKind::TraceDeltaE:
      return frac_phase(lambda * (Ex::omega(*F) * x).trace());
  }
  fail(Err::DomainError, "unknown additive character kind");
}

i64 AddChar::conductor() const {
  i64 nf = -lambda.val();
  if (kind == AddKind::OnF) return nf;
  i64 base = F->e() * nf;
  Ex w = uniformizer_E(*F);
  auto trivial_at = [&](i64 n) {
    Ex y = w.pow(n);
    return eval(y).is_one() && eval(y * Ex::omega(*F)).is_one();
  };
  for (i64 n = base - 3; n <= base + 3; ++n)
    if (trivial_at(n)) {
      require(!trivial_at(n - 1), Err::DomainError, "conductor probe not sharp");
      return n;
    }
  fail(Err::DomainError, "conductor outside probe window");
}

// --- multiplicative characters ---

MultChar MultChar::make(const FieldConfig& F, bool on_ext, int depth,
                        i64 unit_exponent, Phase unif) {
  require(depth >= 0, Err::ConfigError, "negative character depth");
  if (depth == 0) {
    require(unit_exponent == 0, Err::ConfigError,
            "depth zero admits only the trivial unit part");
  } else {
    const UnitGroup& G = unit_group(F, on_ext, depth);
    require(unit_exponent >= 0 && unit_exponent < G.size, Err::ConfigError,
            "unit exponent out of range");
  }
  MultChar c;
  c.F = &F;
  c.on_ext = on_ext;
  c.depth = depth;
  c.unit_exponent = unit_exponent;
  c.unif = unif;
  return c;
}

MultChar MultChar::trivial(const FieldConfig& F, bool on_ext) {
  return make(F, on_ext, 0, 0, Phase::one());
}

MultChar MultChar::sign_of_norms(const FieldConfig& F) {
  if (F.ext == Ext::Unramified) return make(F, false, 0, 0, Phase::half());
  // ramified: the Legendre character on units (the fixed torsion generator is
  // a non-residue, so its dual index is (p-1)/2), sign at p computed directly
  Phase at_p = Phase::of_sign(sgn_ef(F, Fp::from_int(F, F.p)));
  return make(F, false, 1, (F.p - 1) / 2, at_p);
}

Phase MultChar::eval_unit(const Ex& u) const {
  require(u.val() == 0, Err::DomainError, "unit evaluation needs valuation zero");
  if (depth == 0) return Phase::one();
  const UnitGroup& G = unit_group(*F, on_ext, depth);
  auto e = G.exps(u);
  auto c = G.split(unit_exponent);
  Phase out;
  for (int i = 0; i < UG_SLOTS; ++i)
    if (G.ord[i] > 1) out = out * Phase(c[i] * e[i] % G.ord[i], G.ord[i]);
  return out;
}

Phase MultChar::eval(const Ex& x) const {
  if (!on_ext) return eval(x.f_part("character argument"));
  require(!x.is_zero(), Err::DomainError, "character of zero");
  i64 v = x.val();
  Ex u = x * uniformizer_E(*F).pow(-v);
  return unif.pow(v) * eval_unit(u);
}

Phase MultChar::eval(const Fp& x) const {
  if (on_ext) return eval(Ex::from_F(x));
  require(!x.is_zero(), Err::DomainError, "character of zero");
  i64 v = x.val();
  Fp u = x * Fp::unit_pow(*F, 1, -v);
  return unif.pow(v) * eval_unit(Ex::from_F(u));
}

i64 MultChar::conductor() const {
  if (unit_exponent == 0) return 0;
  i64 a = 1;
  for (int j = 1; j < depth; ++j)
    for (const Ex& g : one_unit_layer_gens(*F, on_ext, j))
      if (!eval_unit(g).is_one()) {
        a = j + 1;
        break;
      }
  return a;
}

i64 MultChar::order() const {
  i64 L = unif.order();
  if (depth > 0) {
    const UnitGroup& G = unit_group(*F, on_ext, depth);
    auto c = G.split(unit_exponent);
    for (int i = 0; i < UG_SLOTS; ++i)
      if (G.ord[i] > 1) L = lcm_checked(L, G.ord[i] / std::gcd(c[i], G.ord[i]));
  }
  return L;
}

bool MultChar::is_trivial() const {
  return unit_exponent == 0 && unif.is_one();
}

MultChar MultChar::restrict_to_F() const {
  require(on_ext, Err::DomainError,
          "restriction needs a character of the extension");
  int mf = depth == 0 ? 0 : (depth + F->e() - 1) / F->e();
  Phase at_p = eval(Ex::from_int(*F, F->p));
  if (mf == 0) return make(*F, false, 0, 0, at_p);
  const UnitGroup& GF = unit_group(*F, false, mf);
  std::array<i64, UG_SLOTS> comp{};
  for (int i = 0; i < UG_SLOTS; ++i) {
    if (GF.ord[i] <= 1) continue;
    Phase t = eval_unit(GF.gens[i]);
    require(GF.ord[i] % t.order() == 0, Err::RestrictionMismatch,
            "restricted generator value has incompatible order");
    comp[i] = t.t.n * (GF.ord[i] / t.order()) % GF.ord[i];
  }
  i64 c = 0;
  for (int i = UG_SLOTS - 1; i >= 0; --i) c = c * GF.ord[i] + comp[i];
  return make(*F, false, mf, c, at_p);
}

DualSign MultChar::conjugate_dual_sign() const {
  MultChar r = restrict_to_F();
  if (char_equal(r, trivial(*F, false))) return DualSign::Plus;
  if (char_equal(r, sign_of_norms(*F))) return DualSign::Minus;
  return DualSign::None;
}

std::string MultChar::serialize() const {
  std::ostringstream os;
  os << (on_ext ? 'E' : 'F') << ':' << depth << ':' << unit_exponent << ':'
     << unif.t.n << '/' << unif.t.d;
  return os.str();
}

MultChar MultChar::parse(const FieldConfig& F, const std::string& s) {
  std::vector<std::string> part;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      part.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  part.push_back(cur);
  require(part.size() == 4, Err::ConfigError,
          "character string needs four colon-separated fields");
  require(part[0] == "E" || part[0] == "F", Err::ConfigError,
          "character field tag must be E or F");
  auto slash = part[3].find('/');
  require(slash != std::string::npos, Err::ConfigError,
          "character phase needs the form n/d");
  try {
    int depth = (int)std::stoll(part[1]);
    i64 ue = std::stoll(part[2]);
    i64 pn = std::stoll(part[3].substr(0, slash));
    i64 pd = std::stoll(part[3].substr(slash + 1));
    return make(F, part[0] == "E", depth, ue, Phase(Rat(pn, pd)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Err::ConfigError, "malformed character string");
  }
}

MultChar extend_character(const MultChar& target) {
  require(!target.on_ext, Err::DomainError,
          "extension starts from a base field character");
  const FieldConfig& F = *target.F;
  int me = F.e() * target.depth;
  i64 c = 0;
  if (me > 0) {
    require(me <= max_char_depth(F, true), Err::ConfigError,
            "extension depth exceeds the table budget");
    const UnitGroup& GE = unit_group(F, true, me);
    const UnitGroup& GF = unit_group(F, false, target.depth);
    // each base-field generator pins one linear congruence on the dual index
    struct Constraint {
      i64 mod;
      std::array<i64, UG_SLOTS> coef;
      i64 rhs;
    };
    std::vector<Constraint> cons;
    for (int i = 0; i < UG_SLOTS; ++i) {
      if (GF.ord[i] <= 1) continue;
      auto alpha = GE.exps(GF.gens[i]);
      Phase t = target.eval_unit(GF.gens[i]);
      i64 mod = t.order();
      for (int j = 0; j < UG_SLOTS; ++j)
        if (GE.ord[j] > 1) mod = lcm_checked(mod, GE.ord[j]);
      Constraint cn{mod, {}, t.t.n * (mod / t.order()) % mod};
      for (int j = 0; j < UG_SLOTS; ++j)
        if (GE.ord[j] > 1)
          cn.coef[j] = (i64)((i128)alpha[j] * (mod / GE.ord[j]) % mod);
      cons.push_back(cn);
    }
    bool found = false;
    for (i64 cand = 0; cand < GE.size && !found; ++cand) {
      auto cc = GE.split(cand);
      bool ok = true;
      for (const Constraint& cn : cons) {
        i128 v = 0;
        for (int j = 0; j < UG_SLOTS; ++j) v += (i128)cn.coef[j] * cc[j];
        if ((i64)(v % cn.mod) != cn.rhs) {
          ok = false;
          break;
        }
      }
      if (ok) {
        c = cand;
        found = true;
      }
    }
    require(found, Err::NoExtension, "no extension with the requested restriction");
  }
  Phase up;
  if (F.ext == Ext::Unramified) {
    up = target.unif;
  } else {
    // p = w^2 * (p/rho): the value at w is a square root of the value at p
    // divided by the unit part; the smaller of the two roots is chosen (the
    // other differs by the unramified quadratic twist, which restricts
    // identically)
    Ex wunit = Ex::from_F(Fp::from_int(F, F.p) / Fp::from_int(F, F.rho_int()));
    MultChar partial = MultChar::make(F, true, me, c, Phase::one());
    Phase r = target.unif / partial.eval_unit(wunit);
    up = Phase(Rat(r.t.n, r.t.d * 2));
  }
  return MultChar::make(F, true, me, c, up);
}

bool char_equal(const MultChar& x, const MultChar& y) {
  if (!(*x.F == *y.F) || x.on_ext != y.on_ext) return false;
  const FieldConfig& F = *x.F;
  int m = std::max({x.depth, y.depth, 1});
  const UnitGroup& G = unit_group(F, x.on_ext, m);
  for (int i = 0; i < UG_SLOTS; ++i)
    if (G.ord[i] > 1 && !(x.eval_unit(G.gens[i]) == y.eval_unit(G.gens[i])))
      return false;
  Ex w = x.on_ext ? uniformizer_E(F) : Ex::from_int(F, F.p);
  return x.eval(w) == y.eval(w);
}

}  // namespace locfact
