#include "locfact/norm_one.hpp"

namespace locfact {

i64 norm_one_coset_count(const FieldConfig& F, int depth) {
  require(depth >= 1, Err::DomainError, "depth must be positive");
  i64 n = F.ext == Ext::Unramified ? F.p + 1 : 2;
  int steps = F.ext == Ext::Unramified ? depth - 1 : depth / 2;
  for (int i = 0; i < steps; ++i) n *= F.p;
  return n;
}

static u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

static i64 inv_mod_p(i64 a, i64 p) {
  i64 r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Rescale a unit with N(x0) = 1 + O(p^g) to exact norm one in its coset:
// x = x0 / sqrt(N(x0)), the square root branch congruent to 1.
static Ex polish(const FieldConfig& F, i64 a, i64 b) {
  Ex x0(Fp::from_int(F, a), Fp::from_int(F, b));
  Fp t = sqrt_unit(x0.norm().inv());
  return Ex(x0.a * t, x0.b * t);
}

// Unramified: depth-first lift of solutions of a^2 - u b^2 = 1 mod p^k from
// k = 1 to k = depth.  Every level-k solution has exactly p extensions since
// the gradient (2a, -2ub) never vanishes mod p on the unit sphere.
static void scan_unramified(const FieldConfig& F, int depth,
                            const std::function<void(const Ex&)>& fn) {
  i64 p = F.p, u = F.nonresidue;
  i64 inv2 = inv_mod_p(2, p);

  struct Node {
    u64 a, b;
    int k;
  };
  std::vector<Node> stack;
  for (i64 a0 = 0; a0 < p; ++a0)
    for (i64 b0 = 0; b0 < p; ++b0)
      if ((a0 * a0 - u * b0 * b0 - 1) % p == 0) stack.push_back({(u64)a0, (u64)b0, 1});

  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    if (n.k == depth) {
      fn(polish(F, (i64)n.a, (i64)n.b));
      continue;
    }
    u64 mod = F.pw(n.k + 1), pk = F.pw(n.k);
    // residual r = (1 - N)/p^k mod p; children solve 2a*alpha - 2ub*beta = r
    u64 N = (mulmod(n.a, n.a, mod) + mod - mulmod(u % mod, mulmod(n.b, n.b, mod), mod)) % mod;
    i64 r = (i64)(((1 + mod - N) % mod) / pk) % p;
    if (n.a % p != 0) {
      i64 c = inv_mod_p((i64)(2 * n.a % p), p);
      for (i64 beta = 0; beta < p; ++beta) {
        i64 alpha = (r + 2 * u % p * ((i64)(n.b % (u64)p) * beta % p)) % p * c % p;
        stack.push_back({n.a + (u64)alpha * pk, n.b + (u64)beta * pk, n.k + 1});
      }
    } else {
      i64 ub = u % p * (i64)(n.b % (u64)p) % p;
      i64 beta0 = (p - r % p) % p * inv2 % p * inv_mod_p(ub, p) % p;
      for (i64 alpha = 0; alpha < p; ++alpha)
        stack.push_back({n.a + (u64)alpha * pk, n.b + (u64)beta0 * pk, n.k + 1});
    }
  }
}

// Ramified: for each b mod p^t the two exact solutions a = +-sqrt(1 + rho b^2)
// enumerate the 2p^t cosets directly.
static void scan_ramified(const FieldConfig& F, int depth,
                          const std::function<void(const Ex&)>& fn) {
  int t = depth / 2;
  u64 B = F.pw(t);
  Fp one = Fp::from_int(F, 1), rho = Fp::from_int(F, F.rho_int());
  for (u64 b = 0; b < B; ++b) {
    Fp bf = Fp::from_int(F, (i64)b);
    Fp s = sqrt_unit(one + rho * bf * bf);
    fn(Ex(s, bf));
    fn(Ex(-s, bf));
  }
}

void norm_one_scan(const FieldConfig& F, int depth, const std::function<void(const Ex&)>& fn) {
  require(depth >= 1, Err::DomainError, "depth must be positive");
  require(depth <= F.prec - 2, Err::PrecisionExhausted,
          "depth too deep for the working precision");
  if (F.ext == Ext::Unramified)
    scan_unramified(F, depth, fn);
  else
    scan_ramified(F, depth, fn);
}

std::vector<Ex> norm_one_reps(const FieldConfig& F, int depth) {
  require(depth >= 1 && depth <= F.prec - 2, Err::PrecisionExhausted,
          "depth outside the working window");
  std::vector<Ex> out;
  out.reserve((size_t)norm_one_coset_count(F, depth));
  norm_one_scan(F, depth, [&](const Ex& x) { out.push_back(x); });
  return out;
}

std::pair<u64, u64> norm_one_key(const FieldConfig& F, int depth, const Ex& x) {
  require(depth >= 1, Err::DomainError, "depth must be positive");
  if (F.ext == Ext::Unramified) return {x.a.digits_mod(depth), x.b.digits_mod(depth)};
  int t = depth / 2;
  return {x.a.digits_mod(t + 1), x.b.digits_mod(t)};
}

i64 norm_one_torsion_order(const FieldConfig& F) {
  return F.ext == Ext::Unramified ? F.p + 1 : 2;
}

Ex teichmuller_generator_E(const FieldConfig& F) {
  require(F.ext == Ext::Unramified, Err::DomainError,
          "quadratic residue field needs the unramified extension");
  // generator of the multiplicative group of the residue field F_{p^2},
  // searched in a fixed order so the choice is deterministic
  i64 q1 = F.p * F.p - 1;
  std::vector<i64> primes;
  i64 m = q1;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    primes.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) primes.push_back(m);
  for (i64 ra = 0; ra < F.p; ++ra)
    for (i64 rb = 1; rb < F.p; ++rb) {
      Ex T = teichmuller_E(F, ra, rb);
      bool gen = true;
      for (i64 ell : primes)
        if (T.pow(q1 / ell).same(Ex::one(F))) {
          gen = false;
          break;
        }
      if (gen) return T;
    }
  fail(Err::DomainError, "no residue field generator found");
}

Ex norm_one_torsion_gen(const FieldConfig& F) {
  if (F.ext != Ext::Unramified) return Ex::from_int(F, -1);
  // project a residue field generator to the norm-one part by the
  // (p-1)-st power
  return teichmuller_generator_E(F).pow(F.p - 1);
}

}  // namespace locfact
