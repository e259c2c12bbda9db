#include <doctest.h>

#include <set>
#include <utility>

#include "locfact/field.hpp"
#include "test_util.hpp"

using namespace locfact;
using namespace locfact::testutil;

TEST_CASE("config validation") {
  CHECK_NOTHROW(FieldConfig(3, Ext::Unramified, 8));
  CHECK_NOTHROW(FieldConfig(3, Ext::RamifiedP, 39));
  CHECK_THROWS_AS(FieldConfig(3, Ext::Unramified, 7), Error);
  CHECK_THROWS_AS(FieldConfig(3, Ext::Unramified, 40), Error);
  CHECK_THROWS_AS(FieldConfig(5, Ext::Unramified, 27), Error);
  CHECK_THROWS_AS(FieldConfig(7, Ext::Unramified, 23), Error);
  CHECK_THROWS_AS(FieldConfig(2, Ext::Unramified, 8), Error);
  CHECK_THROWS_AS(FieldConfig(9, Ext::Unramified, 8), Error);
  CHECK(FieldConfig::max_prec(3) == 39);
  CHECK(FieldConfig::max_prec(5) == 26);
  CHECK(FieldConfig::max_prec(7) == 22);
  CHECK(FieldConfig(3, Ext::Unramified, 8).nonresidue == 2);
  CHECK(FieldConfig(5, Ext::Unramified, 8).nonresidue == 2);
  CHECK(FieldConfig(7, Ext::Unramified, 8).nonresidue == 3);
}

TEST_CASE("base arithmetic and precision bookkeeping") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    Fp one = Fp::from_int(F, 1);
    Fp z = Fp::exact_zero(F);
    CHECK((one - one).is_zero());
    CHECK((one + z).same(one));
    CHECK((one * z).is_zero());
    CHECK((one * z).zabs == Fp::ZEXACT);
    CHECK_THROWS_AS(z.inv(), Error);

    for (int i = 0; i < 50; ++i) {
      Fp x = rand_fp(F), y = rand_fp(F);
      CHECK((x + y).same(y + x));
      CHECK(((x + y) - y).same(x));
      CHECK((x * y).same(y * x));
      CHECK((x * y / y).same(x));
      CHECK((x * x.inv()).same(one));
      CHECK(x.pow(5).same(x * x * x * x * x));
      CHECK(x.pow(-2).same((x * x).inv()));
    }

    // cancellation: (1 + p^k) - 1 recovers valuation k with reduced precision
    Fp w = one + Fp::unit_pow(F, 1, 5);
    Fp d = w - one;
    CHECK(d.val() == 5);
    CHECK(d.abs_prec() == F.prec);

    // integers embed consistently
    CHECK(Fp::from_int(F, 360).same(Fp::from_int(F, 36) * Fp::from_int(F, 10)));
    CHECK(Fp::from_int(F, -7).same(-Fp::from_int(F, 7)));
    CHECK(Fp::from_int(F, F.p * F.p).val() == 2);
    CHECK(Fp::from_rat(F, Rat(22, 7)).same(Fp::from_int(F, 22) / Fp::from_int(F, 7)));
  }
}

TEST_CASE("quadratic extension arithmetic") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    Ex w = Ex::omega(F);
    CHECK((w * w).same(Ex::from_int(F, F.rho_int())));
    CHECK(w.trace().is_zero());
    CHECK(w.norm().same(Fp::from_int(F, -F.rho_int())));
    CHECK(uniformizer_E(F).val() == 1);
    CHECK(Ex::from_int(F, F.p).val() == F.e());

    for (int i = 0; i < 30; ++i) {
      Ex x(rand_fp(F), rand_fp(F));
      Ex y(rand_fp(F), rand_fp(F));
      CHECK((x * y).same(y * x));
      CHECK((x * y).norm().same(x.norm() * y.norm()));
      CHECK((x + y).conj().same(x.conj() + y.conj()));
      CHECK((x * x.inv()).same(Ex::one(F)));
      CHECK(x.norm().same((x * x.conj()).f_part("norm check")));
      CHECK(x.val() + y.val() == (x * y).val());
    }

    // valuation normalization
    Ex u = rand_unit_E(F);
    CHECK(u.val() == 0);
    CHECK((u * uniformizer_E(F)).val() == 1);
    if (F.ext != Ext::Unramified) {
      CHECK((w * Ex::from_int(F, F.p)).val() == 3);
      CHECK(w.val() == 1);
    }
  }
}

// Brute-force oracle: classify which (valuation, unit mod p^2) classes of F^x
// are norms from E^x, by enumerating a + b*omega over a residue box.  Norm
// units form an open subgroup containing 1 + pZ_p, so unit classes mod p^2
// decide membership; the box mod p^3 determines norms mod p^3.
static std::set<std::pair<i64, i64>> norm_classes(const FieldConfig& F) {
  std::set<std::pair<i64, i64>> cls;
  i64 B = (i64)F.pw(3), rho = F.rho_int(), p2 = F.p * F.p;
  for (i64 a = 0; a < B; ++a)
    for (i64 b = 0; b < B; ++b) {
      if (a == 0 && b == 0) continue;
      i64 N = a * a - rho * b * b;
      if (N == 0) continue;
      i64 v = 0, m = N < 0 ? -N : N;
      while (m % F.p == 0) {
        m /= F.p;
        ++v;
      }
      if (v > 1) continue;  // box precision certifies classes of valuation <= 1
      i64 unit = ((N / (i64)F.pw((int)v)) % p2 + p2) % p2;
      cls.insert({v, unit});
    }
  return cls;
}

TEST_CASE("sign character against norm enumeration") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    auto cls = norm_classes(F);
    i64 p2 = F.p * F.p;
    int plus = 0, minus = 0;
    for (i64 v = 0; v <= 1; ++v)
      for (i64 u = 1; u < p2; ++u) {
        if (u % F.p == 0) continue;
        Fp x = Fp::unit_pow(F, (u64)u, v);
        int s = sgn_ef(F, x);
        bool is_norm = cls.count({v, u}) > 0;
        CHECK(s == (is_norm ? 1 : -1));
        (s == 1 ? plus : minus)++;
      }
    // index two: both signs occur
    CHECK(plus == minus);

    // multiplicativity on random elements
    for (int i = 0; i < 60; ++i) {
      Fp x = rand_fp(F), y = rand_fp(F);
      CHECK(sgn_ef(F, x * y) == sgn_ef(F, x) * sgn_ef(F, y));
    }

    // trivial on norms of arbitrary nonzero E-elements
    for (int i = 0; i < 40; ++i) {
      Ex z(rand_fp(F), rand_fp(F));
      CHECK(sgn_ef(F, z.norm()) == 1);
    }
  }
}

TEST_CASE("teichmuller lifts") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    for (i64 r = 1; r < F.p; ++r) {
      Fp t = teichmuller(F, r);
      CHECK(t.residue() == r);
      CHECK(t.pow(F.p - 1).same(Fp::from_int(F, 1)));
      CHECK(t.pow(F.p).same(t));
    }
    if (F.ext == Ext::Unramified) {
      // residue field F_{p^2}: lifts of order dividing p^2 - 1
      Ex t = teichmuller_E(F, 1, 1);
      CHECK(t.pow(F.p * F.p - 1).same(Ex::one(F)));
      CHECK(t.pow(F.p * F.p).same(t));
      // the norm of a lift is the lift of the residue norm
      Fp nt = t.norm();
      CHECK(nt.pow(F.p - 1).same(Fp::from_int(F, 1)));
    }
  }
}

TEST_CASE("exp and log") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    Fp one = Fp::from_int(F, 1);

    for (int i = 0; i < 20; ++i) {
      Fp x = rand_fp(F, 1, 3);
      Fp y = rand_fp(F, 1, 3);
      CHECK(padic_log(padic_exp(x)).same(x));
      CHECK(padic_exp(x + y).same(padic_exp(x) * padic_exp(y)));
      Fp u = one + rand_fp(F, 1, 3);
      CHECK(padic_exp(padic_log(u)).same(u));
    }

    // domain: exp needs val_E * (p-1) > e
    CHECK_THROWS_AS(padic_exp(rand_unit(F)), Error);
    if (F.p == 3 && F.ext != Ext::Unramified) {
      // val_E = 1 is outside the disc for e = 2, p = 3
      CHECK_THROWS_AS(padic_exp(Ex::omega(F)), Error);
      Ex x = Ex::omega(F) * Ex::from_int(F, F.p);  // val_E = 3
      CHECK(padic_log(padic_exp(x)).same(x));
    }
    if (F.p >= 5 && F.ext != Ext::Unramified) {
      Ex x = Ex::omega(F);  // val_E = 1 converges once (p-1) > 2
      CHECK(padic_log(padic_exp(x)).same(x));
    }

    for (int i = 0; i < 15; ++i) {
      Ex x(rand_fp(F, 1, 3), rand_fp(F, 1, 3));
      CHECK(padic_log(padic_exp(x)).same(x));
      // trace-zero argument exponentiates to norm one
      Ex t(Fp::exact_zero(F), rand_fp(F, 1, 3));
      Ex g = padic_exp(t);
      CHECK(g.norm().same(one));
      CHECK(g.conj().same(padic_exp(-t)));
    }
  }
}

TEST_CASE("hilbert 90 section") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    for (int i = 0; i < 25; ++i) {
      Ex z = rand_unit_E(F);
      Ex y = z / z.conj();
      CHECK(y.norm().same(Fp::from_int(F, 1)));
      Ex g = hilbert90_gamma(y);
      CHECK((g / g.conj()).same(y));
    }
    CHECK_THROWS_AS(hilbert90_gamma(Ex::from_int(F, -1)), Error);
    CHECK_THROWS_AS(hilbert90_gamma(Ex::omega(F)), Error);
  }
}

TEST_CASE("unit square roots") {
  for (const auto& F : all_configs()) {
    CAPTURE(F.label());
    for (int i = 0; i < 25; ++i) {
      Fp x = rand_fp(F, -2, 2);
      Fp sq = x * x;
      Fp r = sqrt_unit(sq);
      CHECK((r.same(x) || r.same(-x)));
    }
    i64 nr = FieldConfig(F.p, Ext::Unramified, 8).nonresidue;
    CHECK_THROWS_AS(sqrt_unit(Fp::from_int(F, nr)), Error);
    CHECK_THROWS_AS(sqrt_unit(Fp::from_int(F, F.p)), Error);
  }
}
