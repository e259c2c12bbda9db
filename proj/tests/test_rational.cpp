#include <doctest.h>

#include <cmath>

#include "locfact/rational.hpp"

using namespace locfact;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(3, -6) == Rat(-1, 2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) * Rat(3, 7) == Rat(1, 7));
  CHECK(Rat(1, 3) / Rat(2, 3) == Rat(1, 2));
  CHECK(Rat(5) - Rat(5) == Rat(0));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK_THROWS_AS(Rat(1, 0), Error);
  CHECK_THROWS_AS(Rat(1, 3) / Rat(0), Error);
}

TEST_CASE("phase group") {
  Phase a(1, 3), b(2, 3);
  CHECK((a * b).is_one());
  CHECK(a.inv() == b);
  CHECK(a.pow(3).is_one());
  CHECK(Phase(7, 3) == Phase(1, 3));
  CHECK(Phase(-1, 4) == Phase(3, 4));
  CHECK(Phase::half().as_sign() == -1);
  CHECK(Phase::one().as_sign() == 1);
  CHECK(Phase::of_sign(-1).pow(2).is_one());
  CHECK_THROWS_AS(Phase(1, 3).as_sign(), Error);
  CHECK(Phase(1, 6).order() == 6);
  CHECK(std::abs(Phase(1, 4).cx() - std::complex<double>(0, 1)) < 1e-12);
}

TEST_CASE("cyclotomic integers decide vanishing exactly") {
  // full orbit sums vanish, proper partial sums do not
  for (i64 n : {2, 3, 4, 5, 6, 7, 9, 12}) {
    CycInt full((i64)n);
    for (i64 k = 0; k < n; ++k) full.add_root(Phase(k, n), 1);
    CHECK(full.is_zero());

    CycInt part((i64)n);
    for (i64 k = 0; k < n - 1; ++k) part.add_root(Phase(k, n), 1);
    CHECK_FALSE(part.is_zero());
  }

  // zeta_6 = 1 + zeta_3 as an exact identity
  CycInt lhs(6), rhs(6);
  lhs.add_root(Phase(1, 6), 1);
  rhs.add_root(Phase(0, 1), 1);
  rhs.add_root(Phase(1, 3), 1);
  CHECK(lhs == rhs);

  // multiplication matches the complex embedding
  CycInt x(5), y(5);
  x.add_root(Phase(1, 5), 2);
  x.add_root(Phase(3, 5), -1);
  y.add_root(Phase(2, 5), 1);
  y.add_root(Phase(0, 1), 4);
  CycInt z = x * y;
  CHECK(std::abs(z.cx() - x.cx() * y.cx()) < 1e-9);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_poly(3) == std::vector<i64>{1, 1, 1});
  CHECK(cyclotomic_poly(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
}
