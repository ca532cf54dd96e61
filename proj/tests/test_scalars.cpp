#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kmt/scalars.hpp"

using namespace kmt;

TEST_CASE("integer arithmetic agrees with mpz") {
  Ring z = Ring::parse("Z");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (int k = 0; k < 500; ++k) {
    long a = d(rng), b = d(rng);
    mpz_class A = a, B = b;
    CHECK((z.from_int(a) + z.from_int(b)).to_integer() == A + B);
    CHECK((z.from_int(a) - z.from_int(b)).to_integer() == A - B);
    CHECK((z.from_int(a) * z.from_int(b)).to_integer() == A * B);
  }
  CHECK(z.from_int(3).pow(40).to_integer() == mpz_class("12157665459056928801"));
}

TEST_CASE("modular units and inverses") {
  Ring f7 = Ring::parse("zmod:7");
  for (long x = 1; x < 7; ++x) CHECK((f7.from_int(x) * f7.from_int(x).invert()).is_one());
  CHECK(f7.from_int(-1).to_integer() == 6);
  CHECK(f7.from_int(0).try_invert() == std::nullopt);

  Ring z6 = Ring::parse("zmod:6");
  CHECK_THROWS_AS(z6.from_int(2).invert(), NotAUnit);
  CHECK(z6.from_int(5).invert().to_integer() == 5);
  CHECK(z6.from_int(3).is_zero() == false);
}

TEST_CASE("rationals") {
  Ring q = Ring::parse("Q");
  RingValue third = q.from_rational(mpq_class(1, 3));
  CHECK((third * q.from_int(3)).is_one());
  CHECK(q.parse_value("2/4").to_rational() == mpq_class(1, 2));
  CHECK_THROWS(q.from_rational(mpq_class(1, 2)).to_integer());
}

TEST_CASE("polynomial expansion") {
  Ring p = Ring::parse("poly:Q:r,s");
  RingValue r = p.var("r"), s = p.var("s");
  RingValue lhs = p.parse_value("(r+s)^2");
  CHECK(lhs == r * r + p.from_int(2) * r * s + s * s);
  CHECK((r - r).is_zero());
  CHECK(p.parse_value("r*s - s*r").is_zero());
  CHECK(r.is_nilpotent() == false);
  CHECK(p.is_polynomial());
  CHECK(lhs.coefficient({1, 1}).to_rational() == 2);
}

TEST_CASE("ring specs round-trip") {
  for (const char* s : {"Z", "Q", "zmod:7", "poly:Q:r,s", "poly:zmod:5:t"}) CHECK(Ring::parse(s).name() == s);
  CHECK_THROWS_AS(Ring::parse("zmod:x"), ScalarError);
  CHECK_THROWS_AS(Ring::parse("R"), ScalarError);
}

TEST_CASE("reduction maps") {
  Ring z = Ring::parse("Z"), f5 = Ring::parse("zmod:5"), f4 = Ring::parse("zmod:4");
  CHECK(ring_reduce(f5, z.from_int(12)).to_integer() == 2);
  CHECK(ring_reduce(f5, z.from_int(-1)).to_integer() == 4);
  Ring q = Ring::parse("Q");
  CHECK(ring_reduce(f5, q.from_rational(mpq_class(1, 2))).to_integer() == 3);
  CHECK_THROWS_AS(ring_reduce(f4, q.from_rational(mpq_class(1, 2))), ScalarError);
  // reduction is a ring map
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int k = 0; k < 100; ++k) {
    RingValue a = z.from_int(d(rng)), b = z.from_int(d(rng));
    CHECK(ring_reduce(f5, a * b) == ring_reduce(f5, a) * ring_reduce(f5, b));
    CHECK(ring_reduce(f5, a + b) == ring_reduce(f5, a) + ring_reduce(f5, b));
  }
}
