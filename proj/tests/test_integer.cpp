#include <doctest.h>

#include <random>

#include "pcaag/integer.hpp"

using pcaag::Integer;
using Big = Integer::Big;

namespace {

Big floor_div(const Big& a, const Big& m) {
  Big q = a / m;
  if (a % m != 0 && (a < 0) != (m < 0)) q -= 1;
  return q;
}

}  // namespace

TEST_CASE("small values stay inline") {
  Integer a = 12345;
  CHECK(a.is_small());
  CHECK(a.to_string() == "12345");
  CHECK((-a).to_string() == "-12345");
  CHECK(Integer().is_zero());
}

TEST_CASE("overflow promotes and demotes") {
  Integer a = INT64_MAX;
  a += 1;
  CHECK_FALSE(a.is_small());
  CHECK(a.to_string() == "9223372036854775808");
  a -= 1;
  CHECK(a.is_small());
  CHECK(a == Integer(INT64_MAX));

  Integer m = INT64_MIN;
  CHECK(m.is_small());
  CHECK((-m).to_string() == "9223372036854775808");
  CHECK(m.abs().to_big() == -Big(INT64_MIN));
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"0", "-1", "170141183460469231731687303715884105727",
                        "-98765432109876543210987654321"}) {
    CHECK(Integer::from_string(s).to_string() == s);
  }
  CHECK(Integer::from_string("+17") == Integer(17));
  CHECK_THROWS_AS(Integer::from_string("12a"), std::invalid_argument);
  CHECK_THROWS_AS(Integer::from_string("-"), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with cpp_int near the int64 boundary") {
  std::mt19937_64 rng(11);
  std::vector<Big> samples = {0, 1, -1, 2, -2, INT64_MAX, INT64_MIN, Big(INT64_MAX) + 1,
                              Big(INT64_MIN) - 1, Big(INT64_MAX) * 3, Big(1) << 70};
  for (int i = 0; i < 200; ++i) {
    Big v = static_cast<std::int64_t>(rng());
    if (i % 3 == 0) v *= static_cast<std::int64_t>(rng() >> 30);
    if (i % 7 == 0) v >>= 40;
    samples.push_back(v);
  }
  for (const Big& x : samples) {
    for (const Big& y : samples) {
      Integer a(x), b(y);
      REQUIRE((a + b).to_big() == x + y);
      REQUIRE((a - b).to_big() == x - y);
      REQUIRE((a * b).to_big() == x * y);
      REQUIRE(((a <=> b) == std::strong_ordering::less) == (x < y));
      REQUIRE((a == b) == (x == y));
      if (y != 0) {
        REQUIRE((a / b).to_big() == x / y);
        REQUIRE((a % b).to_big() == x % y);
      }
      REQUIRE((a.is_small()) == (x >= INT64_MIN && x <= INT64_MAX));
    }
  }
}

TEST_CASE("floor_divmod") {
  for (std::int64_t m : {1, 2, 3, 7, 12}) {
    for (Big x : {Big(-100), Big(-13), Big(-1), Big(0), Big(5), Big(INT64_MIN),
                  Big(INT64_MIN) * 5 + 3}) {
      auto [q, r] = floor_divmod(Integer(x), m);
      CHECK(q.to_big() == floor_div(x, m));
      CHECK(r >= 0);
      CHECK(r < m);
      CHECK(q.to_big() * m + r == x);
    }
  }
}

TEST_CASE("gcd, isqrt, hash") {
  CHECK(gcd(Integer(12), Integer(-18)) == Integer(6));
  CHECK(isqrt(Integer(99)) == Integer(9));
  CHECK(isqrt(Integer(100)) == Integer(10));
  Integer big = Integer::from_string("100000000000000000000000000000000000000");
  CHECK(isqrt(big) == Integer::from_string("10000000000000000000"));
  CHECK(Integer(INT64_MAX).hash() == (Integer(INT64_MAX) + 1 - 1).hash());
  CHECK(Integer(5).is_odd());
  CHECK_FALSE((Integer(INT64_MAX) + 1).is_odd());
}
