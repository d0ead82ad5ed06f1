#include <doctest.h>

#include <random>

#include "groups.hpp"
#include "oracles.hpp"
#include "pcaag/collector.hpp"
#include "pcaag/consistency.hpp"
#include "pcaag/errors.hpp"
#include "pcaag/numberfield.hpp"

using namespace pcaag;

namespace {

GroupElement ge(std::vector<Integer> v) { return GroupElement(std::move(v)); }

PcPresentation infinite_dihedral() {
  return PcPresentation({2, kInfinite}, {{0, 1, 1, {{1, -1}}}}, {{0, {}}});
}

using groups::golden;
using groups::golden_model;

GeneratorWord random_word(std::mt19937_64& rng, std::size_t n, int letters, int max_exp) {
  std::uniform_int_distribution<std::size_t> gen(0, n - 1);
  std::uniform_int_distribution<int> exp(-max_exp, max_exp);
  GeneratorWord w;
  for (int i = 0; i < letters; ++i) w.push_back(gen(rng), exp(rng));
  return w;
}

void check_against_model(const oracle::FiniteModel& model) {
  PcPresentation p = model.presentation();
  REQUIRE(check_consistency(p).pass);
  Collector c(p);
  oracle::NaiveCollector naive(p);
  const std::size_t n = p.size();
  std::vector<GroupElement> all;
  for (const auto& f : model.forms) all.push_back(ge(std::vector<Integer>(f.begin(), f.end())));

  for (std::size_t a = 0; a < all.size(); ++a) {
    const auto& x = all[a];
    REQUIRE(c.is_normal_form(x));
    GroupElement inv = c.invert(x);
    REQUIRE(model.evaluate(inv) == model.inverse(model.images[a]));
    for (int k : {-3, -1, 0, 2, 5}) {
      REQUIRE(model.evaluate(c.power(x, k)) == oracle::mpow(k < 0 ? model.inverse(model.images[a])
                                                                   : model.images[a],
                                                             std::abs(k)));
    }
    for (std::size_t b = 0; b < all.size(); ++b) {
      const auto& y = all[b];
      GroupElement xy = c.multiply(x, y);
      REQUIRE(c.is_normal_form(xy));
      REQUIRE(model.evaluate(xy) == model.images[a] * model.images[b]);
      auto letters = naive.letters_of(model.forms[a]);
      auto more = naive.letters_of(model.forms[b]);
      letters.insert(letters.end(), more.begin(), more.end());
      std::vector<std::int64_t> expected = naive.collect(letters);
      for (std::size_t i = 0; i < n; ++i) REQUIRE(xy[i] == Integer(expected[i]));
      REQUIRE(model.evaluate(c.conjugate(y, x)) ==
              model.inverse(model.images[a]) * model.images[b] * model.images[a]);
    }
  }
}

}  // namespace

TEST_CASE("infinite dihedral examples") {
  Collector c(infinite_dihedral());
  CHECK(c.collect({{0, 1}, {1, 1}, {0, 1}}) == ge({0, -1}));
  CHECK(c.collect({}) == c.identity());
  CHECK(c.multiply(ge({1, 0}), ge({1, 0})) == ge({0, 0}));
  CHECK(c.invert(ge({0, 5})) == ge({0, -5}));
  CHECK(c.conjugate(ge({0, 1}), ge({1, 0})) == ge({0, -1}));
  CHECK(c.invert(c.identity()) == c.identity());
  CHECK(c.collect({{0, -1}}) == ge({1, 0}));
  CHECK(c.collect({{0, 7}, {1, 3}}) == ge({1, 3}));
  CHECK(c.generator(0, -3) == ge({1, 0}));
}

TEST_CASE("golden ratio group example") {
  Collector c(golden());
  // x1 * u = u * x1^u = u * x2
  CHECK(c.collect({{2, 1}, {0, 1}}) == ge({1, 0, 0, 1}));
  CHECK(c.conjugate_image(0, 3, 1) == ge({0, 0, 1, 1}));
  CHECK(c.conjugate_image(0, 2, -1) == ge({0, 0, -1, 1}));
  CHECK(c.abelian_start() == 2);
}

TEST_CASE("finite groups agree with their matrix models on all pairs") {
  SUBCASE("D24") { check_against_model(groups::dihedral24()); }
  SUBCASE("Heisenberg mod 5") { check_against_model(groups::heisenberg5()); }
  SUBCASE("Q16") { check_against_model(groups::quaternion16()); }
  SUBCASE("S4") { check_against_model(groups::symmetric4()); }
}

TEST_CASE("finite models enumerate the full group") {
  CHECK(groups::dihedral24().forms.size() == 24);
  CHECK(groups::heisenberg5().forms.size() == 125);
  CHECK(groups::quaternion16().forms.size() == 16);
  CHECK(groups::symmetric4().forms.size() == 24);
}

TEST_CASE("golden ratio group agrees with the affine model") {
  auto p = golden();
  Collector c(p);
  auto model = golden_model();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    GeneratorWord wa = random_word(rng, 4, 6, 4);
    GeneratorWord wb = random_word(rng, 4, 6, 4);
    GroupElement a = c.collect(wa);
    GroupElement b = c.collect(wb);
    REQUIRE(c.is_normal_form(a));
    REQUIRE(model.evaluate(a) == model.evaluate(wa));
    REQUIRE(model.evaluate(c.multiply(a, b)) == oracle::big_mul(model.evaluate(a), model.evaluate(b)));
    REQUIRE(model.evaluate(c.invert(a)) == oracle::big_inverse(model.evaluate(a)));
  }
}

TEST_CASE("group axioms on random elements") {
  auto p = golden();
  Collector c(p);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 1000; ++t) {
    GroupElement a = c.collect(random_word(rng, 4, 5, 6));
    GroupElement b = c.collect(random_word(rng, 4, 5, 6));
    GroupElement d = c.collect(random_word(rng, 4, 5, 6));
    REQUIRE(c.multiply(c.multiply(a, b), d) == c.multiply(a, c.multiply(b, d)));
    REQUIRE(c.multiply(a, c.identity()) == a);
    REQUIRE(c.multiply(c.identity(), a) == a);
    REQUIRE(c.multiply(a, c.invert(a)).is_identity());
    REQUIRE(c.multiply(c.invert(a), a).is_identity());
    REQUIRE(c.invert(c.invert(a)) == a);
    REQUIRE(c.conjugate(c.conjugate(b, a), c.invert(a)) == b);
    REQUIRE(c.conjugate(b, c.identity()) == b);
    REQUIRE(c.power(a, 1) == a);
    REQUIRE(c.power(a, -1) == c.invert(a));
    REQUIRE(c.power(a, 0).is_identity());
    REQUIRE(c.power(a, 6) == c.multiply(c.power(a, 2), c.power(a, 4)));
    REQUIRE(c.is_normal_form(c.multiply(a, b)));
    REQUIRE(c.conjugate(b, a) == c.conjugate(b, a, c.invert(a)));
  }
}

TEST_CASE("collection is invariant under free and relator insertions") {
  auto p = golden();
  Collector c(p);
  std::mt19937_64 rng(23);
  // Defining relators of the golden ratio group.
  std::vector<GeneratorWord> relators = {
      {{0, -1}, {2, 1}, {0, 1}, {3, -1}},
      {{1, 2}},
      {{1, -1}, {2, 1}, {1, 1}, {2, 1}},
      {{2, 1}, {3, 1}, {2, -1}, {3, -1}},
      {{0, 1}, {1, 1}, {0, -1}, {1, -1}},
      {{0, -1}, {3, 1}, {0, 1}, {3, -1}, {2, -1}},
  };
  for (int t = 0; t < 500; ++t) {
    GeneratorWord w = random_word(rng, 4, 8, 3);
    GroupElement base = c.collect(w);
    std::uniform_int_distribution<std::size_t> pos(0, w.size());
    std::size_t at = pos(rng);
    std::vector<Letter> letters(w.begin(), w.end());
    GeneratorWord insert = (t % 2 == 0) ? relators[t % relators.size()]
                                        : GeneratorWord{{static_cast<std::size_t>(t % 4), t % 5 + 1},
                                                        {static_cast<std::size_t>(t % 4), -(t % 5 + 1)}};
    std::vector<Letter> out(letters.begin(), letters.begin() + at);
    out.insert(out.end(), insert.begin(), insert.end());
    out.insert(out.end(), letters.begin() + at, letters.end());
    REQUIRE(c.collect(GeneratorWord(out)) == base);
  }
}

TEST_CASE("finite positions stay in range") {
  Collector c(groups::quaternion16().presentation());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    GroupElement a = c.collect(random_word(rng, 2, 6, 20));
    REQUIRE(c.is_normal_form(a));
    REQUIRE(c.is_normal_form(c.power(a, -7)));
  }
}

TEST_CASE("length and tuple length") {
  CHECK(length(ge({})) == Integer(0));
  CHECK(length(ge({2, 0, -3})) == Integer(5));
  std::vector<GroupElement> tuple = {ge({2, 0, -3}), ge({0, 1, 0})};
  CHECK(tuple_length(tuple) == Integer(6));
  std::vector<GroupElement> swapped = {tuple[1], tuple[0]};
  CHECK(tuple_length(swapped) == Integer(6));
  CHECK(tuple_length(std::vector<GroupElement>{}) == Integer(0));
  Collector c(golden());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    GroupElement a = c.collect(random_word(rng, 4, 3, 2));
    CHECK((length(a).is_zero()) == a.is_identity());
  }
}

TEST_CASE("huge exponents") {
  Collector c(golden());
  GroupElement g = c.generator(0, 3000);
  GroupElement x = c.generator(2);
  GroupElement y = c.conjugate(x, g);
  // Coordinates of x1^{u^3000} are Fibonacci numbers with hundreds of digits.
  CHECK_FALSE(y[2].is_small());
  CHECK(c.conjugate(y, c.invert(g)) == x);
  CHECK(c.conjugate(y, c.generator(0, -2999)) == c.generator(3));
  Integer e = Integer::from_string("1000000000000000000000");
  CHECK(c.power(c.generator(3), e)[3] == e);
}

TEST_CASE("step budget raises") {
  Collector c(golden(), CollectorOptions{50});
  GroupElement g = c.generator(0, 100000);
  CHECK_THROWS_AS(c.conjugate(c.collect({{2, 5}, {3, 7}}), g), CollectionBudgetExceeded);
}
