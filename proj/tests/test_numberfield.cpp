#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "oracles.hpp"
#include "pcaag/collector.hpp"
#include "pcaag/consistency.hpp"
#include "pcaag/errors.hpp"
#include "pcaag/numberfield.hpp"
#include "pcaag/polynomial.hpp"

using namespace pcaag;

namespace {

// Real roots counted from the eigenvalues of the companion matrix.
Signature numeric_signature(const IntPolynomial& f) {
  const int n = f.degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = f.leading().to_double();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -f.coefficient(i).to_double() / lead;
  Eigen::VectorXcd roots = comp.eigenvalues();
  Signature s;
  s.n = n;
  for (int i = 0; i < n; ++i) {
    if (std::abs(roots[i].imag()) < 1e-7) ++s.s;
  }
  s.t = (n - s.s) / 2;
  return s;
}

bool squarefree(int d) {
  for (int p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

// Smallest unit > 1 written as (a + b sqrt d)/2 with a^2 - d b^2 = +-4, a, b > 0;
// for d != 1 mod 4 both a and b must be even, otherwise a = b mod 2.
std::pair<__int128, __int128> pell_scan(int d) {
  const bool half = d % 4 == 1;
  for (__int128 b = 1; b < 2'000'000; ++b) {
    if (!half && b % 2 == 1) continue;
    __int128 best = 0;
    for (int sign : {-4, 4}) {
      __int128 sq = d * b * b + sign;
      if (sq <= 0) continue;
      auto a = static_cast<__int128>(std::sqrt(static_cast<long double>(sq)));
      while (a * a > sq) --a;
      while ((a + 1) * (a + 1) <= sq) ++a;
      if (a * a != sq) continue;
      if (half ? (a - b) % 2 != 0 : a % 2 != 0) continue;
      if (best == 0 || a < best) best = a;
    }
    if (best != 0) return {best, b};
  }
  throw std::logic_error("pell scan bound too small");
}

IntPolynomial field_polynomial(int d) {
  if (d % 4 == 1) return IntPolynomial({Integer(-(d - 1) / 4), Integer(-1), Integer(1)});
  return IntPolynomial({Integer(-d), Integer(0), Integer(1)});
}

// (a + b w)(c + e w) in Z[w] with w^2 = tr w - nm.
std::pair<Integer, Integer> zw_mul(Integer a, Integer b, Integer c, Integer e, Integer tr, Integer nm) {
  Integer bb = b * e;
  return {a * c - bb * nm, a * e + b * c + bb * tr};
}

std::vector<oracle::BigMatrix> big_units(const UnitAction& u) {
  oracle::BigMatrix m;
  for (const auto& row : u.forward) {
    std::vector<oracle::BigInt> r;
    for (const auto& v : row) r.push_back(v.to_big());
    m.push_back(r);
  }
  return {m};
}

}  // namespace

TEST_CASE("signature examples") {
  CHECK(signature(parse_polynomial("x^2-x-1")) == Signature{2, 2, 0});
  CHECK(signature(parse_polynomial("x^5-x^3-1")) == Signature{5, 1, 2});
  CHECK(signature(parse_polynomial("x-1")) == Signature{1, 1, 0});
  CHECK_THROWS_AS(signature(parse_polynomial("x^2-2x+1")), NotSquarefree);
  CHECK_THROWS_AS(signature(parse_polynomial("5")), InvalidPolynomial);
}

TEST_CASE("signature agrees with companion eigenvalues") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> deg(1, 9);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    int n = deg(rng);
    std::vector<Integer> c;
    for (int i = 0; i < n; ++i) c.push_back(coeff(rng));
    c.push_back(1);
    IntPolynomial f(c);
    Signature exact;
    try {
      exact = signature(f);
    } catch (const NotSquarefree&) {
      continue;
    }
    CHECK_MESSAGE(numeric_signature(f) == exact, f.to_string());
    CHECK(exact.n == exact.s + 2 * exact.t);
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("predicted Hirsch lengths of the experiment polynomials") {
  const std::vector<std::pair<const char*, int>> table = {
      {"x-1", 1},        {"x^2-x-1", 3},    {"x^3-x-1", 4},     {"x^5-x^3-1", 7},
      {"x^7-x^3-1", 10}, {"x^9-7x^3-1", 14}, {"x^11-x^3-1", 16}, {"x^11-3x^3-1", 17}};
  for (const auto& [poly, h] : table) {
    CHECK_MESSAGE(predicted_hirsch(parse_polynomial(poly)) == h, poly);
  }
}

TEST_CASE("polynomial parsing") {
  CHECK(parse_polynomial("[1, -1, -1]") == parse_polynomial("x^2-x-1"));
  CHECK(parse_polynomial("x^9 - 7x^3 - 1") == parse_polynomial("x^9-7*x^3-1"));
  CHECK(parse_polynomial("x^2-x-1").to_string() == "x^2-x-1");
  CHECK(parse_polynomial("-x + 3").dense() == std::vector<Integer>{-1, 3});
  CHECK_THROWS_AS(parse_polynomial("x^^2"), InvalidPolynomial);
  CHECK_THROWS_AS(parse_polynomial("[1, a]"), InvalidPolynomial);
  CHECK_THROWS_AS(parse_polynomial(""), InvalidPolynomial);
}

TEST_CASE("fundamental unit examples") {
  auto unit = [](const char* f) { return *quadratic_field_data(parse_polynomial(f)).fundamental_unit; };
  CHECK(unit("x^2-x-1") == QuadraticUnit{0, 1});
  CHECK(unit("x^2-2") == QuadraticUnit{1, 1});
  CHECK(unit("x^2-3") == QuadraticUnit{2, 1});
  CHECK(quadratic_field_data(parse_polynomial("x^2-12")).d == Integer(3));
  CHECK(quadratic_field_data(parse_polynomial("x^2+3x+1")).d == Integer(5));
}

TEST_CASE("fundamental unit agrees with a Pell scan") {
  for (int d = 2; d < 139; ++d) {
    if (!squarefree(d)) continue;
    QuadraticFieldData data = quadratic_field_data(field_polynomial(d));
    REQUIRE(data.d == Integer(d));
    auto [a, b] = pell_scan(d);
    const QuadraticUnit& u = *data.fundamental_unit;
    Integer norm = quadratic_norm(data, u);
    CHECK((norm == Integer(1) || norm == Integer(-1)));
    if (d % 4 == 1) {
      // (a + b sqrt d)/2 = (a - b)/2 + b w
      CHECK_MESSAGE(u.q == Integer(static_cast<std::int64_t>(b)), d);
      CHECK_MESSAGE(u.p == Integer(static_cast<std::int64_t>((a - b) / 2)), d);
    } else {
      CHECK_MESSAGE(u.q == Integer(static_cast<std::int64_t>(b / 2)), d);
      CHECK_MESSAGE(u.p == Integer(static_cast<std::int64_t>(a / 2)), d);
    }
  }
}

TEST_CASE("unit action matrices") {
  QuadraticFieldData golden = quadratic_field_data(parse_polynomial("x^2-x-1"));
  UnitAction m = unit_action_matrices(golden);
  CHECK(m.forward == IntMatrix{{0, 1}, {1, 1}});
  CHECK(m.inverse == IntMatrix{{-1, 1}, {1, 0}});

  for (int d = 2; d < 60; ++d) {
    if (!squarefree(d)) continue;
    QuadraticFieldData data = quadratic_field_data(field_polynomial(d));
    UnitAction a = unit_action_matrices(data);
    Integer tr = data.omega_is_half ? 1 : 0;
    Integer nm = data.omega_is_half ? (Integer(1) - data.d) / Integer(4) : -data.d;
    const auto& [p, q] = *data.fundamental_unit;
    auto r0 = zw_mul(1, 0, p, q, tr, nm);
    auto r1 = zw_mul(0, 1, p, q, tr, nm);
    CHECK(a.forward == IntMatrix{{r0.first, r0.second}, {r1.first, r1.second}});
    Integer det = determinant(a.forward);
    CHECK((det == Integer(1) || det == Integer(-1)));
    IntMatrix prod(2, std::vector<Integer>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) prod[i][j] += a.forward[i][k] * a.inverse[k][j];
    CHECK(prod == IntMatrix{{1, 0}, {0, 1}});
  }
}

TEST_CASE("matrix helpers") {
  IntMatrix m = {{2, 1, 0}, {1, 1, 0}, {0, 0, -1}};
  CHECK(determinant(m) == Integer(-1));
  CHECK(unimodular_inverse(m) == IntMatrix{{1, -1, 0}, {-1, 2, 0}, {0, 0, -1}});
  CHECK(determinant({{0, 1}, {1, 0}}) == Integer(-1));
  CHECK(determinant({{2, 0}, {0, 3}}) == Integer(6));
  CHECK_THROWS_AS(unimodular_inverse({{2, 0}, {0, 1}}), InvalidParameter);
  CHECK_THROWS_AS(unimodular_inverse({{1, 1}, {1, 1}}), InvalidParameter);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(build_semidirect_presentation(parse_polynomial("x^3-x-1")), UnsupportedDegree);
  CHECK_THROWS_AS(build_semidirect_presentation(parse_polynomial("x^2+1")), NotRealQuadratic);
  CHECK_THROWS_AS(build_semidirect_presentation(parse_polynomial("x^2-1")), InvalidPolynomial);
  CHECK_THROWS_AS(build_semidirect_presentation(parse_polynomial("2x^2-1")), InvalidPolynomial);
  CHECK_THROWS_AS(build_semidirect_presentation(parse_polynomial("3")), InvalidPolynomial);
}

TEST_CASE("degree one gives the infinite dihedral group") {
  PcPresentation p = build_semidirect_presentation(parse_polynomial("x-1"));
  CHECK(p.orders() == std::vector<std::int64_t>{2, kInfinite});
  CHECK(*p.conjugate(0, 1, 1) == GeneratorWord{{1, -1}});
  CHECK(hirsch_length(p) == 1);
  CHECK(check_consistency(p).pass);
  CHECK(p.source_polynomial() == "x-1");
}

TEST_CASE("golden ratio presentation") {
  PcPresentation p = build_semidirect_presentation(parse_polynomial("x^2-x-1"));
  CHECK(p.orders() == std::vector<std::int64_t>{kInfinite, 2, kInfinite, kInfinite});
  CHECK(*p.conjugate(0, 2, 1) == GeneratorWord{{3, 1}});
  CHECK(*p.conjugate(0, 3, 1) == GeneratorWord{{2, 1}, {3, 1}});
  CHECK(*p.conjugate(0, 1, 1) == GeneratorWord{{1, 1}});
  CHECK(*p.conjugate(1, 2, 1) == GeneratorWord{{2, -1}});
  CHECK(hirsch_length(p) == 3);
}

TEST_CASE("built groups are consistent and faithful to the affine model") {
  std::mt19937_64 rng(8);
  for (int d = 2; d < 40; ++d) {
    if (!squarefree(d)) continue;
    IntPolynomial f = field_polynomial(d);
    QuadraticFieldData data = quadratic_field_data(f);
    PcPresentation p = build_semidirect_presentation(data);
    REQUIRE(check_consistency(p).pass);
    CHECK(hirsch_length(p) == static_cast<std::size_t>(predicted_hirsch(f)));
    oracle::AffineModel model(big_units(unit_action_matrices(data)), 2);
    // Every defining relation holds in the model.
    for (const auto& rel : p.conjugates()) {
      oracle::BigMatrix gi = rel.sign > 0 ? model.gens[rel.i] : model.inverses[rel.i];
      oracle::BigMatrix gi_inv = rel.sign > 0 ? model.inverses[rel.i] : model.gens[rel.i];
      CHECK(oracle::big_mul(oracle::big_mul(gi_inv, model.gens[rel.j]), gi) == model.evaluate(rel.word));
    }
    for (const auto& pw : p.powers()) {
      CHECK(oracle::big_mul(model.gens[pw.k], model.gens[pw.k]) == model.evaluate(pw.word));
    }
    Collector c(p);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int t = 0; t < 60; ++t) {
      GeneratorWord w;
      for (int l = 0; l < 6; ++l) w.push_back(static_cast<std::size_t>(l % 4), e(rng));
      GroupElement a = c.collect(w);
      GroupElement b = c.collect(w.inverse());
      REQUIRE(model.evaluate(a) == model.evaluate(w));
      REQUIRE(c.multiply(a, b).is_identity());
    }
  }
}

TEST_CASE("generic semidirect construction in dimension three") {
  // x^3 - x - 1: the root is a unit; multiplication on (1, t, t^2).
  IntMatrix m = {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
  PcPresentation p = semidirect_presentation(3, {UnitAction{m, unimodular_inverse(m)}}, "x^3-x-1");
  CHECK(check_consistency(p).pass);
  CHECK(hirsch_length(p) == 4);
  oracle::BigMatrix bm = {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
  oracle::AffineModel model({bm}, 3);
  Collector c(p);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> e(-4, 4);
  std::uniform_int_distribution<std::size_t> g(0, 4);
  for (int t = 0; t < 300; ++t) {
    GeneratorWord w;
    for (int l = 0; l < 8; ++l) w.push_back(g(rng), e(rng));
    REQUIRE(model.evaluate(c.collect(w)) == model.evaluate(w));
  }
}
