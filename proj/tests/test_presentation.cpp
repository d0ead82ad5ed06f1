#include <doctest.h>

#include <filesystem>

#include "groups.hpp"
#include "pcaag/consistency.hpp"
#include "pcaag/errors.hpp"
#include "pcaag/presentation.hpp"

using namespace pcaag;

namespace {

const char* kDihedral = R"({
  "n": 2,
  "orders": [2, 0],
  "conj": [{"i": 1, "j": 2, "sign": 1, "word": [[2, -1]]}],
  "pow": [{"k": 1, "word": []}]
})";

PcPresentation infinite_dihedral(Integer image = -1) {
  return PcPresentation({2, kInfinite}, {{0, 1, 1, {{1, image}}}}, {{0, {}}});
}

}  // namespace

TEST_CASE("parse the infinite dihedral document") {
  PcPresentation p = parse_presentation(kDihedral);
  CHECK(p.size() == 2);
  CHECK(p.orders() == std::vector<std::int64_t>{2, kInfinite});
  CHECK(*p.conjugate(0, 1, 1) == GeneratorWord{{1, -1}});
  CHECK(p.conjugate(0, 1, -1) == nullptr);
  CHECK(p.power(0).empty());
  CHECK(p == infinite_dihedral());
  CHECK(hirsch_length(p) == 1);
}

TEST_CASE("structural errors") {
  SUBCASE("subject index order") {
    const char* doc = R"({"n": 2, "orders": [2, 0],
      "conj": [{"i": 2, "j": 1, "sign": 1, "word": []}], "pow": [{"k": 1, "word": []}]})";
    CHECK_THROWS_AS(parse_presentation(doc), IndexViolation);
  }
  SUBCASE("word below its subject") {
    const char* doc = R"({"n": 2, "orders": [2, 0],
      "conj": [{"i": 1, "j": 2, "sign": 1, "word": [[1, 1]]}], "pow": [{"k": 1, "word": []}]})";
    CHECK_THROWS_AS(parse_presentation(doc), IndexViolation);
  }
  SUBCASE("missing inverse entry for an infinite subject") {
    const char* doc = R"({"n": 2, "orders": [0, 0],
      "conj": [{"i": 1, "j": 2, "sign": 1, "word": [[2, 1]]}], "pow": []})";
    CHECK_THROWS_AS(parse_presentation(doc), MissingRelation);
  }
  SUBCASE("missing power relation") {
    const char* doc = R"({"n": 2, "orders": [2, 0],
      "conj": [{"i": 1, "j": 2, "sign": 1, "word": [[2, -1]]}], "pow": []})";
    CHECK_THROWS_AS(parse_presentation(doc), MissingRelation);
  }
  SUBCASE("missing conjugation") {
    const char* doc = R"({"n": 2, "orders": [2, 0], "conj": [], "pow": [{"k": 1, "word": []}]})";
    CHECK_THROWS_AS(parse_presentation(doc), MissingRelation);
  }
  SUBCASE("bad order") {
    const char* doc = R"({"n": 1, "orders": [1], "conj": [], "pow": [{"k": 1, "word": []}]})";
    CHECK_THROWS_AS(parse_presentation(doc), MalformedDocument);
  }
  SUBCASE("syntax") {
    CHECK_THROWS_AS(parse_presentation("{\"n\": 2,"), MalformedDocument);
    CHECK_THROWS_AS(parse_presentation(R"({"n": 3, "orders": [0], "conj": [], "pow": []})"),
                    MalformedDocument);
  }
  SUBCASE("index out of range") {
    const char* doc = R"({"n": 2, "orders": [2, 0],
      "conj": [{"i": 1, "j": 2, "sign": 1, "word": [[3, 1]]}], "pow": [{"k": 1, "word": []}]})";
    CHECK_THROWS_AS(parse_presentation(doc), IndexViolation);
  }
  SUBCASE("duplicate entry") {
    const char* doc = R"({"n": 2, "orders": [2, 0],
      "conj": [{"i": 1, "j": 2, "sign": 1, "word": [[2, -1]]},
               {"i": 1, "j": 2, "sign": 1, "word": [[2, -1]]}],
      "pow": [{"k": 1, "word": []}]})";
    CHECK_THROWS_AS(parse_presentation(doc), MalformedDocument);
  }
}

TEST_CASE("serialize then parse is the identity") {
  std::vector<PcPresentation> all = {infinite_dihedral(),
                                     groups::heisenberg5().presentation(),
                                     groups::symmetric4().presentation(),
                                     groups::quaternion16().presentation()};
  Integer huge = Integer::from_string("-123456789012345678901234567890");
  all.push_back(PcPresentation({kInfinite, kInfinite}, {{0, 1, 1, {{1, huge}}}, {0, 1, -1, {{1, 1}}}},
                               {}, "x^2-x-1"));
  for (const auto& p : all) {
    std::string text = serialize_presentation(p);
    PcPresentation q = parse_presentation(text);
    CHECK(q == p);
    CHECK(hirsch_length(q) == hirsch_length(p));
    CHECK(q.source_polynomial() == p.source_polynomial());
  }
  CHECK(serialize_presentation(all.back()).find("\"-123456789012345678901234567890\"") !=
        std::string::npos);
}

TEST_CASE("file round trip") {
  auto path = std::filesystem::temp_directory_path() / "pcaag_test_roundtrip.pcp";
  PcPresentation p = groups::dihedral24().presentation();
  save_presentation(p, path);
  CHECK(load_presentation(path) == p);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_presentation(path), IoError);
}

TEST_CASE("hirsch length") {
  CHECK(hirsch_length(infinite_dihedral()) == 1);
  CHECK(hirsch_length(groups::symmetric4().presentation()) == 0);
}

TEST_CASE("consistency of the infinite dihedral group") {
  ConsistencyReport r = check_consistency(infinite_dihedral());
  CHECK(r.pass);
  CHECK(r.overlaps_checked > 0);

  // x(tt) vs (xt)t with x^t = x^2.
  ConsistencyReport bad = check_consistency(infinite_dihedral(2));
  REQUIRE_FALSE(bad.pass);
  REQUIRE(bad.failure.has_value());
  CHECK(bad.failure->lhs != bad.failure->rhs);
  CHECK(bad.describe().find("FAIL") != std::string::npos);

  Collector c(infinite_dihedral(2));
  CHECK_THROWS_AS(require_consistent(c), InconsistentPresentation);
}

TEST_CASE("hand collection of the failing overlap") {
  // With x^t = x^2: x(tt) = x, but (xt)t = (t x^2) t = x^4.
  Collector c(infinite_dihedral(2));
  GroupElement grouped_right = c.multiply(c.generator(1), c.collect({{0, 1}, {0, 1}}));
  CHECK(grouped_right == GroupElement(std::vector<Integer>{0, 1}));
  GroupElement grouped_left = c.multiply(c.multiply(c.generator(1), c.generator(0)), c.generator(0));
  CHECK(grouped_left == GroupElement(std::vector<Integer>{0, 4}));
}

TEST_CASE("consistency of derived finite presentations") {
  for (auto model : {groups::dihedral24(), groups::heisenberg5(), groups::quaternion16(),
                     groups::symmetric4()}) {
    CHECK(check_consistency(model.presentation()).pass);
  }
}

TEST_CASE("inconsistent finite power relation") {
  // g1^2 = g2 forces g1 to commute with g2, contradicting g2^{g1} = g2^2.
  PcPresentation p({2, 3}, {{0, 1, 1, {{1, 2}}}}, {{0, {{1, 1}}}, {1, {}}});
  CHECK_FALSE(check_consistency(p).pass);
}

TEST_CASE("mismatched supplied inverse relation") {
  PcPresentation good({2, 3}, {{0, 1, 1, {{1, 2}}}, {0, 1, -1, {{1, 2}}}}, {{0, {}}, {1, {}}});
  CHECK(check_consistency(good).pass);
  PcPresentation bad({2, 3}, {{0, 1, 1, {{1, 2}}}, {0, 1, -1, {{1, 1}}}}, {{0, {}}, {1, {}}});
  ConsistencyReport r = check_consistency(bad);
  REQUIRE_FALSE(r.pass);
  CHECK(r.failure->kind == OverlapKind::kSuppliedInverse);
}

TEST_CASE("runaway collection is reported as a failure") {
  // x -> x^2 is not an automorphism of Z.
  PcPresentation p({kInfinite, kInfinite}, {{0, 1, 1, {{1, 2}}}, {0, 1, -1, {{1, 2}}}}, {});
  ConsistencyReport r = check_consistency(p, CollectorOptions{1000});
  CHECK_FALSE(r.pass);
}
