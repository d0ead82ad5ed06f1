#include "pcaag/aag.hpp"

#include "json_util.hpp"
#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

using detail::json;

json element_to_json(const GroupElement& g) {
  json out = json::array();
  for (const auto& e : g.exponents()) out.push_back(detail::integer_to_json(e));
  return out;
}

GroupElement element_from_json(const json& v) {
  if (!v.is_array()) throw MalformedDocument("element must be an exponent array");
  std::vector<Integer> exps;
  for (const auto& e : v) exps.push_back(detail::integer_from_json(e));
  return GroupElement(std::move(exps));
}

json elements_to_json(std::span<const GroupElement> xs) {
  json out = json::array();
  for (const auto& g : xs) out.push_back(element_to_json(g));
  return out;
}

std::vector<GroupElement> elements_from_json(const json& v) {
  if (!v.is_array()) throw MalformedDocument("expected an array of elements");
  std::vector<GroupElement> out;
  for (const auto& g : v) out.push_back(element_from_json(g));
  return out;
}

json key_to_json(const PrivateKey& k) {
  json factors = json::array();
  for (const auto& f : k.factors) factors.push_back(json::array({f.index + 1, f.sign}));
  return {{"factors", factors}, {"element", element_to_json(k.element)}};
}

PrivateKey key_from_json(const json& v) {
  PrivateKey k;
  for (const auto& f : v.at("factors")) {
    auto index = f.at(0).get<std::int64_t>();
    int sign = f.at(1).get<int>();
    if (index < 1 || (sign != 1 && sign != -1)) throw MalformedDocument("bad key factor");
    k.factors.push_back({static_cast<std::size_t>(index - 1), sign});
  }
  k.element = element_from_json(v.at("element"));
  return k;
}

}  // namespace

void validate(const ProtocolParameters& p) {
  if (p.n1 == 0 || p.n2 == 0) throw InvalidParameter("public sets must be non-empty");
  if (p.lmin < 1) throw InvalidParameter("lmin must be >= 1");
  if (p.lmin > p.lmax) throw InvalidParameter("lmin must not exceed lmax");
  if (p.key_factors == 0) throw InvalidParameter("private keys need at least one factor");
}

EavesdropperView AagInstance::view(const Collector& collector) const {
  return {&collector, alice_public.elements, bob_public.elements, bob_conjugated};
}

GroupElement random_element(const Collector& c, std::int64_t lmin, std::int64_t lmax, Rng& rng,
                            const SamplingOptions& options) {
  if (lmin < 1 || lmin > lmax) throw InvalidParameter("need 1 <= lmin <= lmax");
  const std::size_t n = c.size();
  if (n == 0) throw InvalidParameter("presentation has no generators");
  const Integer target = rng.between(lmin, lmax);
  const Integer upper = lmax;
  const std::uint64_t draw_limit =
      static_cast<std::uint64_t>(options.draws_per_length) * static_cast<std::uint64_t>(lmax);

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    GroupElement g = c.identity();
    Integer len = 0;
    std::vector<bool> rejected(2 * n, false);
    std::size_t remaining = 2 * n;
    std::uint64_t draws = 0;
    while (len < target && remaining > 0 && draws++ < draw_limit) {
      std::uint64_t pick = rng.below(remaining);
      std::size_t slot = 0;
      for (;; ++slot) {
        if (rejected[slot]) continue;
        if (pick-- == 0) break;
      }
      const std::size_t k = slot / 2;
      const int sign = slot % 2 == 0 ? 1 : -1;
      GroupElement next = c.multiply(g, c.generator(k, sign));
      Integer next_len = length(next);
      if (next_len > upper) {
        rejected[slot] = true;
        --remaining;
        continue;
      }
      g = std::move(next);
      len = std::move(next_len);
      std::fill(rejected.begin(), rejected.end(), false);
      remaining = 2 * n;
    }
    if (len >= target) return g;
  }
  throw GenerationStalled("no element with length in [" + std::to_string(lmin) + ", " +
                          std::to_string(lmax) + "] reached");
}

PublicSet generate_public_set(const Collector& c, std::size_t n, std::int64_t lmin,
                              std::int64_t lmax, Rng& rng) {
  if (n == 0) throw InvalidParameter("public set size must be positive");
  PublicSet set;
  set.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) set.elements.push_back(random_element(c, lmin, lmax, rng));
  return set;
}

GroupElement evaluate_factors(const Collector& c, std::span<const GroupElement> pub,
                              std::span<const KeyFactor> factors) {
  GroupElement g = c.identity();
  for (const auto& f : factors) {
    if (f.index >= pub.size()) throw InvalidParameter("key factor index out of range");
    g = c.multiply(g, f.sign > 0 ? pub[f.index] : c.invert(pub[f.index]));
  }
  return g;
}

PrivateKey generate_private_key(const Collector& c, const PublicSet& pub, std::size_t factors,
                                Rng& rng) {
  if (factors == 0) throw InvalidParameter("private keys need at least one factor");
  if (pub.size() == 0) throw InvalidParameter("empty public set");
  PrivateKey key;
  for (std::size_t i = 0; i < factors; ++i) {
    std::size_t index = rng.below(pub.size());
    key.factors.push_back({index, rng.sign()});
  }
  key.element = evaluate_factors(c, pub.elements, key.factors);
  return key;
}

GroupElement alice_shared_key(const Collector& c, const AagInstance& inst) {
  const PrivateKey& a = inst.ground_truth.alice_key;
  return c.multiply(c.invert(a.element), evaluate_factors(c, inst.alice_conjugated, a.factors));
}

GroupElement bob_shared_key(const Collector& c, const AagInstance& inst) {
  const PrivateKey& b = inst.ground_truth.bob_key;
  return c.multiply(c.invert(b.element), evaluate_factors(c, inst.bob_conjugated, b.factors));
}

AagInstance run_protocol(const Collector& c, const ProtocolParameters& params, Rng& rng) {
  validate(params);
  AagInstance inst;
  inst.params = params;
  inst.alice_public = generate_public_set(c, params.n1, params.lmin, params.lmax, rng);
  inst.bob_public = generate_public_set(c, params.n2, params.lmin, params.lmax, rng);
  PrivateKey a = generate_private_key(c, inst.alice_public, params.key_factors, rng);
  PrivateKey b = generate_private_key(c, inst.bob_public, params.key_factors, rng);
  const GroupElement a_inv = c.invert(a.element);
  const GroupElement b_inv = c.invert(b.element);

  for (const auto& bi : inst.bob_public.elements) {
    inst.bob_conjugated.push_back(c.conjugate(bi, a.element, a_inv));
  }
  for (const auto& ai : inst.alice_public.elements) {
    inst.alice_conjugated.push_back(c.conjugate(ai, b.element, b_inv));
  }
  inst.ground_truth.shared =
      c.multiply(c.multiply(a_inv, b_inv), c.multiply(a.element, b.element));
  inst.ground_truth.alice_key = std::move(a);
  inst.ground_truth.bob_key = std::move(b);

  GroupElement ka = alice_shared_key(c, inst);
  GroupElement kb = bob_shared_key(c, inst);
  if (ka != inst.ground_truth.shared) {
    throw ProtocolSelfCheckFailed("Alice's derivation differs from A^-1 B^-1 A B");
  }
  if (!c.multiply(ka, kb).is_identity()) {
    throw ProtocolSelfCheckFailed("K_A * K_B is not the identity");
  }
  for (std::size_t i = 0; i < inst.bob_conjugated.size(); ++i) {
    if (c.conjugate(inst.bob_conjugated[i], a_inv, inst.ground_truth.alice_key.element) !=
        inst.bob_public[i]) {
      throw ProtocolSelfCheckFailed("conjugated package does not invert");
    }
  }
  return inst;
}

AagInstance run_protocol(const Collector& c, const ProtocolParameters& params,
                         std::uint64_t seed) {
  Rng rng(seed);
  AagInstance inst = run_protocol(c, params, rng);
  inst.seed = seed;
  return inst;
}

std::string serialize_instance(const AagInstance& inst, const std::string& presentation_ref) {
  json doc;
  doc["presentation"] = presentation_ref;
  doc["seed"] = inst.seed;
  doc["params"] = {{"n1", inst.params.n1},
                   {"n2", inst.params.n2},
                   {"lmin", inst.params.lmin},
                   {"lmax", inst.params.lmax},
                   {"key_factors", inst.params.key_factors}};
  doc["alice_public"] = elements_to_json(inst.alice_public.elements);
  doc["bob_public"] = elements_to_json(inst.bob_public.elements);
  doc["bob_conjugated"] = elements_to_json(inst.bob_conjugated);
  doc["alice_conjugated"] = elements_to_json(inst.alice_conjugated);
  doc["ground_truth"] = {{"alice_key", key_to_json(inst.ground_truth.alice_key)},
                         {"bob_key", key_to_json(inst.ground_truth.bob_key)},
                         {"shared", element_to_json(inst.ground_truth.shared)}};
  return doc.dump(1);
}

AagInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("instance: ") + e.what());
  }
  try {
    AagInstance inst;
    inst.seed = doc.at("seed").get<std::uint64_t>();
    const auto& p = doc.at("params");
    inst.params.n1 = p.at("n1").get<std::size_t>();
    inst.params.n2 = p.at("n2").get<std::size_t>();
    inst.params.lmin = p.at("lmin").get<std::int64_t>();
    inst.params.lmax = p.at("lmax").get<std::int64_t>();
    inst.params.key_factors = p.at("key_factors").get<std::size_t>();
    inst.alice_public.elements = elements_from_json(doc.at("alice_public"));
    inst.bob_public.elements = elements_from_json(doc.at("bob_public"));
    inst.bob_conjugated = elements_from_json(doc.at("bob_conjugated"));
    inst.alice_conjugated = elements_from_json(doc.at("alice_conjugated"));
    const auto& gt = doc.at("ground_truth");
    inst.ground_truth.alice_key = key_from_json(gt.at("alice_key"));
    inst.ground_truth.bob_key = key_from_json(gt.at("bob_key"));
    inst.ground_truth.shared = element_from_json(gt.at("shared"));
    return inst;
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("instance: ") + e.what());
  }
}

}  // namespace pcaag
