#include "pcaag/collector.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

constexpr std::int64_t kImageCacheLimit = 1 << 14;

inline std::size_t mix(std::size_t h, std::size_t v) noexcept {
  // splitmix-style finalizer over the running value
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

std::size_t first_nonzero(const std::vector<Integer>& x, std::size_t from) {
  for (std::size_t j = from; j < x.size(); ++j) {
    if (!x[j].is_zero()) return j;
  }
  return x.size();
}

}  // namespace

bool GroupElement::is_identity() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](const Integer& e) { return e.is_zero(); });
}

std::size_t GroupElement::hash() const noexcept {
  std::size_t h = exps_.size();
  for (const auto& e : exps_) h = mix(h, e.hash());
  return h;
}

Integer length(const GroupElement& a) {
  Integer total;
  for (const auto& e : a.exponents()) {
    if (e.sign() >= 0) {
      total += e;
    } else {
      total -= e;
    }
  }
  return total;
}

Integer tuple_length(std::span<const GroupElement> tuple) {
  Integer total;
  for (const auto& c : tuple) total += length(c);
  return total;
}

std::size_t tuple_hash(std::span<const GroupElement> tuple) noexcept {
  std::size_t h = tuple.size();
  for (const auto& c : tuple) h = mix(h, c.hash());
  return h;
}

struct Collector::Budget {
  std::uint64_t remaining;

  void tick() {
    if (remaining == 0) {
      throw CollectionBudgetExceeded(
          "collection exceeded its step budget; the presentation is probably inconsistent");
    }
    --remaining;
  }
};

struct Collector::Cache {
  std::shared_mutex mutex;
  std::vector<std::unordered_map<std::int64_t, std::shared_ptr<const ImageTable>>> tables;
};

Collector::Collector(std::shared_ptr<const PcPresentation> presentation, CollectorOptions options)
    : presentation_(std::move(presentation)), options_(options), cache_(std::make_unique<Cache>()) {
  build();
}

Collector::Collector(PcPresentation presentation, CollectorOptions options)
    : Collector(std::make_shared<const PcPresentation>(std::move(presentation)), options) {}

Collector::~Collector() = default;

void Collector::build() {
  const auto& p = *presentation_;
  n_ = p.size();
  orders_ = p.orders();
  action_.assign(n_, Action::kGeneral);
  flips_.assign(n_, std::vector<bool>(n_, false));
  pos_images_.assign(n_, nullptr);
  neg_images_.assign(n_, nullptr);
  power_images_.assign(n_, Exps(n_));
  power_trivial_.assign(n_, true);
  cache_->tables.assign(n_, {});
  abelian_start_ = n_;

  for (std::size_t k = n_; k-- > 0;) {
    Budget budget{options_.step_budget};
    if (orders_[k] != kInfinite) {
      power_images_[k] = collect_exps(p.power(k), budget);
      power_trivial_[k] = first_nonzero(power_images_[k], 0) == n_;
    }

    ImageTable pos(n_);
    for (std::size_t j = k + 1; j < n_; ++j) pos[j] = collect_exps(*p.conjugate(k, j, 1), budget);
    pos_images_[k] = std::make_shared<const ImageTable>(std::move(pos));

    ImageTable neg(n_);
    if (orders_[k] == kInfinite) {
      for (std::size_t j = k + 1; j < n_; ++j) neg[j] = collect_exps(*p.conjugate(k, j, -1), budget);
    } else if (k + 1 < n_) {
      bool supplied = true;
      for (std::size_t j = k + 1; j < n_ && supplied; ++j) supplied = p.conjugate(k, j, -1) != nullptr;
      for (std::size_t j = k + 1; j < n_; ++j) {
        if (supplied) {
          neg[j] = collect_exps(*p.conjugate(k, j, -1), budget);
        } else {
          neg[j] = collect_exps(GeneratorWord{{k, 1}, {j, 1}, {k, -1}}, budget);
        }
      }
    }
    neg_images_[k] = std::make_shared<const ImageTable>(std::move(neg));

    // Classify the action of g_k on the generators above it.
    bool trivial = true;
    bool diagonal = true;
    for (std::size_t j = k + 1; j < n_; ++j) {
      const Exps& img = (*pos_images_[k])[j];
      std::size_t first = first_nonzero(img, 0);
      bool single = first == j && first_nonzero(img, j + 1) == n_;
      bool is_identity = single && img[j] == Integer(1);
      bool is_inverse = single && img[j] == Integer(-1) && orders_[j] == kInfinite;
      if (!is_identity) trivial = false;
      if (!is_identity && !is_inverse) diagonal = false;
      flips_[k][j] = is_inverse;
      if (orders_[k] == kInfinite && (*neg_images_[k])[j] != img) {
        trivial = false;
        diagonal = false;
      }
    }
    action_[k] = trivial ? Action::kTrivial : diagonal ? Action::kDiagonal : Action::kGeneral;
    if (orders_[k] == kInfinite && action_[k] == Action::kTrivial && abelian_start_ == k + 1) {
      abelian_start_ = k;
    }
  }
}

GroupElement Collector::generator(std::size_t k, const Integer& e) const {
  GeneratorWord w;
  w.push_back(k, e);
  return collect(w);
}

GroupElement Collector::collect(const GeneratorWord& w) const {
  Budget budget{options_.step_budget};
  return GroupElement(collect_exps(w, budget));
}

Collector::Exps Collector::collect_exps(const GeneratorWord& w, Budget& budget) const {
  Exps e(n_);
  for (const auto& letter : w) {
    if (letter.index >= n_) {
      throw IndexViolation("word letter refers to generator " + std::to_string(letter.index + 1) +
                           " of a presentation with " + std::to_string(n_) + " generators");
    }
    mul_letter(e, letter.index, letter.exponent, budget);
  }
  return e;
}

GroupElement Collector::multiply(const GroupElement& a, const GroupElement& b) const {
  Budget budget{options_.step_budget};
  Exps e = a.exponents();
  mul_into(e, b.exponents(), budget);
  return GroupElement(std::move(e));
}

GroupElement Collector::invert(const GroupElement& a) const {
  Budget budget{options_.step_budget};
  return GroupElement(invert_of(a.exponents(), budget));
}

GroupElement Collector::conjugate(const GroupElement& g, const GroupElement& a) const {
  Budget budget{options_.step_budget};
  Exps e = invert_of(a.exponents(), budget);
  mul_into(e, g.exponents(), budget);
  mul_into(e, a.exponents(), budget);
  return GroupElement(std::move(e));
}

GroupElement Collector::conjugate(const GroupElement& g, const GroupElement& a,
                                  const GroupElement& a_inverse) const {
  Budget budget{options_.step_budget};
  Exps e = a_inverse.exponents();
  mul_into(e, g.exponents(), budget);
  mul_into(e, a.exponents(), budget);
  return GroupElement(std::move(e));
}

GroupElement Collector::power(const GroupElement& a, const Integer& k) const {
  Budget budget{options_.step_budget};
  return GroupElement(power_of(a.exponents(), k, budget));
}

bool Collector::is_normal_form(const GroupElement& a) const {
  if (a.size() != n_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (orders_[i] != kInfinite && (a[i].sign() < 0 || a[i] >= Integer(orders_[i]))) return false;
  }
  return true;
}

GroupElement Collector::power_image(std::size_t k) const {
  if (orders_.at(k) == kInfinite) throw IndexViolation("power_image of an infinite generator");
  return GroupElement(power_images_[k]);
}

GroupElement Collector::conjugate_image(std::size_t i, std::size_t j, int sign) const {
  if (i >= j || j >= n_) throw IndexViolation("conjugate_image needs i < j < n");
  return GroupElement((sign > 0 ? *pos_images_[i] : *neg_images_[i])[j]);
}

// e <- e * g_k^c
void Collector::mul_letter(Exps& e, std::size_t k, const Integer& c, Budget& budget) const {
  if (c.is_zero()) return;
  budget.tick();
  if (k >= abelian_start_) {
    e[k] += c;
    return;
  }
  const bool has_tail = first_nonzero(e, k + 1) < n_;

  if (orders_[k] == kInfinite) {
    if (has_tail) conjugate_tail(e, k, c, budget);
    e[k] += c;
    return;
  }

  // g_k^c = g_k^{c1} (g_k^r)^{q1} with 0 <= c1 < r.
  const std::int64_t r = orders_[k];
  auto [q1, c1] = floor_divmod(c, r);
  if (c1 != 0 && has_tail) conjugate_tail(e, k, Integer(c1), budget);
  auto [q2, rem] = floor_divmod(e[k] + Integer(c1), r);
  e[k] = rem;
  if (power_trivial_[k] || (q2.is_zero() && q1.is_zero())) return;

  // Remaining right factor: U^q2 * tail * U^q1 with U = g_k^r.
  Exps tail(n_);
  bool tail_nonzero = false;
  for (std::size_t j = k + 1; j < n_; ++j) {
    if (!e[j].is_zero()) {
      tail[j] = std::exchange(e[j], Integer{});
      tail_nonzero = true;
    }
  }
  if (q2 == Integer(1)) {
    mul_into(e, power_images_[k], budget);
  } else if (!q2.is_zero()) {
    mul_into(e, power_of(power_images_[k], q2, budget), budget);
  }
  if (tail_nonzero) mul_into(e, tail, budget);
  if (!q1.is_zero()) mul_into(e, power_of(power_images_[k], q1, budget), budget);
}

// e <- e * b
void Collector::mul_into(Exps& e, const Exps& b, Budget& budget) const {
  for (std::size_t k = first_nonzero(b, 0); k < n_; ++k) {
    if (b[k].is_zero()) continue;
    if (k >= abelian_start_) {
      for (std::size_t j = k; j < n_; ++j) e[j] += b[j];
      budget.tick();
      return;
    }
    mul_letter(e, k, b[k], budget);
  }
}

Collector::Exps Collector::power_of(const Exps& x, Integer m, Budget& budget) const {
  const std::size_t first = first_nonzero(x, 0);
  if (m.is_zero() || first == n_) return Exps(n_);
  if (first >= abelian_start_) {
    Exps out(n_);
    for (std::size_t j = first; j < n_; ++j) {
      if (!x[j].is_zero()) out[j] = x[j] * m;
    }
    return out;
  }
  Exps base = m.sign() < 0 ? invert_of(x, budget) : x;
  if (m.sign() < 0) m = -m;
  Exps result;
  bool result_is_identity = true;
  for (;;) {
    auto [q, bit] = floor_divmod(m, 2);
    if (bit) {
      if (result_is_identity) {
        result = base;
        result_is_identity = false;
      } else {
        mul_into(result, base, budget);
      }
    }
    m = std::move(q);
    if (m.is_zero()) break;
    Exps square = base;
    mul_into(square, base, budget);
    base = std::move(square);
  }
  return result;
}

Collector::Exps Collector::invert_of(const Exps& x, Budget& budget) const {
  Exps r(n_);
  for (std::size_t k = n_; k-- > 0;) {
    if (x[k].is_zero()) continue;
    if (k >= abelian_start_) {
      r[k] = -x[k];
      continue;
    }
    mul_letter(r, k, -x[k], budget);
  }
  return r;
}

// Replaces the part of e above k by its conjugate under g_k^c.
void Collector::conjugate_tail(Exps& e, std::size_t k, const Integer& c, Budget& budget) const {
  switch (action_[k]) {
    case Action::kTrivial:
      return;
    case Action::kDiagonal:
      if (c.is_odd()) {
        const auto& flips = flips_[k];
        for (std::size_t j = k + 1; j < n_; ++j) {
          if (flips[j] && !e[j].is_zero()) e[j] = -e[j];
        }
      }
      return;
    case Action::kGeneral:
      break;
  }
  Exps tail(n_);
  for (std::size_t j = k + 1; j < n_; ++j) tail[j] = std::exchange(e[j], Integer{});
  auto table = images(k, c, budget);
  Exps conj = apply(*table, tail, k + 1, budget);
  for (std::size_t j = k + 1; j < n_; ++j) e[j] = std::move(conj[j]);
}

// Evaluates x (supported on indices >= from) under the homomorphism g_j -> table[j].
Collector::Exps Collector::apply(const ImageTable& table, const Exps& x, std::size_t from,
                                 Budget& budget) const {
  Exps result(n_);
  for (std::size_t j = from; j < n_; ++j) {
    if (x[j].is_zero()) continue;
    if (x[j] == Integer(1)) {
      mul_into(result, table[j], budget);
    } else {
      mul_into(result, power_of(table[j], x[j], budget), budget);
    }
  }
  return result;
}

Collector::ImageTable Collector::compose(const ImageTable& outer, const ImageTable& inner,
                                         std::size_t k, Budget& budget) const {
  ImageTable out(n_);
  for (std::size_t j = k + 1; j < n_; ++j) out[j] = apply(outer, inner[j], k + 1, budget);
  return out;
}

std::shared_ptr<const Collector::ImageTable> Collector::images(std::size_t k, const Integer& c,
                                                               Budget& budget) const {
  if (c == Integer(1)) return pos_images_[k];
  if (c == Integer(-1) && neg_images_[k]) return neg_images_[k];
  auto key = c.to_int64();
  if (!key || *key > kImageCacheLimit || *key < -kImageCacheLimit) {
    return std::make_shared<const ImageTable>(images_uncached(k, c, budget));
  }
  {
    std::shared_lock lock(cache_->mutex);
    const auto& tables = cache_->tables[k];
    if (auto it = tables.find(*key); it != tables.end()) return it->second;
  }
  auto table = std::make_shared<const ImageTable>(images_uncached(k, c, budget));
  std::unique_lock lock(cache_->mutex);
  auto [it, inserted] = cache_->tables[k].emplace(*key, std::move(table));
  return it->second;
}

// Image table of conjugation by g_k^c via binary splitting c = 2h + rest.
Collector::ImageTable Collector::images_uncached(std::size_t k, const Integer& c,
                                                 Budget& budget) const {
  if (c == Integer(1)) return *pos_images_[k];
  if (c == Integer(-1) && neg_images_[k]) return *neg_images_[k];
  if (c.is_zero()) {
    ImageTable id(n_);
    for (std::size_t j = k + 1; j < n_; ++j) {
      id[j] = Exps(n_);
      id[j][j] = 1;
    }
    return id;
  }
  Integer half = c / Integer(2);
  Integer rest = c - half * Integer(2);
  auto h = images(k, half, budget);
  ImageTable table = compose(*h, *h, k, budget);
  if (!rest.is_zero()) table = compose(*images(k, rest, budget), table, k, budget);
  return table;
}

}  // namespace pcaag
