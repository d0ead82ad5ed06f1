#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pcaag/integer.hpp"
#include "pcaag/presentation.hpp"
#include "pcaag/word.hpp"

namespace pcaag {

/// An element in normal form g_0^{e_0} ... g_{n-1}^{e_{n-1}}, stored as its
/// exponent vector. Finite positions satisfy 0 <= e_i < r_i when produced by
/// a Collector.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::size_t n) : exps_(n) {}
  explicit GroupElement(std::vector<Integer> exps) : exps_(std::move(exps)) {}

  std::size_t size() const noexcept { return exps_.size(); }
  const Integer& operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Integer>& exponents() const noexcept { return exps_; }
  bool is_identity() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<Integer> exps_;
};

/// Sum of absolute values of the normal-form exponents.
Integer length(const GroupElement& a);
/// Sum of lengths over a tuple.
Integer tuple_length(std::span<const GroupElement> tuple);
std::size_t tuple_hash(std::span<const GroupElement> tuple) noexcept;

struct CollectorOptions {
  /// Primitive rewriting steps allowed per public call.
  std::uint64_t step_budget = 10'000'000;
};

/// Collection engine for a polycyclic presentation.
///
/// Strategy: collection from the left on exponent vectors. Multiplying a
/// normal form by g_k^c pulls g_k^c across the tail above k by applying the
/// automorphism "conjugate by g_k^c" to that tail. The automorphism's image
/// table is obtained by repeated squaring of the image table of g_k (cached
/// per exponent), so whole powers move in O(log c) compositions. Generators
/// whose action is trivial or sign-flipping take a direct path, and the
/// trailing free-abelian block is handled by plain exponent addition.
///
/// All public operations are const and safe to call concurrently; the image
/// cache is internally synchronized.
class Collector {
 public:
  explicit Collector(std::shared_ptr<const PcPresentation> presentation,
                     CollectorOptions options = {});
  explicit Collector(PcPresentation presentation, CollectorOptions options = {});
  ~Collector();

  Collector(const Collector&) = delete;
  Collector& operator=(const Collector&) = delete;

  const PcPresentation& presentation() const noexcept { return *presentation_; }
  const std::shared_ptr<const PcPresentation>& presentation_ptr() const noexcept {
    return presentation_;
  }
  std::size_t size() const noexcept { return n_; }

  GroupElement identity() const { return GroupElement(n_); }
  /// Normal form of g_k^e.
  GroupElement generator(std::size_t k, const Integer& e = 1) const;

  GroupElement collect(const GeneratorWord& w) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;
  /// a^-1 g a.
  GroupElement conjugate(const GroupElement& g, const GroupElement& a) const;
  /// Same as conjugate() with a precomputed a^-1.
  GroupElement conjugate(const GroupElement& g, const GroupElement& a,
                         const GroupElement& a_inverse) const;
  GroupElement power(const GroupElement& a, const Integer& k) const;

  /// Exponent vector has the right size and finite positions are in range.
  bool is_normal_form(const GroupElement& a) const;

  /// Collected power relation g_k^{r_k} (finite k only).
  GroupElement power_image(std::size_t k) const;
  /// Collected g_j^{g_i^sign} for i < j. For finite i and sign = -1 without a
  /// supplied word this is reconstructed as the collected g_i g_j g_i^-1.
  GroupElement conjugate_image(std::size_t i, std::size_t j, int sign) const;

  /// Start of the trailing block of pairwise commuting infinite generators.
  std::size_t abelian_start() const noexcept { return abelian_start_; }

 private:
  using Exps = std::vector<Integer>;
  using ImageTable = std::vector<Exps>;
  enum class Action { kTrivial, kDiagonal, kGeneral };
  struct Budget;
  struct Cache;

  void build();
  void mul_letter(Exps& e, std::size_t k, const Integer& c, Budget& budget) const;
  void mul_into(Exps& e, const Exps& b, Budget& budget) const;
  Exps power_of(const Exps& x, Integer m, Budget& budget) const;
  Exps invert_of(const Exps& x, Budget& budget) const;
  void conjugate_tail(Exps& tail, std::size_t k, const Integer& c, Budget& budget) const;
  Exps apply(const ImageTable& table, const Exps& x, std::size_t from, Budget& budget) const;
  ImageTable compose(const ImageTable& outer, const ImageTable& inner, std::size_t k,
                     Budget& budget) const;
  std::shared_ptr<const ImageTable> images(std::size_t k, const Integer& c, Budget& budget) const;
  ImageTable images_uncached(std::size_t k, const Integer& c, Budget& budget) const;
  Exps collect_exps(const GeneratorWord& w, Budget& budget) const;

  std::shared_ptr<const PcPresentation> presentation_;
  CollectorOptions options_;
  std::size_t n_ = 0;
  std::vector<std::int64_t> orders_;
  std::vector<Action> action_;
  std::vector<std::vector<bool>> flips_;  // diagonal action: g_j -> g_j^-1
  std::vector<std::shared_ptr<const ImageTable>> pos_images_;
  std::vector<std::shared_ptr<const ImageTable>> neg_images_;
  std::vector<Exps> power_images_;
  std::vector<bool> power_trivial_;
  std::size_t abelian_start_ = 0;
  std::unique_ptr<Cache> cache_;
};

}  // namespace pcaag
