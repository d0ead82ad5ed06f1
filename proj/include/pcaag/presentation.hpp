#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcaag/word.hpp"

namespace pcaag {

/// Relative order sentinel for an infinite cyclic factor (also the file encoding).
inline constexpr std::int64_t kInfinite = 0;

/// A polycyclic presentation on generators g_0..g_{n-1}:
///
///   g_j^{g_i} = w_ij,  g_j^{g_i^-1} = v_ij  (i < j),   g_k^{r_k} = u_kk  (r_k finite)
///
/// with every relation word supported on generators of larger index than the
/// subject. The constructor enforces the structural invariants only; use
/// check_consistency() before doing arithmetic. Immutable after construction.
class PcPresentation {
 public:
  struct Conjugate {
    std::size_t i = 0;
    std::size_t j = 0;
    int sign = 1;
    GeneratorWord word;
  };
  struct Power {
    std::size_t k = 0;
    GeneratorWord word;
  };

  /// Throws MalformedDocument, IndexViolation or MissingRelation.
  PcPresentation(std::vector<std::int64_t> orders, std::vector<Conjugate> conjugates,
                 std::vector<Power> powers, std::string source_polynomial = {});

  std::size_t size() const noexcept { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  std::int64_t order(std::size_t i) const { return orders_.at(i); }
  bool is_finite(std::size_t i) const { return orders_.at(i) != kInfinite; }

  /// The stored word for g_j^{g_i^sign}, or nullptr when the entry was omitted
  /// (only possible for sign = -1 with r_i finite).
  const GeneratorWord* conjugate(std::size_t i, std::size_t j, int sign) const;
  /// The power word u_kk; k must be a finite position.
  const GeneratorWord& power(std::size_t k) const;

  const std::string& source_polynomial() const noexcept { return source_; }

  /// Entries in canonical order (i, j, +1 before -1), as stored.
  std::vector<Conjugate> conjugates() const;
  std::vector<Power> powers() const;

  friend bool operator==(const PcPresentation& a, const PcPresentation& b);

 private:
  std::size_t slot(std::size_t i, std::size_t j) const { return i * orders_.size() + j; }

  std::vector<std::int64_t> orders_;
  std::vector<std::optional<GeneratorWord>> conj_pos_;
  std::vector<std::optional<GeneratorWord>> conj_neg_;
  std::vector<std::optional<GeneratorWord>> pow_;
  std::string source_;
};

/// Number of infinite relative orders.
std::size_t hirsch_length(const PcPresentation& p);

/// Parses the JSON presentation document (1-based indices in the file).
PcPresentation parse_presentation(std::string_view text);
std::string serialize_presentation(const PcPresentation& p);

PcPresentation load_presentation(const std::filesystem::path& path);
void save_presentation(const PcPresentation& p, const std::filesystem::path& path);

}  // namespace pcaag
