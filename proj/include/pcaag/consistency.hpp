#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcaag/collector.hpp"
#include "pcaag/presentation.hpp"

namespace pcaag {

/// Which overlap of the rewriting system failed to resolve.
enum class OverlapKind {
  kTriple,            // g_k (g_j g_i) = (g_k g_j) g_i,          k > j > i
  kPowerLeft,         // (g_j^{r_j}) g_i = g_j^{r_j-1} (g_j g_i),   j > i, r_j finite
  kPowerRight,        // g_j (g_i^{r_i}) = (g_j g_i) g_i^{r_i-1},   j > i, r_i finite
  kPowerSelf,         // g_j^{r_j} g_j = g_j g_j^{r_j},             r_j finite
  kInverseRight,      // g_j = (g_j g_i^-1) g_i,                    j > i, r_i infinite
  kInverseLeft,       // g_j = (g_j g_i) g_i^-1,                    j > i, r_i infinite
  kSuppliedInverse,   // supplied v_ij agrees with g_i g_j g_i^-1,   r_i finite
};

const char* to_string(OverlapKind kind);

struct OverlapFailure {
  OverlapKind kind;
  std::vector<std::size_t> indices;  // 0-based, as (k, j, i) / (j, i) / (j)
  GroupElement lhs;
  GroupElement rhs;
  std::string message;  // set when collection itself failed
};

struct ConsistencyReport {
  bool pass = true;
  std::optional<OverlapFailure> failure;
  std::size_t overlaps_checked = 0;

  explicit operator bool() const noexcept { return pass; }
  std::string describe() const;
};

/// Deterministic overlap test; PASS iff every pair of collected normal forms agrees.
ConsistencyReport check_consistency(const PcPresentation& p, CollectorOptions options = {});
ConsistencyReport check_consistency(const Collector& collector);

/// Throws InconsistentPresentation unless the presentation passes.
void require_consistent(const Collector& collector);

}  // namespace pcaag
