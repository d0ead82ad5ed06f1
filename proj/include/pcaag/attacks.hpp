#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pcaag/aag.hpp"
#include "pcaag/collector.hpp"
#include "pcaag/word.hpp"

namespace pcaag {

enum class Variant { kBacktrack, kDynamic, kMemory, kStar };
enum class Outcome { kSuccess, kFailExhausted, kFailTimeout };

const char* to_string(Variant v);
const char* to_string(Outcome o);
/// "backtrack", "dynamic", "memory" or "star"; throws InvalidParameter.
Variant parse_variant(std::string_view text);

struct AttackOptions {
  using Clock = std::chrono::steady_clock;

  /// Checked before every tuple conjugation.
  Clock::time_point deadline = Clock::time_point::max();
  /// Beam width (memory) or store capacity (star).
  std::size_t memory = 500;
  /// memory/star: never re-insert a tuple already stored (keyed by tuple hash).
  bool dedup = true;
  /// dynamic: test c^w = b only for the last w of the extension set.
  bool literal_alg2 = false;
  /// Recompute b'^x for every k-th expanded node and compare; 0 disables.
  std::uint64_t check_trace_every = 0;

  static AttackOptions with_timeout(double seconds);
};

struct AttackStats {
  /// Tuple conjugations (one per child tuple computed).
  std::uint64_t conjugations = 0;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t peak_set_size = 0;
  double wall_seconds = 0.0;
};

struct RecoveredKey {
  /// Letters are (public-set index, +-1): A' = prod a_index^sign.
  GeneratorWord word;
  GroupElement element;
};

struct AttackResult {
  Outcome outcome = Outcome::kFailExhausted;
  std::optional<RecoveredKey> recovered;
  AttackStats stats;
};

/// True iff b_i^candidate = b'_i for every i.
bool verify_candidate(const EavesdropperView& view, const GroupElement& candidate);

/// Best-first search keeping only children that strictly shorten the tuple.
AttackResult lba_backtracking(const EavesdropperView& view, const AttackOptions& options);

/// As backtracking, with conjugators drawn from the extension set built
/// around the best single move (or all pairs when no move shortens).
AttackResult lba_dynamic_set(const EavesdropperView& view, const AttackOptions& options);

/// Generational beam: all children of the beam, keep the M shortest.
AttackResult lba_memory(const EavesdropperView& view, const AttackOptions& options);

/// Best-first search in a bounded store of M tuples; a full store evicts its
/// longest member for a strictly shorter child.
AttackResult lba_star(const EavesdropperView& view, const AttackOptions& options);

AttackResult run_attack(Variant variant, const EavesdropperView& view, const AttackOptions& options);

}  // namespace pcaag
