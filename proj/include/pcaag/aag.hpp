#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcaag/collector.hpp"
#include "pcaag/rng.hpp"
#include "pcaag/word.hpp"

namespace pcaag {

struct PublicSet {
  std::vector<GroupElement> elements;
  std::size_t size() const noexcept { return elements.size(); }
  const GroupElement& operator[](std::size_t i) const { return elements[i]; }
  friend bool operator==(const PublicSet&, const PublicSet&) = default;
};

/// One factor a_index^sign of a private key (0-based index).
struct KeyFactor {
  std::size_t index = 0;
  int sign = 1;
  friend bool operator==(const KeyFactor&, const KeyFactor&) = default;
};

struct PrivateKey {
  std::vector<KeyFactor> factors;
  GroupElement element;
  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

struct ProtocolParameters {
  std::size_t n1 = 20;
  std::size_t n2 = 20;
  std::int64_t lmin = 10;
  std::int64_t lmax = 13;
  /// Factors per private key (both parties).
  std::size_t key_factors = 5;
};

/// Throws InvalidParameter.
void validate(const ProtocolParameters& params);

struct GroundTruth {
  PrivateKey alice_key;
  PrivateKey bob_key;
  GroupElement shared;
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

/// What an eavesdropper sees; the only input the attacks receive.
struct EavesdropperView {
  const Collector* collector = nullptr;
  std::span<const GroupElement> alice_public;
  std::span<const GroupElement> bob_public;
  std::span<const GroupElement> bob_conjugated;
};

struct AagInstance {
  ProtocolParameters params;
  std::uint64_t seed = 0;
  PublicSet alice_public;
  PublicSet bob_public;
  /// b'_i = A^-1 b_i A
  std::vector<GroupElement> bob_conjugated;
  /// a'_i = B^-1 a_i B
  std::vector<GroupElement> alice_conjugated;
  /// For verification and scoring only; never passed to an attack.
  GroundTruth ground_truth;

  EavesdropperView view(const Collector& collector) const;
  friend bool operator==(const AagInstance& a, const AagInstance& b) {
    return a.seed == b.seed && a.alice_public == b.alice_public && a.bob_public == b.bob_public &&
           a.bob_conjugated == b.bob_conjugated && a.alice_conjugated == b.alice_conjugated &&
           a.ground_truth == b.ground_truth;
  }
};

struct SamplingOptions {
  /// Restarts from the identity before GenerationStalled is raised.
  int max_restarts = 64;
  /// Generator draws allowed per restart, as a multiple of lmax.
  int draws_per_length = 64;
};

/// Random element with lmin <= length <= lmax: a target length T is drawn
/// uniformly from [lmin, lmax], then uniformly chosen g_k^{+-1} are multiplied
/// on the right until length >= T. A factor that pushes the length past lmax
/// is discarded and another (generator, sign) pair is drawn.
GroupElement random_element(const Collector& c, std::int64_t lmin, std::int64_t lmax, Rng& rng,
                            const SamplingOptions& options = {});

PublicSet generate_public_set(const Collector& c, std::size_t n, std::int64_t lmin,
                              std::int64_t lmax, Rng& rng);

PrivateKey generate_private_key(const Collector& c, const PublicSet& pub, std::size_t factors,
                                Rng& rng);

/// Left-to-right product of pub[index]^sign.
GroupElement evaluate_factors(const Collector& c, std::span<const GroupElement> pub,
                              std::span<const KeyFactor> factors);

/// Full protocol run. Draw order: Alice's public set, Bob's public set,
/// Alice's key, Bob's key. Both parties' key derivations are executed and
/// cross-checked; a mismatch raises ProtocolSelfCheckFailed.
AagInstance run_protocol(const Collector& c, const ProtocolParameters& params, Rng& rng);

/// Same with a fresh Rng seeded by `seed` (recorded in the instance).
AagInstance run_protocol(const Collector& c, const ProtocolParameters& params, std::uint64_t seed);

/// Alice's view of the key: A^-1 * prod a'_{s_i}^{eps_i}.
GroupElement alice_shared_key(const Collector& c, const AagInstance& inst);
/// Bob's: B^-1 * prod b'_{t_i}^{delta_i}; equals the inverse of Alice's.
GroupElement bob_shared_key(const Collector& c, const AagInstance& inst);

/// JSON document for replay; ground truth sits in its own "ground_truth" block.
std::string serialize_instance(const AagInstance& inst, const std::string& presentation_ref);
AagInstance parse_instance(std::string_view text);

}  // namespace pcaag
