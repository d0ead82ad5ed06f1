#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcaag/aag.hpp"
#include "pcaag/attacks.hpp"
#include "pcaag/collector.hpp"

namespace pcaag {

/// Library version recorded in every report.
const char* engine_version();

struct ExperimentConfig {
  /// Polynomial (degree <= 2) or presentation file path, echoed in reports.
  std::string group_source;
  ProtocolParameters protocol;
  Variant variant = Variant::kDynamic;
  std::size_t memory = 500;
  double timeout_seconds = 60.0;
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  bool dedup = true;
  bool literal_alg2 = false;
};

/// Throws InvalidParameter.
void validate(const ExperimentConfig& cfg);

/// Loads a presentation file when `source` names an existing file, otherwise
/// parses it as a polynomial and builds the group natively. The result has
/// passed the consistency check (InconsistentPresentation otherwise).
std::shared_ptr<const PcPresentation> resolve_group(const std::string& source);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  /// Empty when the trial raised; see `error`.
  std::optional<Outcome> outcome;
  AttackStats stats;
  std::optional<GeneratorWord> recovered;
  /// verify_candidate re-run by the harness on every SUCCESS.
  bool verified = false;
  std::string error;
};

struct BatchReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  double total_seconds = 0.0;
  std::string version;

  std::size_t successes() const;
  /// successes / trials
  double success_rate() const;
};

/// Per-trial seed: derive_seed(cfg.seed, trial index).
std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t trial);

/// Runs one trial: instance from trial_seed, then the configured attack with
/// a deadline starting after instance generation. Never throws for
/// trial-level failures; they land in TrialRecord::error.
TrialRecord run_trial(const ExperimentConfig& cfg, const Collector& c, std::size_t trial);

/// `trials` independent trials on a pool of cfg.workers threads. `progress`
/// (optional) is called under a lock after each completed trial.
BatchReport run_batch(const ExperimentConfig& cfg, const Collector& c,
                      const std::function<void(const TrialRecord&)>& progress = {});

struct LengthGrowthStats {
  std::size_t trials = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Mean |a| over the conjugators drawn.
  double mean_conjugator_length = 0.0;
  std::vector<double> samples;
};

/// |b^a| - |b| for independent a, b with lengths in [lmin, lmax].
LengthGrowthStats length_growth_experiment(const Collector& c, std::int64_t lmin, std::int64_t lmax,
                                           std::size_t trials, Rng& rng);

/// Columns: trial, seed, outcome, wall_seconds, conjugations, nodes_expanded,
/// peak_set_size, recovered_word_length. Throws IoError.
void emit_csv(const BatchReport& report, const std::filesystem::path& path);
std::string format_csv(const BatchReport& report);

/// JSON lines: one "config" line, one line per trial, one "summary" line.
void emit_jsonl(const BatchReport& report, const std::filesystem::path& path);
std::string format_jsonl(const BatchReport& report);

}  // namespace pcaag
