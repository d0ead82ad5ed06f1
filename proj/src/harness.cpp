#include "pcaag/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json_util.hpp"
#include "pcaag/consistency.hpp"
#include "pcaag/errors.hpp"
#include "pcaag/numberfield.hpp"
#include "pcaag/polynomial.hpp"

#ifndef PCAAG_VERSION
#define PCAAG_VERSION "0.0.0"
#endif

namespace pcaag {

namespace {

using detail::json;

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const char* outcome_name(const TrialRecord& r) {
  return r.outcome ? to_string(*r.outcome) : "ERROR";
}

json config_json(const ExperimentConfig& cfg) {
  return {{"group", cfg.group_source},
          {"n1", cfg.protocol.n1},
          {"n2", cfg.protocol.n2},
          {"lmin", cfg.protocol.lmin},
          {"lmax", cfg.protocol.lmax},
          {"key_factors", cfg.protocol.key_factors},
          {"variant", to_string(cfg.variant)},
          {"memory", cfg.memory},
          {"timeout_seconds", cfg.timeout_seconds},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"workers", cfg.workers},
          {"dedup", cfg.dedup},
          {"literal_alg2", cfg.literal_alg2}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace

const char* engine_version() { return PCAAG_VERSION; }

void validate(const ExperimentConfig& cfg) {
  validate(cfg.protocol);
  if (cfg.trials == 0) throw InvalidParameter("trials must be >= 1");
  if (!(cfg.timeout_seconds > 0)) throw InvalidParameter("timeout must be positive");
  if ((cfg.variant == Variant::kMemory || cfg.variant == Variant::kStar) && cfg.memory == 0) {
    throw InvalidParameter("memory must be >= 1");
  }
  if (cfg.workers == 0) throw InvalidParameter("workers must be >= 1");
}

std::shared_ptr<const PcPresentation> resolve_group(const std::string& source) {
  std::error_code ec;
  std::shared_ptr<const PcPresentation> p;
  if (std::filesystem::is_regular_file(source, ec)) {
    p = std::make_shared<const PcPresentation>(load_presentation(source));
  } else {
    p = std::make_shared<const PcPresentation>(build_semidirect_presentation(parse_polynomial(source)));
  }
  ConsistencyReport report = check_consistency(*p);
  if (!report.pass) throw InconsistentPresentation(report.describe());
  return p;
}

std::size_t BatchReport::successes() const {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const TrialRecord& r) {
    return r.outcome == Outcome::kSuccess;
  }));
}

double BatchReport::success_rate() const {
  return trials.empty() ? 0.0 : static_cast<double>(successes()) / static_cast<double>(trials.size());
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t trial) {
  return derive_seed(cfg.seed, trial);
}

TrialRecord run_trial(const ExperimentConfig& cfg, const Collector& c, std::size_t trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = trial_seed(cfg, trial);
  try {
    AagInstance inst = run_protocol(c, cfg.protocol, rec.seed);
    EavesdropperView view = inst.view(c);
    AttackOptions options = AttackOptions::with_timeout(cfg.timeout_seconds);
    options.memory = cfg.memory;
    options.dedup = cfg.dedup;
    options.literal_alg2 = cfg.literal_alg2;
#ifndef NDEBUG
    options.check_trace_every = 1000;
#endif
    AttackResult result = run_attack(cfg.variant, view, options);
    rec.outcome = result.outcome;
    rec.stats = result.stats;
    if (result.recovered) {
      rec.recovered = result.recovered->word;
      rec.verified = verify_candidate(view, result.recovered->element);
    }
  } catch (const std::exception& e) {
    rec.outcome.reset();
    rec.error = e.what();
  }
  return rec;
}

BatchReport run_batch(const ExperimentConfig& cfg, const Collector& c,
                      const std::function<void(const TrialRecord&)>& progress) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  BatchReport report;
  report.config = cfg;
  report.version = engine_version();

  std::vector<TrialRecord> sink;
  std::mutex sink_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) {
      TrialRecord rec = run_trial(cfg, c, t);
      std::lock_guard lock(sink_mutex);
      if (progress) progress(rec);
      sink.push_back(std::move(rec));
    }
  };
  const std::size_t n = std::min(cfg.workers, cfg.trials);
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  std::sort(sink.begin(), sink.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.trial < b.trial; });
  report.trials = std::move(sink);
  report.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

LengthGrowthStats length_growth_experiment(const Collector& c, std::int64_t lmin, std::int64_t lmax,
                                           std::size_t trials, Rng& rng) {
  if (trials == 0) throw InvalidParameter("trials must be >= 1");
  LengthGrowthStats s;
  s.trials = trials;
  double sum = 0, sum_a = 0;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    GroupElement b = random_element(c, lmin, lmax, rng);
    GroupElement a = random_element(c, lmin, lmax, rng);
    double diff = (length(c.conjugate(b, a)) - length(b)).to_double();
    s.samples.push_back(diff);
    sum += diff;
    sum_a += length(a).to_double();
    s.min = std::min(s.min, diff);
    s.max = std::max(s.max, diff);
  }
  s.mean = sum / static_cast<double>(trials);
  s.mean_conjugator_length = sum_a / static_cast<double>(trials);
  return s;
}

std::string format_csv(const BatchReport& report) {
  std::ostringstream os;
  os << "trial,seed,outcome,wall_seconds,conjugations,nodes_expanded,peak_set_size,"
        "recovered_word_length\n";
  for (const auto& r : report.trials) {
    os << r.trial << ',' << r.seed << ',' << outcome_name(r) << ',' << fixed(r.stats.wall_seconds)
       << ',' << r.stats.conjugations << ',' << r.stats.nodes_expanded << ','
       << r.stats.peak_set_size << ',';
    if (r.recovered) os << r.recovered->size();
    os << '\n';
  }
  return os.str();
}

void emit_csv(const BatchReport& report, const std::filesystem::path& path) {
  write_file(path, format_csv(report));
}

std::string format_jsonl(const BatchReport& report) {
  std::ostringstream os;
  json head = {{"type", "config"}, {"engine_version", report.version}, {"config", config_json(report.config)}};
  os << head.dump() << '\n';
  for (const auto& r : report.trials) {
    json line = {{"type", "trial"},
                 {"trial", r.trial},
                 {"seed", r.seed},
                 {"outcome", outcome_name(r)},
                 {"wall_seconds", r.stats.wall_seconds},
                 {"conjugations", r.stats.conjugations},
                 {"nodes_expanded", r.stats.nodes_expanded},
                 {"peak_set_size", r.stats.peak_set_size},
                 {"verified", r.verified}};
    if (r.recovered) {
      json word = json::array();
      for (const auto& l : *r.recovered) {
        word.push_back(json::array({l.index + 1, detail::integer_to_json(l.exponent)}));
      }
      line["recovered_word"] = word;
    }
    if (!r.error.empty()) line["error"] = r.error;
    os << line.dump() << '\n';
  }
  json summary = {{"type", "summary"},
                  {"trials", report.trials.size()},
                  {"successes", report.successes()},
                  {"success_rate", report.success_rate()},
                  {"total_seconds", report.total_seconds}};
  os << summary.dump() << '\n';
  return os.str();
}

void emit_jsonl(const BatchReport& report, const std::filesystem::path& path) {
  write_file(path, format_jsonl(report));
}

}  // namespace pcaag
