// pcaag: command line front end for group construction and attack batches.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "pcaag/consistency.hpp"
#include "pcaag/errors.hpp"
#include "pcaag/harness.hpp"
#include "pcaag/numberfield.hpp"
#include "pcaag/polynomial.hpp"

using namespace pcaag;

namespace {

int build_group(const std::string& poly, const std::string& out) {
  IntPolynomial f = parse_polynomial(poly);
  PcPresentation p = build_semidirect_presentation(f);
  require_consistent(Collector(p));
  if (out.empty()) {
    std::cout << serialize_presentation(p) << '\n';
  } else {
    save_presentation(p, out);
    std::cerr << "wrote " << out << " (" << p.size() << " generators, Hirsch length "
              << hirsch_length(p) << ")\n";
  }
  return 0;
}

int check_group(const std::string& in) {
  PcPresentation p = load_presentation(in);
  ConsistencyReport report = check_consistency(p);
  std::cout << "generators: " << p.size() << '\n'
            << "hirsch_length: " << hirsch_length(p) << '\n'
            << "overlaps_checked: " << report.overlaps_checked << '\n'
            << "consistency: " << report.describe() << '\n';
  return report.pass ? 0 : 1;
}

int hirsch(const std::string& poly) {
  IntPolynomial f = parse_polynomial(poly);
  Signature sig = signature(f);
  std::cout << "polynomial: " << f.to_string() << '\n'
            << "signature: n=" << sig.n << " s=" << sig.s << " t=" << sig.t << '\n'
            << "unit_rank: " << sig.s + sig.t - 1 << '\n'
            << "hirsch_length: " << predicted_hirsch(f) << '\n';
  return 0;
}

int attack(const ExperimentConfig& cfg, const std::string& csv, const std::string& jsonl,
           bool quiet) {
  validate(cfg);
  Collector c(resolve_group(cfg.group_source));
  BatchReport report = run_batch(cfg, c, [&](const TrialRecord& r) {
    if (quiet) return;
    std::fprintf(stderr, "trial %zu: %s %.3fs conjugations=%llu%s%s\n", r.trial,
                 r.outcome ? to_string(*r.outcome) : "ERROR", r.stats.wall_seconds,
                 static_cast<unsigned long long>(r.stats.conjugations), r.error.empty() ? "" : " ",
                 r.error.c_str());
  });
  if (!csv.empty()) emit_csv(report, csv);
  if (!jsonl.empty()) emit_jsonl(report, jsonl);
  std::printf("variant: %s\ntrials: %zu\nsuccesses: %zu\nsuccess_rate: %.4f\ntotal_seconds: %.3f\n",
              to_string(cfg.variant), report.trials.size(), report.successes(), report.success_rate(),
              report.total_seconds);
  return 0;
}

int length_growth(const std::string& group, std::int64_t lmin, std::int64_t lmax, std::size_t trials,
                  std::uint64_t seed) {
  Collector c(resolve_group(group));
  Rng rng(seed);
  LengthGrowthStats s = length_growth_experiment(c, lmin, lmax, trials, rng);
  std::printf("trials: %zu\nmean: %.4f\nmin: %.0f\nmax: %.0f\nmean_conjugator_length: %.4f\n", s.trials,
              s.mean, s.min, s.max, s.mean_conjugator_length);
  return 0;
}

int instance(const std::string& group, const ProtocolParameters& params, std::uint64_t seed,
             const std::string& out) {
  Collector c(resolve_group(group));
  AagInstance inst = run_protocol(c, params, seed);
  std::string doc = serialize_instance(inst, group);
  if (out.empty()) {
    std::cout << doc << '\n';
    return 0;
  }
  std::ofstream file(out);
  if (!(file << doc << '\n')) throw IoError("cannot write " + out);
  return 0;
}

void protocol_options(CLI::App* cmd, ProtocolParameters& p) {
  cmd->add_option("--n1", p.n1, "Alice's public set size")->capture_default_str();
  cmd->add_option("--n2", p.n2, "Bob's public set size")->capture_default_str();
  cmd->add_option("--lmin", p.lmin, "Minimum public element length")->capture_default_str();
  cmd->add_option("--lmax", p.lmax, "Maximum public element length")->capture_default_str();
  cmd->add_option("--key-factors", p.key_factors, "Factors per private key")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polycyclic AAG key exchange and length-based attacks"};
  app.set_version_flag("--version", engine_version());
  app.require_subcommand(1);

  std::string poly, out, in;
  auto* build = app.add_subcommand("build-group", "Build Z^n x| U_F for a polynomial of degree <= 2");
  build->add_option("--poly", poly, "Monic integer polynomial, e.g. \"x^2-x-1\"")->required();
  build->add_option("--out", out, "Output presentation file (stdout when omitted)");

  auto* check = app.add_subcommand("check-group", "Consistency check and Hirsch length");
  check->add_option("--in", in, "Presentation file")->required()->check(CLI::ExistingFile);

  auto* hirsch_cmd = app.add_subcommand("hirsch", "Predicted Hirsch length for any degree");
  hirsch_cmd->add_option("--poly", poly, "Squarefree integer polynomial")->required();

  ExperimentConfig cfg;
  std::string csv, jsonl, variant = "dynamic";
  bool no_dedup = false, quiet = false;
  auto* atk = app.add_subcommand("attack", "Run a batch of protocol instances against one attack");
  atk->add_option("--group", cfg.group_source, "Presentation file or polynomial")->required();
  atk->add_option("--variant", variant, "backtrack, dynamic, memory or star")
      ->check(CLI::IsMember({"backtrack", "dynamic", "memory", "star"}))
      ->capture_default_str();
  protocol_options(atk, cfg.protocol);
  atk->add_option("--timeout", cfg.timeout_seconds, "Per-trial deadline in seconds")->capture_default_str();
  atk->add_option("--memory", cfg.memory, "Memory size M (memory and star)")->capture_default_str();
  atk->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  atk->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  atk->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  atk->add_flag("--no-dedup", no_dedup, "Disable duplicate suppression in memory and star");
  atk->add_flag("--literal-alg2", cfg.literal_alg2, "Dynamic set: test success only for the last move");
  atk->add_option("--out", csv, "CSV report path");
  atk->add_option("--json", jsonl, "JSON lines report path");
  atk->add_flag("--quiet", quiet, "No per-trial progress on stderr");

  std::string group;
  std::int64_t lmin = 10, lmax = 13;
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  auto* growth = app.add_subcommand("length-growth", "Mean of |b^a| - |b| over random a, b");
  growth->add_option("--group", group, "Presentation file or polynomial")->required();
  growth->add_option("--lmin", lmin)->capture_default_str();
  growth->add_option("--lmax", lmax)->capture_default_str();
  growth->add_option("--trials", trials)->capture_default_str();
  growth->add_option("--seed", seed)->capture_default_str();

  ProtocolParameters params;
  std::uint64_t inst_seed = 0;
  auto* inst = app.add_subcommand("instance", "Generate one protocol instance as JSON");
  inst->add_option("--group", group, "Presentation file or polynomial")->required();
  protocol_options(inst, params);
  inst->add_option("--seed", inst_seed, "Instance seed")->capture_default_str();
  inst->add_option("--out", out, "Output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return build_group(poly, out);
    if (*check) return check_group(in);
    if (*hirsch_cmd) return hirsch(poly);
    if (*atk) {
      cfg.variant = parse_variant(variant);
      cfg.dedup = !no_dedup;
      return attack(cfg, csv, jsonl, quiet);
    }
    if (*growth) return length_growth(group, lmin, lmax, trials, seed);
    if (*inst) return instance(group, params, inst_seed, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
