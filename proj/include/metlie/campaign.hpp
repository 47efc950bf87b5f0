#pragma once

// Property campaigns: many generated instances pushed through one family of
// checks, with per-instance seeds so any violation can be replayed alone.
//
// Instance i of a campaign with seed s draws everything from
// SplitMix64(s ^ i); instances are numbered consecutively across dimensions,
// lowest dimension first.

#include <metlie/report.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace metlie {

struct CampaignOptions {
  std::string suite;
  /// Instances per dimension.
  int count = 100;
  Index dim_lo = 2;
  Index dim_hi = 6;
  std::uint64_t seed = 0;
  Tolerances<double> tol;
  /// Where counterexample files go; empty disables writing them.
  std::string counterexample_dir = ".";
};

/// What one instance produced.
struct InstanceResult {
  bool skipped = false;
  std::vector<std::string> violations;
  /// Labels counted in the summary (e.g. the Ricci case).
  std::vector<std::string> labels;
  std::map<std::string, double> maxima;
  std::map<std::string, double> minima;
  /// The instance itself, for the counterexample file.
  std::optional<AlgebraFile> algebra;
  std::optional<Rows> matrix;

  void track_max(const std::string& key, double v);
  void track_min(const std::string& key, double v);
  void check(bool ok, const std::string& what);
};

struct CampaignSummary {
  CampaignOptions options;
  long instances = 0;
  long skipped = 0;
  long violations = 0;
  std::map<std::string, long> counts;
  std::map<std::string, double> maxima;
  std::map<std::string, double> minima;
  /// First few violation messages, prefixed with the instance index.
  std::vector<std::string> messages;
  std::vector<std::string> counterexamples;

  bool passed() const { return violations == 0; }
};

std::vector<std::string> known_suites();

/// Runs one instance of a suite.
InstanceResult run_instance(const std::string& suite, Index dim, std::uint64_t instance_seed,
                            const Tolerances<double>& tol = {});

CampaignSummary run_campaign(const CampaignOptions& opts);

nlohmann::ordered_json to_json(const CampaignSummary& s);
std::string render_text(const CampaignSummary& s);

struct Counterexample {
  std::string suite;
  std::uint64_t campaign_seed = 0;
  long index = 0;
  Index dim = 0;
  std::uint64_t instance_seed = 0;
  Tolerances<double> tol;
  std::vector<std::string> violations;
  std::optional<AlgebraFile> algebra;
  std::optional<Rows> matrix;
};

nlohmann::ordered_json to_json(const Counterexample& c);
Counterexample counterexample_from_json(const nlohmann::ordered_json& j);
Counterexample read_counterexample(const std::string& path);

/// Re-runs the recorded instance; the result carries the violations found now.
InstanceResult replay(const Counterexample& c);

/// Metric Lie algebra drawn for suites that sample "any solvable instance":
/// random solvable, random nilpotent, flat or one-negative families, with an
/// identity or random metric. Stream: family, algebra seed, metric choice,
/// metric seed.
struct SampledInstance {
  std::string family;
  LieAlgebra<double> algebra;
  InnerProduct<double> metric;
};
SampledInstance sample_solvable_instance(Index dim, std::uint64_t instance_seed);

}  // namespace metlie
