#pragma once

// Analysis reports: everything `analyze` computes for one metric Lie algebra,
// held as plain values so that JSON serialization round-trips exactly.

#include <metlie/io.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace metlie {

inline constexpr const char* kToolVersion = "0.1.0";

using Rows = std::vector<std::vector<double>>;

struct ReportInput {
  /// "file", "catalog" or "random"
  std::string source;
  /// path, catalog name or random family
  std::string value;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> metric_seed;
  AlgebraFile algebra;

  bool operator==(const ReportInput&) const = default;
};

struct ReportStructure {
  bool abelian = false;
  bool nilpotent = false;
  bool solvable = false;
  bool unimodular = false;
  int nilpotency_degree = -1;
  Index derived_dim = 0;

  bool operator==(const ReportStructure&) const = default;
};

struct ReportRicci {
  /// In the orthonormal frame of the input metric (Cholesky frame).
  Rows matrix;
  std::vector<double> eigenvalues;
  Signature signature;
  double scalar_curvature = 0;
  double zero_tol = 0;
  double zero_band = 0;

  bool operator==(const ReportRicci&) const = default;
};

struct ReportGenerator {
  bool skew = false;
  bool normal = false;
  bool traceless = false;

  bool operator==(const ReportGenerator&) const = default;
};

struct ReportCodim1 {
  double r = 0;
  double trace_r2r2 = 0;
  double trace_test = 0;
  Signature r_tilde_signature;
  bool equivalence_holds = false;

  bool operator==(const ReportCodim1&) const = default;
};

struct ReportClassification {
  bool applicable = false;
  std::string reason;
  std::string ricci_case;
  std::string branch;
  bool n_abelian = false;
  bool a_abelian = false;
  Index n_dim = 0;
  Index a_dim = 0;
  Index codim_b = 0;
  Index skew_directions_dim = 0;
  std::vector<ReportGenerator> generators;
  bool consistent = false;
  double mean_curvature = 0;
  /// ||Ric_direct - Ric_blocks|| / max(1, ||Ric_blocks||) in the adapted frame.
  double route_deviation = 0;
  std::optional<ReportCodim1> codim1;

  bool operator==(const ReportClassification&) const = default;
};

struct ReportLemmaGenerator {
  double symmetric_slack = 0;
  bool equality_case_consistent = false;
  bool in_l1 = false;
  bool in_l2 = false;
  bool in_l3 = false;
  double riccider_value = 0;
  bool riccider_consistent = false;

  bool operator==(const ReportLemmaGenerator&) const = default;
};

/// Checks on n = [s, s] with the induced metric, run on each ad(f_j)|n.
struct ReportLemmas {
  bool applicable = false;
  Index der_dim = 0;
  Index inner_dim = 0;
  std::vector<ReportLemmaGenerator> generators;
  bool all_hold = false;

  bool operator==(const ReportLemmas&) const = default;
};

struct AnalysisReport {
  std::string tool_version = kToolVersion;
  ReportInput input;
  Tolerances<double> tolerances;
  ReportStructure structure;
  ReportRicci ricci;
  ReportClassification classification;
  ReportLemmas lemmas;

  bool operator==(const AnalysisReport&) const = default;
};

AnalysisReport analyze(const ReportInput& input, const Tolerances<double>& tol = {});

nlohmann::ordered_json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const Tolerances<double>& t);
Tolerances<double> tolerances_from_json(const nlohmann::ordered_json& j);

/// Human-readable rendering, 6 significant digits.
std::string render_text(const AnalysisReport& r);

}  // namespace metlie
