#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fraclame {

enum class ExperimentKind {
  kSymbols,
  kKorn,
  kCommutator,
  kSolve,
  kWeighted,
  kPerturbative,
  kRegularity,
  kLocalLimit,
  kBench,
};

const char* experiment_name(ExperimentKind kind);

/// Coefficient construction request; `kind` selects among the built-in
/// analytic families or an on-disk pair table.
struct CoefficientSpec {
  /// constant | separable | sinsin | signchange | table
  std::string kind = "constant";
  double kappa = 1.0;
  double amplitude = 0.2;
  std::string table_path;
  double alpha = 0.5;
  double lambda = 0.25;
  double Lambda = 1.0;
};

/// One experiment run, fully determined by a config file plus overrides.
/// The seed fixes every random draw.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kSymbols;
  int dim = 1;
  int N = 256;
  double L = 1.0;
  double support_fraction = 0.5;

  double s = 0.5;
  double t = -1.0;   // < 0: defaults to s
  double s1 = -1.0;  // < 0: defaults to t
  double s2 = -1.0;  // < 0: defaults to 2s - s1
  double epsilon = 0.0;
  double sigma = -1.0;  // < 0: defaults to alpha
  double q = 2.0;
  double c = 0.5;  // lame multiplier parameter where user-supplied

  CoefficientSpec coefficient;

  double tol = 1e-8;
  int max_iter = 2000;
  int outer_max = 25;
  double omega_fraction = 0.4;
  double probe_fraction = 0.25;
  int kmax = 4;
  int trials = 100;
  std::vector<int> frequencies = {4, 8, 16, 32};
  std::vector<int> grids = {64, 128, 256};
  std::vector<double> s_list = {0.6, 0.8, 0.95};

  std::uint64_t seed = 12345;
  int threads = 0;  // 0: library default
  std::string out_dir = "out";

  double effective_t() const { return t < 0.0 ? s : t; }
  double effective_s1() const { return s1 < 0.0 ? effective_t() : s1; }
  double effective_s2() const {
    return s2 < 0.0 ? 2.0 * s - effective_s1() : s2;
  }
};

struct ParseIssue {
  int line = 0;  // 0 when not tied to a specific line
  std::string message;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;  // set iff issues is empty
  std::vector<ParseIssue> issues;
};

/// Parses `key = value` lines; `#` starts a comment; unknown keys,
/// malformed values and violated parameter constraints are reported with
/// line numbers.
ParseResult parse_config_text(const std::string& text);
ParseResult parse_config_file(const std::string& path);

}  // namespace fraclame
