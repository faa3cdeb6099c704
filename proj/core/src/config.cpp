#include "fraclame/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fraclame/nonlocal.hpp"

namespace fraclame {

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSymbols: return "symbols";
    case ExperimentKind::kKorn: return "korn";
    case ExperimentKind::kCommutator: return "commutator";
    case ExperimentKind::kSolve: return "solve";
    case ExperimentKind::kWeighted: return "weighted";
    case ExperimentKind::kPerturbative: return "perturbative";
    case ExperimentKind::kRegularity: return "regularity";
    case ExperimentKind::kLocalLimit: return "locallimit";
    case ExperimentKind::kBench: return "bench";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& v, double* out) {
  std::istringstream ss(v);
  ss.imbue(std::locale::classic());
  return static_cast<bool>(ss >> *out) && ss.eof();
}

bool parse_int(const std::string& v, long long* out) {
  std::istringstream ss(v);
  return static_cast<bool>(ss >> *out) && ss.eof();
}

bool parse_int_list(const std::string& v, std::vector<int>* out) {
  out->clear();
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long long x;
    if (!parse_int(trim(item), &x)) return false;
    out->push_back(static_cast<int>(x));
  }
  return !out->empty();
}

bool parse_double_list(const std::string& v, std::vector<double>* out) {
  out->clear();
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x;
    if (!parse_double(trim(item), &x)) return false;
    out->push_back(x);
  }
  return !out->empty();
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::optional<ExperimentKind> experiment_from_name(const std::string& name) {
  static const std::map<std::string, ExperimentKind> kMap = {
      {"symbols", ExperimentKind::kSymbols},
      {"korn", ExperimentKind::kKorn},
      {"commutator", ExperimentKind::kCommutator},
      {"solve", ExperimentKind::kSolve},
      {"weighted", ExperimentKind::kWeighted},
      {"perturbative", ExperimentKind::kPerturbative},
      {"regularity", ExperimentKind::kRegularity},
      {"locallimit", ExperimentKind::kLocalLimit},
      {"bench", ExperimentKind::kBench},
  };
  const auto it = kMap.find(name);
  if (it == kMap.end()) return std::nullopt;
  return it->second;
}

}  // namespace

ParseResult parse_config_text(const std::string& text) {
  ParseResult result;
  ExperimentConfig cfg;
  bool have_experiment = false;
  bool have_s = false;

  auto issue = [&](int line, const std::string& message) {
    result.issues.push_back({line, message});
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issue(lineno, "expected `key = value`");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      issue(lineno, "expected `key = value`");
      continue;
    }

    auto want_double = [&](double* slot) {
      if (!parse_double(value, slot))
        issue(lineno, "key `" + key + "`: expected a number, got `" + value + "`");
    };
    auto want_int = [&](int* slot) {
      long long x;
      if (!parse_int(value, &x))
        issue(lineno, "key `" + key + "`: expected an integer, got `" + value + "`");
      else
        *slot = static_cast<int>(x);
    };

    if (key == "experiment") {
      const auto kind = experiment_from_name(value);
      if (!kind) {
        issue(lineno, "unknown experiment `" + value +
                          "` (symbols|korn|commutator|solve|weighted|"
                          "perturbative|regularity|locallimit|bench)");
      } else {
        cfg.experiment = *kind;
        have_experiment = true;
      }
    } else if (key == "n") {
      want_int(&cfg.dim);
    } else if (key == "N") {
      want_int(&cfg.N);
    } else if (key == "L") {
      want_double(&cfg.L);
    } else if (key == "support_fraction") {
      want_double(&cfg.support_fraction);
    } else if (key == "s") {
      want_double(&cfg.s);
      have_s = true;
    } else if (key == "t") {
      want_double(&cfg.t);
    } else if (key == "s1") {
      want_double(&cfg.s1);
    } else if (key == "s2") {
      want_double(&cfg.s2);
    } else if (key == "epsilon") {
      want_double(&cfg.epsilon);
    } else if (key == "sigma") {
      want_double(&cfg.sigma);
    } else if (key == "q") {
      want_double(&cfg.q);
    } else if (key == "c") {
      want_double(&cfg.c);
    } else if (key == "coefficient") {
      if (value != "constant" && value != "separable" && value != "sinsin" &&
          value != "signchange" && value != "table")
        issue(lineno, "unknown coefficient kind `" + value + "`");
      else
        cfg.coefficient.kind = value;
    } else if (key == "kappa") {
      want_double(&cfg.coefficient.kappa);
    } else if (key == "amplitude") {
      want_double(&cfg.coefficient.amplitude);
    } else if (key == "table") {
      cfg.coefficient.table_path = value;
    } else if (key == "alpha") {
      want_double(&cfg.coefficient.alpha);
    } else if (key == "lambda") {
      want_double(&cfg.coefficient.lambda);
    } else if (key == "Lambda") {
      want_double(&cfg.coefficient.Lambda);
    } else if (key == "tol") {
      want_double(&cfg.tol);
    } else if (key == "max_iter") {
      want_int(&cfg.max_iter);
    } else if (key == "outer_max") {
      want_int(&cfg.outer_max);
    } else if (key == "omega_fraction") {
      want_double(&cfg.omega_fraction);
    } else if (key == "probe_fraction") {
      want_double(&cfg.probe_fraction);
    } else if (key == "kmax") {
      want_int(&cfg.kmax);
    } else if (key == "trials") {
      want_int(&cfg.trials);
    } else if (key == "frequencies") {
      if (!parse_int_list(value, &cfg.frequencies))
        issue(lineno, "key `frequencies`: expected a comma list of integers");
    } else if (key == "grids") {
      if (!parse_int_list(value, &cfg.grids))
        issue(lineno, "key `grids`: expected a comma list of integers");
    } else if (key == "s_list") {
      if (!parse_double_list(value, &cfg.s_list))
        issue(lineno, "key `s_list`: expected a comma list of numbers");
    } else if (key == "seed") {
      long long x;
      if (!parse_int(value, &x) || x < 0)
        issue(lineno, "key `seed`: expected a nonnegative integer");
      else
        cfg.seed = static_cast<std::uint64_t>(x);
    } else if (key == "threads") {
      want_int(&cfg.threads);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else {
      issue(lineno, "unknown key `" + key + "`");
    }
  }

  // ------------------------------------------------------------------
  // cross-key constraints, re-validated here so a bad file fails before
  // any work starts
  // ------------------------------------------------------------------
  if (!have_experiment) issue(0, "missing required key `experiment`");
  if (!have_s && cfg.experiment != ExperimentKind::kLocalLimit)
    issue(0, "missing required key `s`");

  if (cfg.dim != 1 && cfg.dim != 2) issue(0, "n must be 1 or 2");
  if (!power_of_two(cfg.N) || cfg.N < 8)
    issue(0, "N must be a power of two >= 8");
  if (!(cfg.L > 0.0)) issue(0, "L must be positive");
  if (!(cfg.support_fraction > 0.0) || cfg.support_fraction > 1.0)
    issue(0, "support_fraction must be in (0,1]");
  else if (std::abs(cfg.support_fraction * cfg.N -
                    std::round(cfg.support_fraction * cfg.N)) > 1e-9)
    issue(0, "support_fraction * N must be an integer cell count");

  if (have_s && (!(cfg.s > 0.0) || !(cfg.s < 1.0)))
    issue(0, "s must lie in (0,1)");

  // re-validate the exponent bundle through the shared contract; the t
  // window only binds for the experiments that use the comparison split
  const bool needs_t = cfg.experiment == ExperimentKind::kSolve ||
                       cfg.experiment == ExperimentKind::kWeighted ||
                       cfg.experiment == ExperimentKind::kPerturbative ||
                       cfg.experiment == ExperimentKind::kRegularity;
  if (have_s && cfg.s > 0.0 && cfg.s < 1.0) {
    FractionalParams params;
    params.s = cfg.s;
    params.t = needs_t ? cfg.effective_t() : cfg.s;
    params.s1 = cfg.effective_s1();
    params.s2 = cfg.effective_s2();
    params.epsilon = cfg.epsilon;
    params.sigma = cfg.sigma < 0.0 ? cfg.coefficient.alpha : cfg.sigma;
    for (const std::string& v : params.violations(cfg.coefficient.alpha))
      issue(0, v);
  }

  if (!(cfg.coefficient.alpha > 0.0) || !(cfg.coefficient.alpha < 1.0))
    issue(0, "alpha must lie in (0,1)");
  if (!(cfg.coefficient.lambda > 0.0) || !(cfg.coefficient.Lambda > 0.0))
    issue(0, "lambda and Lambda must be positive");
  if (cfg.coefficient.kind == "table" && cfg.coefficient.table_path.empty())
    issue(0, "coefficient = table requires key `table`");

  if (cfg.c == 1.0) issue(0, "c = 1 makes the multiplier singular");
  if (!(cfg.tol > 0.0)) issue(0, "tol must be positive");
  if (cfg.max_iter < 1) issue(0, "max_iter must be >= 1");
  if (cfg.outer_max < 1) issue(0, "outer_max must be >= 1");
  if (!(cfg.q >= 1.0)) issue(0, "q must be >= 1");
  if (!(cfg.omega_fraction > 0.0) ||
      cfg.omega_fraction >= cfg.support_fraction)
    issue(0, "omega_fraction must lie in (0, support_fraction)");
  if (cfg.probe_fraction < 0.0 || cfg.probe_fraction >= cfg.omega_fraction)
    issue(0, "probe_fraction must lie in [0, omega_fraction)");
  if (cfg.kmax < 1 || cfg.kmax >= cfg.N / 2)
    issue(0, "kmax must satisfy 1 <= kmax < N/2");
  if (cfg.trials < 1) issue(0, "trials must be >= 1");
  for (int k : cfg.frequencies)
    if (k < 1) issue(0, "frequencies must be positive");
  if (!std::is_sorted(cfg.frequencies.begin(), cfg.frequencies.end()))
    issue(0, "frequencies must be increasing");
  for (int N : cfg.grids)
    if (!power_of_two(N) || N < 8)
      issue(0, "grids entries must be powers of two >= 8");
  for (double sv : cfg.s_list)
    if (!(sv > 0.5) || !(sv < 1.0))
      issue(0, "s_list entries must lie in (0.5,1)");

  if (result.issues.empty()) result.config = cfg;
  return result;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.issues.push_back({0, "cannot open config file " + path});
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace fraclame
