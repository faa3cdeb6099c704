// Acceptance suite: runs the default experiment battery end to end and
// aggregates every report assertion under its numbered criterion, printing
// one pass/fail line per criterion. Exit status 0 iff all criteria pass.

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "fraclame/config.hpp"
#include "fraclame/experiments.hpp"

using fraclame::ExperimentConfig;
using fraclame::ExperimentKind;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CriterionState {
  int checks = 0;
  std::vector<std::string> failures;
};

const char* criterion_label(int k) {
  switch (k) {
    case 1: return "spectral algebra (1e-12 battery, < 1 s)";
    case 2: return "symbol derivation vs lattice quadrature";
    case 3: return "hessian kernel identity (1e-6)";
    case 4: return "constant-coefficient coincidence at N = 512";
    case 5: return "riesz commutator: constant + dense oracle";
    case 6: return "commutator decay slope <= -0.1";
    case 7: return "dirichlet solver vs dense oracle";
    case 8: return "weighted lame solvers";
    case 9: return "perturbative outer iteration";
    case 10: return "regularity ratio stability (<= 20%)";
    case 11: return "korn ratio bounds";
    case 12: return "performance (fast path, suite runtime)";
  }
  return "?";
}

class Suite {
 public:
  Suite() {
    root_ = fs::temp_directory_path() /
            ("fraclame_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }

  void run(const std::string& name, const ExperimentConfig& base) {
    ExperimentConfig cfg = base;
    cfg.out_dir = (root_ / name).string();
    std::printf("  running %-16s ...", name.c_str());
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    const int status = fraclame::run_experiment(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf(" exit %d (%.2f s)\n", status, secs);

    std::ifstream in(root_ / name / "report.json");
    if (!in) {
      criteria_[0].failures.push_back(name + ": report.json missing");
      return;
    }
    json report;
    in >> report;
    if (status == 3)
      criteria_[0].failures.push_back(name + ": solver failure");
    for (const auto& a : report["assertions"]) {
      if (!a.contains("criterion")) continue;  // informational check
      const int k = a["criterion"].get<int>();
      CriterionState& st = criteria_[k];
      ++st.checks;
      if (!a["passed"].get<bool>())
        st.failures.push_back(name + "/" + a["name"].get<std::string>());
    }
  }

  // suite-level wall-time budget folds into criterion 12
  void record_runtime(double seconds) {
    CriterionState& st = criteria_[12];
    ++st.checks;
    std::printf("  full default suite: %.1f s (budget 600 s)\n", seconds);
    if (seconds >= 600.0)
      st.failures.push_back("default suite exceeded the 10-minute budget");
  }

  int finish() {
    bool all_pass = true;
    std::printf("\n");
    for (int k = 1; k <= 12; ++k) {
      const CriterionState& st = criteria_[k];
      const bool pass = st.failures.empty() && st.checks > 0;
      all_pass &= pass;
      std::printf("criterion %2d [%s]: %s (%d checks)\n", k,
                  criterion_label(k), pass ? "PASS" : "FAIL", st.checks);
      for (const std::string& f : st.failures)
        std::printf("    failed: %s\n", f.c_str());
    }
    if (!criteria_[0].failures.empty()) {
      all_pass = false;
      for (const std::string& f : criteria_[0].failures)
        std::printf("suite error: %s\n", f.c_str());
    }
    std::printf("OVERALL: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
  }

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::map<int, CriterionState> criteria_;
};

}  // namespace

int main() {
  Suite suite;
  const auto t0 = std::chrono::steady_clock::now();

  // --- symbols, one and two dimensions (criteria 1, 2, 3) -----------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kSymbols;
    cfg.dim = 1;
    cfg.N = 256;
    cfg.s = 0.5;
    cfg.seed = 2001;
    suite.run("symbols_1d", cfg);

    cfg.dim = 2;
    cfg.N = 128;
    cfg.seed = 2002;
    suite.run("symbols_2d", cfg);
  }

  // --- korn ratios (criterion 11) ------------------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kKorn;
    cfg.dim = 2;
    cfg.N = 32;
    cfg.s = 0.5;
    cfg.trials = 100;
    cfg.kmax = 5;
    cfg.seed = 2003;
    suite.run("korn", cfg);
  }

  // --- commutators (criteria 4, 5, 6) ---------------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kCommutator;
    cfg.dim = 1;
    cfg.N = 512;
    cfg.s = 0.25;
    cfg.kmax = 4;
    cfg.coefficient.kind = "sinsin";
    cfg.coefficient.kappa = 2.0;
    cfg.coefficient.amplitude = 0.5;
    cfg.frequencies = {4, 8, 16, 32};
    cfg.seed = 2004;
    suite.run("commutator", cfg);
  }

  // --- dirichlet solver (criterion 7) ---------------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kSolve;
    cfg.dim = 1;
    cfg.N = 64;
    cfg.s = 0.5;
    cfg.tol = 1e-8;
    cfg.max_iter = 4000;
    cfg.kmax = 4;
    cfg.seed = 2005;
    suite.run("solve", cfg);
  }

  // --- weighted lame (criterion 8) ------------------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kWeighted;
    cfg.dim = 1;
    cfg.N = 256;
    cfg.s = 0.5;
    cfg.t = 0.6;
    cfg.c = -0.5;
    cfg.tol = 1e-10;
    cfg.max_iter = 300;
    cfg.kmax = 4;
    cfg.seed = 2006;
    suite.run("weighted", cfg);
  }

  // --- perturbative solver (criterion 9) ------------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kPerturbative;
    cfg.dim = 1;
    cfg.N = 512;
    cfg.s = 0.25;
    cfg.t = 0.3;
    cfg.tol = 1e-2;  // one-step bound for the constant-coefficient case
    cfg.outer_max = 30;
    cfg.max_iter = 4000;
    cfg.kmax = 4;
    cfg.seed = 2007;
    suite.run("perturbative", cfg);
  }

  // --- regularity ratios (criterion 10), interior and endpoint t ------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kRegularity;
    cfg.dim = 1;
    cfg.s = 0.5;
    cfg.t = 0.6;
    cfg.q = 2.0;
    cfg.grids = {64, 128, 256};
    cfg.tol = 1e-8;
    cfg.max_iter = 6000;
    cfg.seed = 2008;
    suite.run("regularity_t06", cfg);

    cfg.t = 0.5;  // admissible endpoint t = s
    cfg.seed = 2009;
    suite.run("regularity_ts", cfg);
  }

  // --- local limit (informational checks only) ------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kLocalLimit;
    cfg.dim = 1;
    cfg.N = 512;
    cfg.s = 0.75;
    cfg.s_list = {0.6, 0.8, 0.95};
    cfg.coefficient.kappa = 1.0;
    cfg.coefficient.amplitude = 0.3;
    cfg.kmax = 3;
    cfg.seed = 2010;
    suite.run("locallimit", cfg);
  }

  // --- performance (criterion 12) -------------------------------------------
  {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::kBench;
    cfg.dim = 1;
    cfg.N = 4096;
    cfg.s = 0.5;
    cfg.kmax = 8;
    cfg.seed = 2011;
    suite.run("bench", cfg);
  }

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  suite.record_runtime(total);

  const int status = suite.finish();
  std::printf("artifacts kept under %s\n", suite.root().string().c_str());
  return status;
}
