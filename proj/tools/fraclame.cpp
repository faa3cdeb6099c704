// Batch experiment runner: reads a key = value config, runs the requested
// experiment and writes report.json, CSV tables and field dumps.
//
// Exit codes: 0 all assertions passed, 1 assertion failure,
//             2 configuration error, 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "fraclame/config.hpp"
#include "fraclame/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fraclame - nonlocal coupled-system experiment runner"};

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = 0;

  app.add_option("config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--seed", seed, "random seed override");
  app.add_option("--threads", threads, "worker thread override")
      ->envname("FRACLAME_THREADS");

  CLI11_PARSE(app, argc, argv);

  fraclame::ParseResult parsed = fraclame::parse_config_file(config_path);
  if (!parsed.config) {
    for (const auto& issue : parsed.issues) {
      if (issue.line > 0)
        std::fprintf(stderr, "%s:%d: %s\n", config_path.c_str(), issue.line,
                     issue.message.c_str());
      else
        std::fprintf(stderr, "%s: %s\n", config_path.c_str(),
                     issue.message.c_str());
    }
    return 2;
  }

  fraclame::ExperimentConfig config = *parsed.config;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
  if (threads > 0) config.threads = threads;

  const int status = fraclame::run_experiment(config);
  std::printf("%s: %s (exit %d), artifacts in %s\n",
              fraclame::experiment_name(config.experiment),
              status == 0 ? "pass" : "FAIL", status, config.out_dir.c_str());
  return status;
}
