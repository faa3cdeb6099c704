#pragma once

#include <string>

#include "fraclame/config.hpp"
#include "fraclame/grid.hpp"

namespace fraclame {

/// Runs one configured experiment, writing `report.json`, CSV tables and
/// field dumps into the configured output directory.
/// Returns the process exit status: 0 all assertions passed, 1 an
/// assertion failed, 3 a solver failed to converge where convergence was
/// required. Partial artifacts are kept on failure.
int run_experiment(const ExperimentConfig& config);

/// Text field dump: header `n N L`, then one line per node
/// `i [j] u_1 ... u_n` with lattice indices.
void write_field_dump(const std::string& path, const VectorField& field);
VectorField read_field_dump(const std::string& path);

}  // namespace fraclame
