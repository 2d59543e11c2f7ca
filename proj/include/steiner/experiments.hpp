#pragma once

#include "steiner/config.hpp"
#include "steiner/generators.hpp"
#include "steiner/grid.hpp"
#include "steiner/integrand.hpp"

#include <iosfwd>
#include <string>

namespace steiner {

// Config-driven experiment runner. Exit codes: 0 success, 1 config or I/O
// error (message names the offending key or path), 2 a checked inequality
// came out below -gap_tolerance.
int run_experiment_file(const std::string& config_path, std::ostream& log);
int run_experiment(Config& cfg, std::ostream& log);

int run_plot(const std::string& csv_path, const std::string& kind,
             const std::string& out_path, std::ostream& log);
int run_inspect(const std::string& stnr_path, std::ostream& log);

// Pieces shared with tests: construction of grid / generator / integrand
// from a config.
Grid grid_from_config(Config& cfg);
GeneratorSpec generator_from_config(Config& cfg);
Integrand integrand_from_config(Config& cfg, int xdim);
SurfaceIntegrand surface_integrand_from_config(Config& cfg, int xdim);

} // namespace steiner
