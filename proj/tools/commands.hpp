// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace motskit::cli {

/// One parsed command invocation.
struct RunConfig {
  std::string command;                  // catalog | verify | profile
  std::string metric_spec;              // "family:key=value,..."
  std::string data_spec = "KminusEpsG"; // K0 | KminusEpsG | KplusEpsG
  std::optional<double> eps;            // of the data spec; inferred when unset
  std::vector<std::string> checks;      // empty = family defaults
  int grid = 32;
  double tol = 1e-6;
  unsigned seed = 0;
  std::string out_path;                 // empty = stdout
  std::string format = "json";          // json | csv
  std::string catalog_name;             // catalog --name filter
  std::optional<std::pair<double, double>> range;  // profile sampling range
};

/// Exit codes: 0 ok, 2 config error, 3 check failure, 4 numerical error.
int run_catalog(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_profile(const RunConfig& cfg);

}  // namespace motskit::cli
