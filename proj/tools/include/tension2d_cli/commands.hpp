#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tension2d/oracles.hpp"
#include "tension2d_cli/config.hpp"

namespace tension2d::cli {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kConfigError = 2, kNumericalError = 3 };

struct Table {
  std::string name;  ///< file name, e.g. "sigma.csv"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResultBundle {
  nlohmann::ordered_json summary;  ///< flat key/value pairs
  std::string summary_name = "summary.json";
  std::vector<Table> tables;
  std::vector<Check> checks;

  bool all_pass() const;
};

ResultBundle cmd_solve(const RunConfig& config);
ResultBundle cmd_eig(const RunConfig& config);
ResultBundle cmd_sweep(const RunConfig& config, int threads = 1);

/// Oracle and invariant suite. `hilbert` replaces the Hilbert transform in the
/// trig-table checks only, so a broken transform shows up as failing checks.
ResultBundle cmd_verify(const std::string& level, std::uint64_t seed = 20240611,
                        const oracles::HilbertFn& hilbert = {});

/// One header row, comma separated, LF endings, %.17g numbers.
std::string to_csv(const Table& table);

/// Writes the requested formats into `dir`, creating it if needed.
void write_bundle(const ResultBundle& bundle, const std::string& dir, const RunConfig& config);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace tension2d::cli
