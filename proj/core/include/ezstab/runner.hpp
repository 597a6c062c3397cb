#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ezstab/config.hpp"
#include "ezstab/report.hpp"

namespace ezstab::cli {

// Runs every enabled method on the configured model and assembles the report
// (analytic where a closed form exists, spectral on the discretized chain,
// Monte Carlo at the configured ensemble sizes).
StabilityReport run_check(const RunConfig& config);

// Versioned JSON rendering of a report and the human-readable summary.
std::string report_to_json(const StabilityReport& report);
std::string report_summary(const StabilityReport& report);

// Tabular results; CSV uses comma separators, a header row, LF endings and
// 7 significant digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

// Replication tables: table1..table5 and figure4. desk=true shrinks the
// replication draw counts to desk scale; seeds and tolerances ride along in
// the provenance column.
Table replicate(const std::string& table_id, std::uint64_t seed, bool desk, int workers);

struct Axis {
  std::string name;  // beta | psi | gamma | mu_c
  double lo = 0.0, hi = 0.0;
  int steps = 1;
};

// Grid of test values over two preference/model axes; one row per cell.
Table contour(const RunConfig& config, const Axis& axis1, const Axis& axis2);

// One row per clip level plus the untruncated reference.
Table sweep_truncation(const RunConfig& config, const std::vector<double>& levels);

// Full command line front end; returns the process exit code
// (0 computed, 2 configuration/argument error, 3 numerical failure).
int cli_main(int argc, const char* const* argv);

}  // namespace ezstab::cli
