#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ezstab/models.hpp"

namespace ezstab::cli {

// Parse failure with source position for diagnostics (exit code 2 territory).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                           ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_;
  int col_;
};

struct McSettings {
  int m = 1000;
  int n = 1000;
  int draws = 100;
  std::uint64_t seed = 1234;
  double truncation = std::numeric_limits<double>::infinity();
};

struct GridSettings {
  int d = 200;            // lognormal discretization size
  int h = 3, i = 3, j = 3;  // SSY grid sizes
  int n_grid = 200;       // learning belief grid
  int n_quad = 64;
};

// One stability-check run: model, preferences, methods, numerical settings.
// Parsed from the key-value config format or its JSON encoding; every
// referenced type's constraints are re-validated at parse time.
struct RunConfig {
  ModelSpec model = bansal_yaron_calibration();
  double beta = 0.998, gamma = 10.0, psi = 1.5;
  bool method_analytic = true;
  bool method_spectral = true;
  bool method_montecarlo = false;
  McSettings mc;
  GridSettings grid;
  std::string out_path;
  std::string format = "json";  // csv | json
  int workers = 0;              // 0 = auto
};

// Section/key text format (see the grammar in the README). JSON input is
// detected by a leading '{'. Throws ConfigError on any problem.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical text rendering; serialize(parse(text)) is idempotent.
std::string serialize_config(const RunConfig& config);

}  // namespace ezstab::cli
