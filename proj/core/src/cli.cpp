#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ezstab/config.hpp"
#include "ezstab/errors.hpp"
#include "ezstab/runner.hpp"

namespace ezstab::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonFlags {
  std::string config_path;
  std::string model;
  std::vector<std::string> methods;
  std::optional<int> m, n, draws, workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> truncation;
  std::optional<std::string> grid;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "config file (key-value or JSON)");
  cmd->add_option("--model", f.model,
                  "catalogue model: by | switching | ssy | trend (baseline calibration)");
  cmd->add_option("--method", f.methods, "methods: analytic, spectral, montecarlo")
      ->delimiter(',');
  cmd->add_option("--m", f.m, "Monte Carlo paths per draw");
  cmd->add_option("--n", f.n, "Monte Carlo horizon");
  cmd->add_option("--draws", f.draws, "Monte Carlo replication draws");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--truncation", f.truncation, "shock clip level in std deviations, or inf");
  cmd->add_option("--grid", f.grid, "grid sizes: D for the AR(1) model, HxIxJ for ssy");
  cmd->add_option("--workers", f.workers, "worker threads (default: EZSTAB_WORKERS or hardware)");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

RunConfig build_config(const CommonFlags& f) {
  RunConfig config;
  if (!f.config_path.empty()) config = parse_config_file(f.config_path);

  if (!f.model.empty()) {
    if (f.model == "by" || f.model == "lognormal_ar1") {
      config.model = bansal_yaron_calibration();
      config.beta = 0.998;
      config.gamma = 7.5;
      config.psi = 1.5;
    } else if (f.model == "switching" || f.model == "markov_switching") {
      config.model = switching_calibration();
      config.beta = 0.998;
      config.gamma = 10.0;
      config.psi = 1.5;
    } else if (f.model == "ssy") {
      config.model = ssy_calibration();
      config.beta = 0.999;
      config.gamma = 8.89;
      config.psi = 1.97;
    } else if (f.model == "trend" || f.model == "trend_iid") {
      config.model = trend_calibration();
      config.beta = 0.99;
      config.gamma = 10.0;
      config.psi = 1.5;
    } else {
      throw ConfigError(1, 1, "unknown --model '" + f.model + "'");
    }
  }

  if (!f.methods.empty()) {
    config.method_analytic = config.method_spectral = config.method_montecarlo = false;
    for (const auto& m : f.methods) {
      if (m == "analytic")
        config.method_analytic = true;
      else if (m == "spectral")
        config.method_spectral = true;
      else if (m == "montecarlo")
        config.method_montecarlo = true;
      else
        throw ConfigError(1, 1, "unknown --method '" + m + "'");
    }
  }

  if (f.m) config.mc.m = *f.m;
  if (f.n) config.mc.n = *f.n;
  if (f.draws) config.mc.draws = *f.draws;
  if (f.seed) config.mc.seed = *f.seed;
  if (f.workers) config.workers = *f.workers;
  if (f.truncation) {
    if (*f.truncation == "inf" || *f.truncation == "infinity") {
      config.mc.truncation = std::numeric_limits<double>::infinity();
    } else {
      try {
        config.mc.truncation = std::stod(*f.truncation);
      } catch (...) {
        throw ConfigError(1, 1, "bad --truncation value '" + *f.truncation + "'");
      }
    }
  }
  if (f.grid) {
    std::istringstream in(*f.grid);
    std::vector<int> parts;
    std::string item;
    while (std::getline(in, item, 'x')) {
      try {
        parts.push_back(std::stoi(item));
      } catch (...) {
        throw ConfigError(1, 1, "bad --grid value '" + *f.grid + "'");
      }
    }
    if (parts.size() == 1) {
      config.grid.d = parts[0];
    } else if (parts.size() == 3) {
      config.grid.h = parts[0];
      config.grid.i = parts[1];
      config.grid.j = parts[2];
    } else {
      throw ConfigError(1, 1, "--grid expects D or HxIxJ");
    }
  }
  if (!f.out.empty()) config.out_path = f.out;
  if (!f.format.empty()) config.format = f.format;

  if (!config.method_analytic && !config.method_spectral && !config.method_montecarlo)
    throw ConfigError(1, 1, "at least one method must be enabled");
  return config;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(1, 1, "cannot open output path '" + path + "'");
  out << payload;
}

void emit_table(const Table& table, const RunConfig& config) {
  write_output(config.out_path, config.format == "json" ? table.to_json() : table.to_csv());
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Existence and uniqueness checks for recursive utilities"};
  app.require_subcommand(1);

  CommonFlags check_flags;
  auto* check = app.add_subcommand("check", "compute the test value and verdict for one model");
  add_common(check, check_flags);

  CommonFlags rep_flags;
  std::string table_id;
  std::string scale = "desk";
  auto* rep = app.add_subcommand("replicate", "emit a replication table as CSV/JSON");
  rep->add_option("table", table_id, "table1..table5 or figure4")->required();
  rep->add_option("--scale", scale, "desk | full")->check(CLI::IsMember({"desk", "full"}));
  add_common(rep, rep_flags);

  CommonFlags con_flags;
  std::vector<std::string> axis1_spec, axis2_spec;
  auto* con = app.add_subcommand("contour", "grid of test values over two axes");
  con->add_option("--axis1", axis1_spec, "name,lo,hi,steps (name in beta|psi|gamma|mu_c)")
      ->delimiter(',')
      ->expected(4)
      ->required();
  con->add_option("--axis2", axis2_spec, "name,lo,hi,steps")->delimiter(',')->expected(4)->required();
  add_common(con, con_flags);

  CommonFlags sw_flags;
  std::vector<std::string> level_spec;
  auto* sw = app.add_subcommand("sweep-truncation", "test value across shock clip levels");
  sw->add_option("--levels", level_spec, "clip levels, e.g. 1,2,3,4,6,inf")->delimiter(',');
  add_common(sw, sw_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (check->parsed()) {
      RunConfig config = build_config(check_flags);
      StabilityReport report = run_check(config);
      std::cout << report_summary(report);
      std::string payload = report_to_json(report);
      if (!config.out_path.empty()) {
        write_output(config.out_path, payload);
        std::cout << "report written to " << config.out_path << "\n";
      } else if (config.format == "json") {
        std::cout << payload;
      }
      return kExitOk;
    }
    if (rep->parsed()) {
      RunConfig config = build_config(rep_flags);
      Table table = replicate(table_id, config.mc.seed, scale == "desk", config.workers);
      emit_table(table, config);
      return kExitOk;
    }
    if (con->parsed()) {
      RunConfig config = build_config(con_flags);
      auto parse_axis = [](const std::vector<std::string>& spec) {
        Axis a;
        a.name = spec[0];
        a.lo = std::stod(spec[1]);
        a.hi = std::stod(spec[2]);
        a.steps = std::stoi(spec[3]);
        return a;
      };
      Table table = contour(config, parse_axis(axis1_spec), parse_axis(axis2_spec));
      emit_table(table, config);
      return kExitOk;
    }
    if (sw->parsed()) {
      RunConfig config = build_config(sw_flags);
      std::vector<double> levels;
      for (const auto& s : level_spec)
        levels.push_back(s == "inf" ? std::numeric_limits<double>::infinity() : std::stod(s));
      if (levels.empty()) levels = {1.0, 2.0, 3.0, 4.0, 6.0};
      Table table = sweep_truncation(config, levels);
      emit_table(table, config);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace ezstab::cli
