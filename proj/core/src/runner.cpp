#include "ezstab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ezstab/compare.hpp"
#include "ezstab/errors.hpp"
#include "ezstab/learning.hpp"
#include "ezstab/markov.hpp"
#include "ezstab/parallel.hpp"
#include "ezstab/preferences.hpp"
#include "ezstab/rng.hpp"
#include "ezstab/simulate.hpp"
#include "ezstab/solver.hpp"
#include "ezstab/ssy.hpp"
#include "ezstab/valuation.hpp"

namespace ezstab::cli {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string sig7(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

// Spectral-radius route to the test value for any catalogue model. The
// lognormal model discretizes the persistent component at D states; the
// trend model's i.i.d. factor is a one-shot chain whose rows all equal the
// factor distribution.
double lambda_spectral(const ModelSpec& spec, const Preferences& prefs, const GridSettings& grid,
                       std::string* grid_note = nullptr) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LognormalAR1>) {
          if (grid_note) *grid_note = "D=" + std::to_string(grid.d);
          auto chain = markov::rouwenhorst(grid.d, m.rho, m.sigma);
          auto k = valuation::build_k_lognormal(chain, m.mu_c, m.sigma_c, prefs.gamma);
          return lambda_from_spectral_radius(prefs, valuation::spectral_radius(k).radius);
        } else if constexpr (std::is_same_v<T, MarkovSwitching>) {
          if (grid_note) *grid_note = "2-state";
          auto k = valuation::build_k_switching(m, prefs.gamma);
          return lambda_from_spectral_radius(prefs, valuation::spectral_radius(k).radius);
        } else if constexpr (std::is_same_v<T, SSY>) {
          if (grid_note)
            *grid_note = std::to_string(grid.h) + "x" + std::to_string(grid.i) + "x" +
                         std::to_string(grid.j);
          auto g = ssy::build_ssy_grid(m, grid.h, grid.i, grid.j);
          auto k = ssy::build_k_ssy(g, m.mu_c, prefs.gamma);
          return lambda_from_spectral_radius(prefs, valuation::spectral_radius(k).radius);
        } else {
          if (grid_note) *grid_note = std::to_string(m.factor.support.size()) + "-point factor";
          const auto n = static_cast<int>(m.factor.support.size());
          markov::MarkovChain chain;
          chain.states.resize(n, 1);
          chain.trans.resize(n, n);
          chain.pi.resize(n);
          for (int i = 0; i < n; ++i) {
            chain.states(i, 0) = m.factor.support[static_cast<std::size_t>(i)];
            chain.pi[i] = m.factor.probs[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j) chain.trans(i, j) = m.factor.probs[static_cast<std::size_t>(j)];
          }
          const double a = 1.0 - prefs.gamma;
          valuation::KMatrix k;
          k.gamma = prefs.gamma;
          k.chain = chain;
          k.mat.resize(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              k.mat(i, j) = std::pow(m.tau * chain.states(j, 0) / chain.states(i, 0), a) *
                            chain.trans(i, j);
          return lambda_from_spectral_radius(prefs, valuation::spectral_radius(k).radius);
        }
      },
      spec);
}

bool has_analytic(const ModelSpec& spec) {
  return std::holds_alternative<LognormalAR1>(spec) || std::holds_alternative<TrendIID>(spec);
}

double lambda_analytic(const ModelSpec& spec, const Preferences& prefs) {
  if (const auto* by = std::get_if<LognormalAR1>(&spec))
    return lambda_from_growth(
        prefs, valuation::lrm_lognormal_analytic(by->mu_c, by->sigma_c, by->rho, by->sigma,
                                                 prefs.gamma));
  const auto& trend = std::get<TrendIID>(spec);
  return lambda_from_growth(prefs, valuation::lrm_trend_analytic(trend.tau));
}

}  // namespace

StabilityReport run_check(const RunConfig& config) {
  validate(config.model);
  Preferences prefs(config.beta, config.gamma, config.psi);

  std::map<std::string, LambdaEstimate> values;
  std::map<std::string, std::string> meta;
  meta["model"] = model_name(config.model);
  meta["beta"] = sig7(config.beta);
  meta["gamma"] = sig7(config.gamma);
  meta["psi"] = sig7(config.psi);

  if (config.method_analytic) {
    if (has_analytic(config.model)) {
      try {
        values["analytic"] = {lambda_analytic(config.model, prefs), 0.0};
      } catch (const std::exception& e) {
        throw numerical_error(std::string("analytic: ") + e.what());
      }
    } else {
      meta["analytic"] = "not available for " + model_name(config.model);
    }
  }

  if (config.method_spectral) {
    try {
      std::string grid_note;
      values["spectral"] = {lambda_spectral(config.model, prefs, config.grid, &grid_note), 0.0};
      meta["spectral_grid"] = grid_note;
      meta["spectral_tol"] = "1e-13";
    } catch (const numerical_error& e) {
      throw numerical_error(std::string("spectral: ") + e.what());
    }
  }

  if (config.method_montecarlo) {
    try {
      sim::MCEstimate est = sim::mc_lambda(config.model, prefs, config.mc.m, config.mc.n,
                                           config.mc.seed, config.mc.truncation, config.mc.draws,
                                           config.workers);
      values["montecarlo"] = {est.value, est.stddev};
      meta["mc_m"] = std::to_string(config.mc.m);
      meta["mc_n"] = std::to_string(config.mc.n);
      meta["mc_draws"] = std::to_string(config.mc.draws);
      meta["mc_seed"] = std::to_string(config.mc.seed);
      meta["mc_truncation"] = sig7(config.mc.truncation);
    } catch (const numerical_error& e) {
      throw numerical_error(std::string("montecarlo: ") + e.what());
    }
  }

  return make_report(std::move(values), std::move(meta));
}

std::string report_to_json(const StabilityReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = to_string(report.verdict);
  j["at_boundary"] = report.at_boundary;
  nlohmann::json lambdas = nlohmann::json::object();
  for (const auto& [name, est] : report.lambda_values) {
    lambdas[name] = {{"value", est.value}, {"uncertainty", est.uncertainty}};
  }
  j["lambda"] = lambdas;
  j["metadata"] = report.metadata;
  return j.dump(2) + "\n";
}

std::string report_summary(const StabilityReport& report) {
  std::ostringstream out;
  out << "test value by method:\n";
  for (const auto& [name, est] : report.lambda_values) {
    out << "  " << name << ": " << sig7(est.value);
    if (est.uncertainty > 0.0) out << " (std " << sig7(est.uncertainty) << ")";
    out << "\n";
  }
  out << "verdict: " << to_string(report.verdict);
  if (report.at_boundary) out << " (test value exactly at 1)";
  out << "\n";
  return out.str();
}

std::string Table::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ",";
    out << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  return out.str();
}

std::string Table::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) obj[header[i]] = row[i];
    arr.push_back(obj);
  }
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

namespace {

Table replicate_table1() {
  Table t;
  t.header = {"gamma", "true_value", "D5", "D50", "D100", "D200", "provenance"};
  LognormalAR1 by = bansal_yaron_calibration();
  for (double gamma : {7.5, 10.0, 12.5}) {
    std::vector<std::string> row;
    row.push_back(sig7(gamma));
    row.push_back(sig7(valuation::lrm_lognormal_analytic(by.mu_c, by.sigma_c, by.rho, by.sigma, gamma)));
    for (int d : {5, 50, 100, 200}) {
      auto chain = markov::rouwenhorst(d, by.rho, by.sigma);
      auto k = valuation::build_k_lognormal(chain, by.mu_c, by.sigma_c, gamma);
      double r = valuation::spectral_radius(k).radius;
      row.push_back(sig7(std::pow(r, 1.0 / (1.0 - gamma))));
    }
    row.push_back("spectral;rouwenhorst;tol=1e-13");
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Tables 2 and 3 share their draws: table2 reports the growth-rate ensemble,
// table3 the test-value ensemble at beta=0.998, psi=1.5 over the same seeds.
Table replicate_table23(bool lambda_version, std::uint64_t seed, bool desk, int workers) {
  Table t;
  t.header = {"n", "m1000", "m2000", "m3000", "m4000", "m5000", "provenance"};
  ModelSpec spec = bansal_yaron_calibration();
  Preferences prefs(0.998, 7.5, 1.5);
  const int draws = desk ? 200 : 1000;
  for (int n : {250, 500, 750}) {
    std::vector<std::string> row{std::to_string(n)};
    for (int m : {1000, 2000, 3000, 4000, 5000}) {
      std::uint64_t cell_seed = split_seed(seed, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(m));
      std::vector<double> vals(static_cast<std::size_t>(draws));
      parallel_for(draws, workers, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t d = lo; d < hi; ++d) {
          double lrm = sim::mc_lrm(spec, prefs.gamma, m, n,
                                   split_seed(cell_seed, static_cast<std::uint64_t>(d)), kInf, 1);
          vals[static_cast<std::size_t>(d)] =
              lambda_version ? lambda_from_growth(prefs, lrm) : lrm;
        }
      });
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= draws;
      double ss = 0.0;
      for (double v : vals) ss += (v - mean) * (v - mean);
      double sd = draws > 1 ? std::sqrt(ss / (draws - 1)) : 0.0;
      row.push_back(sig7(mean) + " (" + sig7(sd) + ")");
    }
    row.push_back("montecarlo;seed=" + std::to_string(seed) + ";draws=" + std::to_string(draws));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table replicate_table4(std::uint64_t seed, bool desk, int workers) {
  Table t;
  t.header = {"n", "mean", "std", "min", "p25", "p50", "p75", "max", "provenance"};
  ModelSpec spec = ssy_calibration();
  Preferences prefs(0.999, 8.89, 1.97);
  int m = desk ? 1000 : 5000;
  int draws = desk ? 100 : 1000;
  for (int n : {500, 1000, 1500}) {
    sim::MCEstimate est = sim::mc_lambda(spec, prefs, m, n,
                                         split_seed(seed, static_cast<std::uint64_t>(n)), kInf,
                                         draws, workers);
    t.rows.push_back({std::to_string(n), sig7(est.mean), sig7(est.stddev), sig7(est.min),
                      sig7(est.q25), sig7(est.q50), sig7(est.q75), sig7(est.max),
                      "montecarlo;seed=" + std::to_string(seed) + ";m=" + std::to_string(m) +
                          ";draws=" + std::to_string(draws)});
  }
  return t;
}

Table replicate_table5(bool desk, int workers) {
  Table t;
  const std::vector<double> psis{1.1, 1.68, 2.26, 2.84, 3.42, 4.0};
  const std::vector<double> mu_cs{0.0030, 0.0025, 0.0020, 0.0015, 0.0010, 0.0005};
  t.header = {"mu_c"};
  for (double p : psis) t.header.push_back("psi" + sig7(p));
  t.header.push_back("provenance");

  SSY base = ssy_calibration();
  auto grid = ssy::build_ssy_grid(base, 3, 3, 3);
  const double beta = 0.999, gamma = 8.89;

  solver::SolveOptions opts;
  // Near the stability boundary the fixed point sits at tiny g values where
  // absolute g deviations go quiet long before the wealth-consumption scale
  // settles, so the grid stops on relative deviations instead.
  opts.relative = true;
  opts.tol = desk ? 1e-9 : 1e-11;
  opts.max_iter = desk ? 60000000 : 200000000;

  auto cells = solver::wc_ratio_grid(
      beta, gamma, mu_cs, psis,
      [&](double mu_c) { return ssy::build_k_ssy(grid, mu_c, gamma); }, opts, workers);

  for (std::size_t r = 0; r < mu_cs.size(); ++r) {
    std::vector<std::string> row{sig7(mu_cs[r])};
    for (std::size_t c = 0; c < psis.size(); ++c) {
      const auto& cell = cells[r][c];
      if (cell.status == solver::Status::no_solution)
        row.push_back("NA");
      else if (cell.status == solver::Status::converged)
        row.push_back(sig7(cell.mean_wc));
      else
        row.push_back(sig7(cell.mean_wc) + "*");  // iteration cap, lower bound
    }
    row.push_back("solver;grid=3x3x3;tol=" + sig7(opts.tol) + ";rel");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table replicate_figure4(std::uint64_t seed, bool desk, int workers) {
  Table t;
  t.header = {"truncation", "lambda_mean", "lambda_std", "provenance"};
  SSY spec = ssy_calibration();
  Preferences prefs(0.999, 8.89, 1.97);
  const int m = 1000, n = 1000;
  int draws = desk ? 100 : 1000;
  auto sweep = sim::truncation_sweep(spec, prefs, {1.0, 2.0, 3.0, 4.0, 6.0}, m, n, seed,
                                     draws, workers);
  for (const auto& [level, est] : sweep) {
    t.rows.push_back({std::isinf(level) ? "inf" : sig7(level), sig7(est.mean), sig7(est.stddev),
                      "montecarlo;seed=" + std::to_string(seed) + ";m=" + std::to_string(m) +
                          ";n=" + std::to_string(n) + ";draws=" + std::to_string(draws)});
  }
  return t;
}

}  // namespace

Table replicate(const std::string& table_id, std::uint64_t seed, bool desk, int workers) {
  if (table_id == "table1") return replicate_table1();
  if (table_id == "table2") return replicate_table23(false, seed, desk, workers);
  if (table_id == "table3") return replicate_table23(true, seed, desk, workers);
  if (table_id == "table4") return replicate_table4(seed, desk, workers);
  if (table_id == "table5") return replicate_table5(desk, workers);
  if (table_id == "figure4") return replicate_figure4(seed, desk, workers);
  throw std::invalid_argument("unknown table id '" + table_id + "'");
}

namespace {

RunConfig with_axis_value(const RunConfig& base, const std::string& axis, double v) {
  RunConfig c = base;
  if (axis == "beta") {
    c.beta = v;
  } else if (axis == "gamma") {
    c.gamma = v;
  } else if (axis == "psi") {
    c.psi = v;
  } else if (axis == "mu_c") {
    std::visit(
        [&](auto& m) {
          using T = std::decay_t<std::remove_reference_t<decltype(m)>>;
          if constexpr (std::is_same_v<T, LognormalAR1> || std::is_same_v<T, SSY>) {
            m.mu_c = v;
          } else {
            throw std::invalid_argument("axis mu_c requires a model with a mu_c parameter");
          }
        },
        c.model);
  } else {
    throw std::invalid_argument("unknown axis '" + axis + "'");
  }
  return c;
}

double single_lambda(const RunConfig& config) {
  // One method per contour cell: spectral when enabled, otherwise analytic,
  // otherwise Monte Carlo.
  Preferences prefs(config.beta, config.gamma, config.psi);
  if (config.method_spectral) return lambda_spectral(config.model, prefs, config.grid);
  if (config.method_analytic && has_analytic(config.model))
    return lambda_analytic(config.model, prefs);
  return sim::mc_lambda(config.model, prefs, config.mc.m, config.mc.n, config.mc.seed,
                        config.mc.truncation, config.mc.draws, config.workers)
      .value;
}

}  // namespace

Table contour(const RunConfig& config, const Axis& axis1, const Axis& axis2) {
  if (axis1.steps < 1 || axis2.steps < 1)
    throw std::invalid_argument("contour: steps must be >= 1");
  std::string method = config.method_spectral
                           ? "spectral"
                           : (config.method_analytic && has_analytic(config.model) ? "analytic"
                                                                                   : "montecarlo");
  Table t;
  t.header = {axis1.name, axis2.name, "lambda", "method"};
  for (int i = 0; i < axis1.steps; ++i) {
    double v1 = axis1.steps == 1 ? axis1.lo
                                 : axis1.lo + (axis1.hi - axis1.lo) * i / (axis1.steps - 1.0);
    for (int j = 0; j < axis2.steps; ++j) {
      double v2 = axis2.steps == 1 ? axis2.lo
                                   : axis2.lo + (axis2.hi - axis2.lo) * j / (axis2.steps - 1.0);
      RunConfig cell = with_axis_value(with_axis_value(config, axis1.name, v1), axis2.name, v2);
      t.rows.push_back({sig7(v1), sig7(v2), sig7(single_lambda(cell)), method});
    }
  }
  return t;
}

Table sweep_truncation(const RunConfig& config, const std::vector<double>& levels) {
  const auto* spec = std::get_if<SSY>(&config.model);
  if (!spec) throw std::invalid_argument("sweep-truncation requires the ssy model");
  Preferences prefs(config.beta, config.gamma, config.psi);
  auto sweep = sim::truncation_sweep(*spec, prefs, levels, config.mc.m, config.mc.n,
                                     config.mc.seed, config.mc.draws, config.workers);
  Table t;
  t.header = {"truncation", "lambda_mean", "lambda_std", "provenance"};
  for (const auto& [level, est] : sweep) {
    t.rows.push_back({std::isinf(level) ? "inf" : sig7(level), sig7(est.mean), sig7(est.stddev),
                      "montecarlo;seed=" + std::to_string(config.mc.seed) +
                          ";m=" + std::to_string(config.mc.m) + ";n=" + std::to_string(config.mc.n) +
                          ";draws=" + std::to_string(config.mc.draws)});
  }
  return t;
}

}  // namespace ezstab::cli
