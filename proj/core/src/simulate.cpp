#include "ezstab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ezstab/errors.hpp"
#include "ezstab/parallel.hpp"
#include "ezstab/rng.hpp"
#include "mc_stats.hpp"
#include "path_sim.hpp"

namespace ezstab::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Model>
double mc_lrm_impl(const Model& model, double gamma, int m, int n, std::uint64_t seed,
                   double truncation, int workers) {
  std::vector<double> exps(static_cast<std::size_t>(m));
  parallel_for(m, workers, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t j = lo; j < hi; ++j) {
      Rng rng(split_seed(seed, static_cast<std::uint64_t>(j)));
      double sum = detail::log_growth_sum(model, n, rng, truncation);
      exps[static_cast<std::size_t>(j)] = (1.0 - gamma) * sum;
    }
  });
  double log_mean = detail::lse_mean_log(exps);
  double value = std::exp(log_mean / ((1.0 - gamma) * static_cast<double>(n)));
  if (!std::isfinite(value) || !(value > 0.0))
    throw numerical_error("mc_lrm: estimate overflowed (all paths outside double range)");
  return value;
}

}  // namespace

std::vector<double> simulate_growth_path(const ModelSpec& spec, int n, std::uint64_t seed,
                                         double truncation) {
  if (n < 1) throw std::invalid_argument("simulate_growth_path: n must be >= 1");
  if (!(truncation >= 0.0)) throw std::invalid_argument("simulate_growth_path: bad truncation");
  validate(spec);
  std::vector<double> growth(static_cast<std::size_t>(n));
  std::visit(
      [&](const auto& model) {
        detail::PathSim sim(model);
        Rng rng(seed);
        sim.init(rng, truncation);
        for (int t = 0; t < n; ++t) growth[static_cast<std::size_t>(t)] = sim.step(rng, truncation);
      },
      spec);
  return growth;
}

double mc_lrm(const ModelSpec& spec, double gamma, int m, int n, std::uint64_t seed,
              double truncation, int workers) {
  if (m < 1 || n < 1) throw std::invalid_argument("mc_lrm: m and n must be >= 1");
  if (!(truncation >= 0.0)) throw std::invalid_argument("mc_lrm: bad truncation");
  validate(spec);
  return std::visit(
      [&](const auto& model) { return mc_lrm_impl(model, gamma, m, n, seed, truncation, workers); },
      spec);
}

MCEstimate mc_lambda(const ModelSpec& spec, const Preferences& prefs, int m, int n,
                     std::uint64_t seed, double truncation, int draws, int workers) {
  if (draws < 1) throw std::invalid_argument("mc_lambda: draws must be >= 1");
  validate(spec);

  std::vector<double> lambdas(static_cast<std::size_t>(draws));
  int w = resolve_workers(workers);
  if (draws >= 2 * w) {
    // chunk whole draws across workers; each draw runs serially inside
    parallel_for(draws, w, [&](std::int64_t lo, std::int64_t hi) {
      for (std::int64_t d = lo; d < hi; ++d) {
        double lrm = mc_lrm(spec, prefs.gamma, m, n, split_seed(seed, static_cast<std::uint64_t>(d)),
                            truncation, 1);
        lambdas[static_cast<std::size_t>(d)] = lambda_from_growth(prefs, lrm);
      }
    });
  } else {
    for (int d = 0; d < draws; ++d) {
      double lrm = mc_lrm(spec, prefs.gamma, m, n, split_seed(seed, static_cast<std::uint64_t>(d)),
                          truncation, w);
      lambdas[static_cast<std::size_t>(d)] = lambda_from_growth(prefs, lrm);
    }
  }
  return detail::make_estimate(std::move(lambdas), m, n, seed, truncation);
}

std::vector<std::pair<double, MCEstimate>> truncation_sweep(const SSY& spec,
                                                            const Preferences& prefs,
                                                            std::vector<double> levels, int m,
                                                            int n, std::uint64_t seed, int draws,
                                                            int workers) {
  if (levels.empty()) throw std::invalid_argument("truncation_sweep: no levels");
  bool has_reference = std::any_of(levels.begin(), levels.end(),
                                   [](double l) { return std::isinf(l); });
  if (!has_reference) levels.push_back(kInf);

  std::vector<std::pair<double, MCEstimate>> out;
  out.reserve(levels.size());
  ModelSpec model = spec;
  for (double level : levels)
    out.emplace_back(level, mc_lambda(model, prefs, m, n, seed, level, draws, workers));
  return out;
}

}  // namespace ezstab::sim
