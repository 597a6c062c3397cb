#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ezstab/models.hpp"
#include "ezstab/preferences.hpp"

namespace ezstab::sim {

// Ensemble statistics for a Monte Carlo test-value estimate.
struct MCEstimate {
  double value = 0.0;  // ensemble mean across draws
  int n = 0;           // horizon
  int m = 0;           // paths per draw
  int draws = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample std across draws (0 when draws == 1)
  double min = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, max = 0.0;
  std::uint64_t seed = 0;
  double truncation = 0.0;
};

// n log consumption growth values with state variables initialized from
// their exact stationary laws. Every standard normal draw (including the
// initialization draws) is clipped to [-truncation, truncation].
// Deterministic given seed.
std::vector<double> simulate_growth_path(const ModelSpec& spec, int n, std::uint64_t seed,
                                         double truncation);

// Monte Carlo estimate of the risk-adjusted long-run mean growth rate:
//   { (1/m) sum_j (C_n/C_0)_j^(1-gamma) }^(1/((1-gamma) n))
// Per-path powers and the cross-path mean are accumulated in log space.
// Path j of the draw uses the derived seed split_seed(seed, j); the reduction
// order is fixed by path index, so results do not depend on worker count.
double mc_lrm(const ModelSpec& spec, double gamma, int m, int n, std::uint64_t seed,
              double truncation, int workers = 0);

// Runs mc_lrm `draws` times on split seeds, maps each draw through
// lambda_from_growth and assembles the ensemble statistics.
MCEstimate mc_lambda(const ModelSpec& spec, const Preferences& prefs, int m, int n,
                     std::uint64_t seed, double truncation, int draws, int workers = 0);

// One mc_lambda run per clip level, all sharing the base seed, plus an
// untruncated reference entry (level = inf) appended at the end.
std::vector<std::pair<double, MCEstimate>> truncation_sweep(const SSY& spec,
                                                            const Preferences& prefs,
                                                            std::vector<double> levels, int m,
                                                            int n, std::uint64_t seed, int draws,
                                                            int workers = 0);

}  // namespace ezstab::sim
