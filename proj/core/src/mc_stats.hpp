#pragma once

// Internal helpers for the Monte Carlo estimators: fixed-order log-sum-exp
// and ensemble statistics over replication draws.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ezstab/simulate.hpp"

namespace ezstab::sim::detail {

// log((1/m) sum_j exp(e_j)) with the reduction order fixed by index.
inline double lse_mean_log(const std::vector<double>& exps) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double e : exps) hi = std::max(hi, e);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double e : exps) acc += std::exp(e - hi);
  return hi + std::log(acc) - std::log(static_cast<double>(exps.size()));
}

inline double quantile_sorted(const std::vector<double>& x, double p) {
  if (x.size() == 1) return x[0];
  double h = p * static_cast<double>(x.size() - 1);
  auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= x.size()) return x.back();
  return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

inline MCEstimate make_estimate(std::vector<double> draws_values, int m, int n,
                                std::uint64_t seed, double truncation) {
  MCEstimate est;
  est.n = n;
  est.m = m;
  est.draws = static_cast<int>(draws_values.size());
  est.seed = seed;
  est.truncation = truncation;

  double mean = 0.0;
  for (double v : draws_values) mean += v;
  mean /= static_cast<double>(draws_values.size());
  double ss = 0.0;
  for (double v : draws_values) ss += (v - mean) * (v - mean);
  est.mean = est.value = mean;
  est.stddev = draws_values.size() > 1
                   ? std::sqrt(ss / static_cast<double>(draws_values.size() - 1))
                   : 0.0;

  std::sort(draws_values.begin(), draws_values.end());
  est.min = draws_values.front();
  est.max = draws_values.back();
  est.q25 = quantile_sorted(draws_values, 0.25);
  est.q50 = quantile_sorted(draws_values, 0.50);
  est.q75 = quantile_sorted(draws_values, 0.75);
  return est;
}

}  // namespace ezstab::sim::detail
