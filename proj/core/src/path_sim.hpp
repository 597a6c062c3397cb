#pragma once

// Internal per-model path simulators shared by the Monte Carlo estimators and
// the learning module. Each simulator draws its stationary initial state in
// init() and returns one log consumption growth per step(); the draw order is
// fixed so identically seeded runs consume identical randomness.

#include <cmath>
#include <vector>

#include "ezstab/models.hpp"
#include "ezstab/rng.hpp"

namespace ezstab::sim::detail {

template <class Model>
struct PathSim;

template <>
struct PathSim<LognormalAR1> {
  const LognormalAR1& m;
  double sigma_x;  // stationary std of the persistent component
  double x = 0.0;

  explicit PathSim(const LognormalAR1& model)
      : m(model), sigma_x(model.sigma / std::sqrt(1.0 - model.rho * model.rho)) {}

  void init(Rng& rng, double clip) { x = sigma_x * rng.normal_clipped(clip); }

  double step(Rng& rng, double clip) {
    double growth = m.mu_c + x + m.sigma_c * rng.normal_clipped(clip);
    x = m.rho * x + m.sigma * rng.normal_clipped(clip);
    return growth;
  }
};

template <>
struct PathSim<MarkovSwitching> {
  const MarkovSwitching& m;
  int state = 0;  // 0-based

  explicit PathSim(const MarkovSwitching& model) : m(model) {}

  void init(Rng& rng, double /*clip*/) { state = rng.uniform() < m.stationary_p1() ? 0 : 1; }

  double step(Rng& rng, double clip) {
    double stay = state == 0 ? m.q11 : m.q22;
    if (rng.uniform() >= stay) state = 1 - state;
    // growth loads on the destination state
    double mu = state == 0 ? m.mu1 : m.mu2;
    double sigma = state == 0 ? m.sigma1 : m.sigma2;
    return mu + sigma * rng.normal_clipped(clip);
  }
};

template <>
struct PathSim<SSY> {
  const SSY& m;
  double root_1m_rho2;
  double hc_stat, hz_stat;  // stationary stds of the volatility states
  double h_c = 0.0, h_z = 0.0, z = 0.0;

  explicit PathSim(const SSY& model)
      : m(model),
        root_1m_rho2(std::sqrt(1.0 - model.rho * model.rho)),
        hc_stat(model.sigma_hc / std::sqrt(1.0 - model.rho_hc * model.rho_hc)),
        hz_stat(model.sigma_hz / std::sqrt(1.0 - model.rho_hz * model.rho_hz)) {}

  void init(Rng& rng, double clip) {
    h_c = hc_stat * rng.normal_clipped(clip);
    h_z = hz_stat * rng.normal_clipped(clip);
    double sigma_z0 = m.phi_z * m.sigma_bar * std::exp(h_z);
    z = sigma_z0 * rng.normal_clipped(clip);
  }

  double step(Rng& rng, double clip) {
    double sigma_c = m.phi_c * m.sigma_bar * std::exp(h_c);
    double sigma_z = m.phi_z * m.sigma_bar * std::exp(h_z);
    double growth = m.mu_c + z + sigma_c * rng.normal_clipped(clip);
    z = m.rho * z + root_1m_rho2 * sigma_z * rng.normal_clipped(clip);
    h_c = m.rho_hc * h_c + m.sigma_hc * rng.normal_clipped(clip);
    h_z = m.rho_hz * h_z + m.sigma_hz * rng.normal_clipped(clip);
    return growth;
  }
};

template <>
struct PathSim<TrendIID> {
  const TrendIID& m;
  std::vector<double> cdf;
  double log_tau, log_x = 0.0;

  explicit PathSim(const TrendIID& model) : m(model), log_tau(std::log(model.tau)) {
    cdf.reserve(m.factor.probs.size());
    double acc = 0.0;
    for (double p : m.factor.probs) cdf.push_back(acc += p);
  }

  double draw_log_factor(Rng& rng) {
    double u = rng.uniform();
    for (std::size_t j = 0; j < cdf.size(); ++j)
      if (u < cdf[j]) return std::log(m.factor.support[j]);
    return std::log(m.factor.support.back());
  }

  void init(Rng& rng, double /*clip*/) { log_x = draw_log_factor(rng); }

  double step(Rng& rng, double /*clip*/) {
    double next = draw_log_factor(rng);
    double growth = log_tau + next - log_x;
    log_x = next;
    return growth;
  }
};

// Sum of n log growths along one freshly initialized path.
template <class Model>
double log_growth_sum(const Model& m, int n, Rng& rng, double clip) {
  PathSim<Model> sim(m);
  sim.init(rng, clip);
  double total = 0.0;
  for (int t = 0; t < n; ++t) total += sim.step(rng, clip);
  return total;
}

}  // namespace ezstab::sim::detail
