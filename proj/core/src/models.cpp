#include "ezstab/models.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ezstab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_persistence(double rho, const char* name) {
  if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (-1, 1)");
}

void check_scale(double s, const char* name) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument(std::string(name) + " must be nonnegative");
}

}  // namespace

void validate(const DiscreteDist& dist) {
  require(!dist.support.empty(), "factor distribution: empty support");
  require(dist.support.size() == dist.probs.size(),
          "factor distribution: support and probs must have equal length");
  double prev = 0.0;
  for (double x : dist.support) {
    require(x > 0.0 && std::isfinite(x), "factor distribution: support must be positive");
    require(x >= prev, "factor distribution: support must be sorted ascending");
    prev = x;
  }
  double total = std::accumulate(dist.probs.begin(), dist.probs.end(), 0.0);
  for (double p : dist.probs) require(p >= 0.0, "factor distribution: negative probability");
  require(std::abs(total - 1.0) <= 1e-12, "factor distribution: probabilities must sum to 1");
}

void validate(const ModelSpec& spec) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LognormalAR1>) {
          check_persistence(m.rho, "rho");
          check_scale(m.sigma, "sigma");
          check_scale(m.sigma_c, "sigma_c");
          require(std::isfinite(m.mu_c), "mu_c must be finite");
        } else if constexpr (std::is_same_v<T, MarkovSwitching>) {
          check_scale(m.sigma1, "sigma1");
          check_scale(m.sigma2, "sigma2");
          require(std::isfinite(m.mu1) && std::isfinite(m.mu2), "mu(i) must be finite");
          require(m.q11 > 0.0 && m.q11 < 1.0 && m.q22 > 0.0 && m.q22 < 1.0,
                  "stay probabilities q(i,i) must lie in (0, 1)");
        } else if constexpr (std::is_same_v<T, SSY>) {
          check_persistence(m.rho, "rho");
          check_persistence(m.rho_hz, "rho_hz");
          check_persistence(m.rho_hc, "rho_hc");
          check_scale(m.sigma_bar, "sigma_bar");
          check_scale(m.phi_z, "phi_z");
          check_scale(m.phi_c, "phi_c");
          check_scale(m.sigma_hz, "sigma_hz");
          check_scale(m.sigma_hc, "sigma_hc");
          require(std::isfinite(m.mu_c), "mu_c must be finite");
        } else if constexpr (std::is_same_v<T, TrendIID>) {
          require(m.tau > 0.0 && std::isfinite(m.tau), "tau must be positive");
          validate(m.factor);
        }
      },
      spec);
}

std::string model_name(const ModelSpec& spec) {
  struct Visitor {
    std::string operator()(const LognormalAR1&) const { return "lognormal_ar1"; }
    std::string operator()(const MarkovSwitching&) const { return "markov_switching"; }
    std::string operator()(const SSY&) const { return "ssy"; }
    std::string operator()(const TrendIID&) const { return "trend_iid"; }
  };
  return std::visit(Visitor{}, spec);
}

LognormalAR1 bansal_yaron_calibration() { return {0.0015, 0.979, 0.00034, 0.0078}; }

MarkovSwitching switching_calibration() { return {0.007, 0.0013, 0.0015, 0.0063, 0.93, 0.83}; }

SSY ssy_calibration() {
  // Volatility-of-volatility parameters are reported as variances; the
  // simulator wants standard deviations.
  return {0.0016, 0.987, 0.215, 0.0035, 1.0,
          0.992,  std::sqrt(0.0039), 0.991, std::sqrt(0.0096)};
}

TrendIID trend_calibration() { return {1.02, {{0.9, 1.1}, {0.5, 0.5}}}; }

}  // namespace ezstab
