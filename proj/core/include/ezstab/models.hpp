#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ezstab {

// Finite-support distribution for the trend model's i.i.d. factor.
struct DiscreteDist {
  std::vector<double> support;
  std::vector<double> probs;
};

// ln(C'/C) = mu_c + x + sigma_c eps',  x' = rho x + sigma eta'
struct LognormalAR1 {
  double mu_c, rho, sigma, sigma_c;
};

// ln(C'/C) = mu(X') + sigma(X') eps' on a two-state chain.
struct MarkovSwitching {
  double mu1, mu2;
  double sigma1, sigma2;
  double q11, q22;  // stay probabilities

  double stationary_p1() const { return (1.0 - q22) / (2.0 - q11 - q22); }
};

// Long-run risk with stochastic volatility in both the persistent component
// and the growth innovation:
//   ln(C'/C) = mu_c + z + sigma_c(t) eta_c'
//   z' = rho z + sqrt(1-rho^2) sigma_z(t) eta_z'
//   sigma_i(t) = phi_i sigma_bar exp(h_i(t)),  h_i' = rho_hi h_i + sigma_hi eta_hi'
struct SSY {
  double mu_c, rho, phi_z, sigma_bar, phi_c;
  double rho_hz, sigma_hz, rho_hc, sigma_hc;
};

// C_t = tau^t X_t with X i.i.d. on finite positive support.
struct TrendIID {
  double tau;
  DiscreteDist factor;
};

using ModelSpec = std::variant<LognormalAR1, MarkovSwitching, SSY, TrendIID>;

// Throws std::invalid_argument when a parameter violates its constraint
// (persistence outside (-1,1), negative scales, bad support, ...).
void validate(const DiscreteDist& dist);
void validate(const ModelSpec& spec);

std::string model_name(const ModelSpec& spec);

// Baseline calibrations used throughout the replication tables.
LognormalAR1 bansal_yaron_calibration();   // mu_c=.0015 rho=.979 sigma=.00034 sigma_c=.0078
MarkovSwitching switching_calibration();   // mu=(.007,.0013) sigma=(.0015,.0063) q=(.93,.83)
SSY ssy_calibration();                     // posterior medians, volatility parameters as variances
TrendIID trend_calibration();              // tau=1.02, two-point factor {0.9,1.1}

}  // namespace ezstab
