#pragma once

#include <cmath>
#include <stdexcept>

namespace ezstab {

// Recursive-preference parameters. theta is derived once at construction so
// every consumer sees the same rounding of the quotient.
struct Preferences {
  double beta;   // time discount factor, in (0, 1)
  double gamma;  // risk aversion, != 1
  double psi;    // elasticity of intertemporal substitution, > 0, != 1
  double theta;  // (1 - gamma) / (1 - 1/psi)

  Preferences(double beta_, double gamma_, double psi_)
      : beta(beta_), gamma(gamma_), psi(psi_) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
    if (!(psi > 0.0)) throw std::invalid_argument("psi must be positive");
    if (gamma == 1.0) throw std::invalid_argument("gamma = 1 is excluded");
    if (psi == 1.0) throw std::invalid_argument("psi = 1 is excluded");
    if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(psi))
      throw std::invalid_argument("preference parameters must be finite");
    theta = (1.0 - gamma) / (1.0 - 1.0 / psi);
  }
};

// Test value from risk-adjusted long-run mean growth: beta * lrm^(1 - 1/psi).
inline double lambda_from_growth(const Preferences& prefs, double lrm) {
  if (!(lrm > 0.0) || !std::isfinite(lrm))
    throw std::domain_error("lambda_from_growth: lrm must be positive and finite");
  return prefs.beta * std::pow(lrm, 1.0 - 1.0 / prefs.psi);
}

// Same test value from the spectral radius of the valuation matrix:
// beta * r(K)^(1/theta). Agrees with lambda_from_growth(prefs, r^(1/(1-gamma))).
inline double lambda_from_spectral_radius(const Preferences& prefs, double r_k) {
  if (!(r_k > 0.0) || !std::isfinite(r_k))
    throw std::domain_error("lambda_from_spectral_radius: r(K) must be positive and finite");
  return prefs.beta * std::pow(r_k, 1.0 / prefs.theta);
}

}  // namespace ezstab
