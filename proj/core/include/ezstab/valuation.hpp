#pragma once

#include <Eigen/Dense>

#include "ezstab/markov.hpp"
#include "ezstab/models.hpp"

namespace ezstab::valuation {

// Valuation matrix K over a chain's states. Entries are the conditional
// moments exp((1-gamma) * growth kernel) times transition probabilities,
// so K >= 0 with the same zero pattern as the transition matrix.
struct KMatrix {
  Eigen::MatrixXd mat;
  markov::MarkovChain chain;
  double gamma = 0.0;
};

// K for the lognormal-AR(1) model on a discretized x-grid. The growth shock
// integral is the exact lognormal moment; the exponent uses the source state:
//   K[i][j] = exp((1-gamma)(mu_c + x_i) + (1-gamma)^2 sigma_c^2 / 2) trans[i][j]
KMatrix build_k_lognormal(const markov::MarkovChain& chain, double mu_c, double sigma_c,
                          double gamma);

// 2x2 K for Markov switching. Growth depends on the destination state:
//   K[i][j] = exp((1-gamma) mu(j) + (1-gamma)^2 sigma(j)^2 / 2) q(i, j)
KMatrix build_k_switching(const MarkovSwitching& params, double gamma);

struct SpectralResult {
  double radius = 0.0;
  Eigen::VectorXd perron;  // strictly positive, normalized to max = 1
  long iterations = 0;
};

// Perron root of a nonnegative primitive matrix by normalized power
// iteration; converged when the radius estimate moves < tol relative.
SpectralResult spectral_radius(const Eigen::MatrixXd& mat, double tol = 1e-13,
                               long max_iter = 2000000);
inline SpectralResult spectral_radius(const KMatrix& k, double tol = 1e-13,
                                      long max_iter = 2000000) {
  return spectral_radius(k.mat, tol, max_iter);
}

// n-th term of the Gelfand sequence (sum_x (K^n 1)(x) pi(x))^(1/n), evaluated
// with log-space matrix-vector products so large |1-gamma| exponents cannot
// overflow. Converges to the spectral radius as n grows.
double gelfand_growth(const KMatrix& k, int n);

// Closed form for the lognormal-AR(1) model:
//   exp(mu_c + (1-gamma)(sigma_c^2 + sigma^2/(1-rho)^2)/2)
double lrm_lognormal_analytic(double mu_c, double sigma_c, double rho, double sigma,
                              double gamma);

// Finite-n variance of cumulative log growth for the same model; the n -> inf
// limit of s2(n)/n is the long-run variance entering the closed form above.
double lognormal_s2n(double rho, double sigma, double sigma_c, long n);

// Geometric-trend model: the long-run rate equals the trend factor itself,
// independent of gamma and of the i.i.d. factor's distribution.
double lrm_trend_analytic(double tau);

}  // namespace ezstab::valuation
