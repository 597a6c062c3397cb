#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ezstab/preferences.hpp"
#include "ezstab/valuation.hpp"

namespace ezstab::solver {

enum class Status { converged, diverged, no_solution };

struct FixedPointSolution {
  Eigen::VectorXd g_star;    // last iterate; the fixed point when converged
  long iterations = 0;
  double residual = 0.0;     // final max-abs successive deviation
  Eigen::VectorXd wc_ratio;  // (1-beta)^{-1} g^(1/theta) per state
  double mean_wc = 0.0;      // pi-weighted mean of wc_ratio
  Status status = Status::diverged;
  double lambda = 0.0;       // beta r(K)^(1/theta) used by the pre-check
};

// phi(t) = (1 - beta + beta t^(1/theta))^theta on t >= 0, with the
// convention inf^a = 0 for a < 0, so phi(0) = 0 when theta < 0 and
// (1-beta)^theta when theta > 0. Monotone increasing.
double apply_phi(const Preferences& prefs, double t);

// A g = phi(K g) elementwise. Non-finite entries in K g propagate to the
// output and are treated by the solver as divergence evidence.
Eigen::VectorXd apply_A(const Preferences& prefs, const valuation::KMatrix& k,
                        const Eigen::VectorXd& g);

struct SolveOptions {
  double tol = 1e-6;          // max-abs deviation between successive iterates
  long max_iter = 1000000;
  double magnitude_cap = 1e280;
  bool force_iterate = false;  // skip the lambda pre-check (divergence demo)
  // Measure successive deviations relative to the iterate instead of
  // absolutely. Near the stability boundary the fixed point sits at extreme
  // g scales where absolute deviations go quiet long before the
  // wealth-consumption scale settles; the relative criterion stays honest
  // there.
  bool relative = false;
};

// Successive approximation g <- A g from g0 (default: ones). Declares
// no_solution without iterating when lambda = beta r(K)^(1/theta) >= 1;
// near the boundary convergence is geometric at rate ~ lambda, so max_iter
// bounds how close to lambda = 1 a solve can get.
FixedPointSolution solve_fixed_point(const Preferences& prefs, const valuation::KMatrix& k,
                                     const Eigen::VectorXd& g0, const SolveOptions& opts = {});
FixedPointSolution solve_fixed_point(const Preferences& prefs, const valuation::KMatrix& k,
                                     const SolveOptions& opts = {});

struct WcCell {
  Status status = Status::no_solution;
  double mean_wc = 0.0;
  double lambda = 0.0;
  long iterations = 0;
};

// One solve per (mu_c, psi) cell; cells are independent and run in parallel.
// Failures stay per-cell statuses, never a global abort.
std::vector<std::vector<WcCell>> wc_ratio_grid(
    double beta, double gamma, const std::vector<double>& mu_c_values,
    const std::vector<double>& psi_values,
    const std::function<valuation::KMatrix(double)>& k_builder, const SolveOptions& opts = {},
    int workers = 0);

}  // namespace ezstab::solver
