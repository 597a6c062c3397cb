#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ezstab/models.hpp"
#include "ezstab/preferences.hpp"
#include "ezstab/simulate.hpp"

namespace ezstab::learning {

// One Bayes update of the belief that the hidden state is 1, given observed
// log growth z. The likelihood of z attaches to the destination state, which
// is the only reading under which the update is Bayes' rule for this model.
// Output clamped to [0, 1]; if both component densities degenerate the prior
// predictive mass x q(1,1) + (1-x) q(2,1) is returned.
double filter_update(const MarkovSwitching& params, double x_bar, double z);

// Belief-grid discretization of the learning valuation operator
//   Kbar g(x) = E_x[ e^((1-gamma) Z') g(h(x, Z')) ].
struct BeliefGridOperator {
  Eigen::VectorXd grid;  // strictly increasing, inside [delta, 1-delta]
  Eigen::MatrixXd mat;   // nonnegative
  int n_quad = 0;
  double delta = 0.0;
};

// Gauss-Hermite nodes/weights for int f(t) e^{-t^2} dt (Golub-Welsch).
void gauss_hermite(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// Quadrature over the two-component Gaussian mixture of Z' given belief x,
// with the e^((1-gamma) z) factor absorbed into each component by exponential
// tilting (exact), and g(h(x,z)) taken by linear interpolation on the grid.
BeliefGridOperator build_kbar_grid(const MarkovSwitching& params, double gamma, int n_grid,
                                   int n_quad, double delta = 1e-6);

struct LearningMC {
  sim::MCEstimate estimate;
  double mean_final_belief = 0.0;  // across paths of the last draw
};

// Monte Carlo test value under the learner's information set: consumption is
// simulated from the true chain (identical seeds give growth paths identical
// to the full-information estimator) while the belief co-evolves through
// filter_update from its stationary initial value.
LearningMC mc_lambda_learning(const MarkovSwitching& params, const Preferences& prefs, int m,
                              int n, std::uint64_t seed, int draws, int workers = 0);

}  // namespace ezstab::learning
