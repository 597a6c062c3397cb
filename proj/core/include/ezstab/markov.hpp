#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace ezstab::markov {

// Finite-state chain. `states` holds one label row per state; scalar chains
// use a single column, product chains stack the component labels.
struct MarkovChain {
  Eigen::MatrixXd states;
  Eigen::MatrixXd trans;  // row-stochastic
  Eigen::VectorXd pi;     // stationary distribution

  int size() const { return static_cast<int>(trans.rows()); }
};

// Unique left fixed vector of a row-stochastic primitive matrix by power
// iteration on the transpose (successive max-norm deviation < tol).
// Throws numerical_error on the iteration cap or when the chain is not
// primitive (distinct starting vectors disagree, or the limit has zeros).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& trans, double tol = 1e-13,
                                        long max_iter = 500000);

// AR(1) discretization on n equally spaced points spanning +-sigma_y*sqrt(n-1)
// where sigma_y is the unconditional standard deviation. Matches mean,
// variance and lag-1 autocorrelation of the continuous process exactly.
MarkovChain rouwenhorst(int n_states, double rho, double sigma);

// Index path of length n+1. X0 from pi unless a fixed start is given; steps
// by inverse CDF over the current row. Deterministic given seed.
std::vector<int> simulate_indices(const MarkovChain& chain, int n, std::uint64_t seed,
                                  std::optional<int> fixed_init = std::nullopt);

// Independent coupling: Cartesian state labels, transition = elementwise
// product, stationary distribution recomputed on the product matrix.
// Guards against state-count blowup (default cap 1e6).
MarkovChain product_independent(const std::vector<MarkovChain>& components,
                                long max_states = 1000000);

}  // namespace ezstab::markov
