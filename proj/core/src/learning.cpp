#include "ezstab/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ezstab/errors.hpp"
#include "ezstab/parallel.hpp"
#include "ezstab/rng.hpp"
#include "mc_stats.hpp"
#include "path_sim.hpp"

namespace ezstab::learning {

double filter_update(const MarkovSwitching& params, double x_bar, double z) {
  if (!(x_bar >= 0.0 && x_bar <= 1.0))
    throw std::invalid_argument("filter_update: belief must lie in [0, 1]");
  double p1 = x_bar * params.q11 + (1.0 - x_bar) * (1.0 - params.q22);
  if (p1 <= 0.0) return 0.0;
  if (p1 >= 1.0) return 1.0;
  if (!(params.sigma1 > 0.0) || !(params.sigma2 > 0.0) || !std::isfinite(z))
    return p1;  // likelihood carries no usable information at this z

  // h = p1 phi1 / (p1 phi1 + (1-p1) phi2), evaluated through the log-density
  // difference so neither density is formed in linear space.
  double d1 = (z - params.mu1) / params.sigma1;
  double d2 = (z - params.mu2) / params.sigma2;
  double log_ratio = 0.5 * (d1 * d1 - d2 * d2) + std::log(params.sigma1 / params.sigma2);
  double h = p1 / (p1 + (1.0 - p1) * std::exp(log_ratio));
  return std::clamp(h, 0.0, 1.0);
}

void gauss_hermite(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  // Golub-Welsch on the symmetric Jacobi matrix of the Hermite recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double off = std::sqrt(k / 2.0);
    jac(k - 1, k) = off;
    jac(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes = es.eigenvalues();
  weights.resize(n);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int k = 0; k < n; ++k) {
    double v = es.eigenvectors()(0, k);
    weights[k] = sqrt_pi * v * v;
  }
}

BeliefGridOperator build_kbar_grid(const MarkovSwitching& params, double gamma, int n_grid,
                                   int n_quad, double delta) {
  if (n_grid < 2) throw std::invalid_argument("build_kbar_grid: n_grid must be >= 2");
  if (n_quad < 8) throw std::invalid_argument("build_kbar_grid: n_quad must be >= 8");

  BeliefGridOperator op;
  op.n_quad = n_quad;
  op.delta = delta;
  op.grid.resize(n_grid);
  for (int i = 0; i < n_grid; ++i)
    op.grid[i] = delta + (1.0 - 2.0 * delta) * i / static_cast<double>(n_grid - 1);
  op.mat = Eigen::MatrixXd::Zero(n_grid, n_grid);

  Eigen::VectorXd t_nodes, t_weights;
  gauss_hermite(n_quad, t_nodes, t_weights);
  if (!t_weights.allFinite() || !(t_weights.sum() > 0.0))
    throw numerical_error("build_kbar_grid: degenerate quadrature weights");

  const double a = 1.0 - gamma;
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  const double mu[2] = {params.mu1, params.mu2};
  const double sg[2] = {params.sigma1, params.sigma2};

  auto deposit = [&](int row, double h, double weight) {
    // linear interpolation of g(h) between the bracketing grid nodes
    int hi_idx = 1;
    while (hi_idx < n_grid - 1 && op.grid[hi_idx] < h) ++hi_idx;
    double w = (h - op.grid[hi_idx - 1]) / (op.grid[hi_idx] - op.grid[hi_idx - 1]);
    w = std::clamp(w, 0.0, 1.0);
    op.mat(row, hi_idx - 1) += weight * (1.0 - w);
    op.mat(row, hi_idx) += weight * w;
  };

  for (int i = 0; i < n_grid; ++i) {
    double x = op.grid[i];
    double p1 = x * params.q11 + (1.0 - x) * (1.0 - params.q22);
    double comp_prob[2] = {p1, 1.0 - p1};
    for (int comp = 0; comp < 2; ++comp) {
      // Exponential tilting: e^{a z} N(z; mu, s^2) = moment * N(z; mu + a s^2, s^2),
      // so the growth factor integrates exactly and quadrature only sees g(h(x, .)).
      double moment = std::exp(a * mu[comp] + 0.5 * a * a * sg[comp] * sg[comp]);
      double scale = comp_prob[comp] * moment;
      if (sg[comp] == 0.0) {
        deposit(i, filter_update(params, x, mu[comp]), scale);
        continue;
      }
      double tilted_mu = mu[comp] + a * sg[comp] * sg[comp];
      for (int k = 0; k < n_quad; ++k) {
        double z = tilted_mu + std::numbers::sqrt2 * sg[comp] * t_nodes[k];
        deposit(i, filter_update(params, x, z), scale * t_weights[k] * inv_sqrt_pi);
      }
    }
  }
  return op;
}

LearningMC mc_lambda_learning(const MarkovSwitching& params, const Preferences& prefs, int m,
                              int n, std::uint64_t seed, int draws, int workers) {
  if (m < 1 || n < 1 || draws < 1)
    throw std::invalid_argument("mc_lambda_learning: m, n, draws must be >= 1");

  const double a = 1.0 - prefs.gamma;
  const double clip = std::numeric_limits<double>::infinity();
  const double p1_stat = params.stationary_p1();
  std::vector<double> lambdas(static_cast<std::size_t>(draws));
  std::vector<double> final_belief(static_cast<std::size_t>(m), 0.0);

  for (int d = 0; d < draws; ++d) {
    std::uint64_t draw_seed = split_seed(seed, static_cast<std::uint64_t>(d));
    std::vector<double> exps(static_cast<std::size_t>(m));
    bool last_draw = d == draws - 1;
    parallel_for(m, workers, [&](std::int64_t lo, std::int64_t hi) {
      for (std::int64_t j = lo; j < hi; ++j) {
        // Same seed stream as the full-information estimator: the belief does
        // not alter the data-generating path, only rides along it.
        Rng rng(split_seed(draw_seed, static_cast<std::uint64_t>(j)));
        sim::detail::PathSim sim(params);
        sim.init(rng, clip);
        double belief = p1_stat;
        double sum = 0.0;
        for (int t = 0; t < n; ++t) {
          double growth = sim.step(rng, clip);
          sum += growth;
          belief = filter_update(params, belief, growth);
        }
        exps[static_cast<std::size_t>(j)] = a * sum;
        if (last_draw) final_belief[static_cast<std::size_t>(j)] = belief;
      }
    });
    double lrm = std::exp(sim::detail::lse_mean_log(exps) / (a * static_cast<double>(n)));
    lambdas[static_cast<std::size_t>(d)] = lambda_from_growth(prefs, lrm);
  }

  LearningMC out;
  out.estimate = sim::detail::make_estimate(std::move(lambdas), m, n, seed, clip);
  double b = 0.0;
  for (double v : final_belief) b += v;
  out.mean_final_belief = b / static_cast<double>(m);
  return out;
}

}  // namespace ezstab::learning
