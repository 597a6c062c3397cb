#include "ezstab/markov.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ezstab/errors.hpp"
#include "ezstab/rng.hpp"

namespace ezstab::markov {

namespace {

Eigen::VectorXd power_iterate_left(const Eigen::MatrixXd& trans, Eigen::VectorXd pi, double tol,
                                   long max_iter, double& out_residual) {
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd next = trans.transpose() * pi;
    next /= next.sum();
    double dev = (next - pi).cwiseAbs().maxCoeff();
    pi = next;
    if (dev < tol) {
      out_residual = dev;
      return pi;
    }
    out_residual = dev;
  }
  std::ostringstream msg;
  msg << "stationary_distribution: no convergence after " << max_iter
      << " iterations, residual " << out_residual;
  throw numerical_error(msg.str());
}

}  // namespace

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& trans, double tol, long max_iter) {
  const auto n = trans.rows();
  if (n == 0 || trans.cols() != n) throw std::invalid_argument("transition matrix must be square");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(trans.row(i).sum() - 1.0) > 1e-12)
      throw std::invalid_argument("transition matrix rows must sum to 1");
    if ((trans.row(i).array() < 0.0).any())
      throw std::invalid_argument("transition matrix must be nonnegative");
  }

  double res_a = 0.0, res_b = 0.0;
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd skewed(n);
  for (Eigen::Index i = 0; i < n; ++i) skewed[i] = static_cast<double>(i + 1);
  skewed /= skewed.sum();

  Eigen::VectorXd pi_a = power_iterate_left(trans, uniform, tol, max_iter, res_a);
  Eigen::VectorXd pi_b = power_iterate_left(trans, skewed, tol, max_iter, res_b);

  double gap = (pi_a - pi_b).cwiseAbs().maxCoeff();
  if (gap > 1e-8) {
    std::ostringstream msg;
    msg << "stationary_distribution: chain is not primitive (limits from two starts differ by "
        << gap << ")";
    throw numerical_error(msg.str());
  }
  if ((pi_a.array() <= 0.0).any())
    throw numerical_error(
        "stationary_distribution: chain is not primitive (stationary vector has zero mass)");
  return pi_a;
}

MarkovChain rouwenhorst(int n_states, double rho, double sigma) {
  if (n_states < 2) throw std::invalid_argument("rouwenhorst: need at least 2 states");
  if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("rouwenhorst: |rho| must be < 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("rouwenhorst: sigma must be nonnegative");

  const double p = (1.0 + rho) / 2.0;
  Eigen::MatrixXd theta(2, 2);
  theta << p, 1.0 - p, 1.0 - p, p;

  for (int k = 3; k <= n_states; ++k) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, k);
    next.topLeftCorner(k - 1, k - 1) += p * theta;
    next.topRightCorner(k - 1, k - 1) += (1.0 - p) * theta;
    next.bottomLeftCorner(k - 1, k - 1) += (1.0 - p) * theta;
    next.bottomRightCorner(k - 1, k - 1) += p * theta;
    next.block(1, 0, k - 2, k) /= 2.0;  // interior rows received two embeddings
    theta = std::move(next);
  }

  const double sigma_y = sigma / std::sqrt(1.0 - rho * rho);
  const double ybar = sigma_y * std::sqrt(static_cast<double>(n_states - 1));

  MarkovChain chain;
  chain.trans = std::move(theta);
  chain.states.resize(n_states, 1);
  for (int i = 0; i < n_states; ++i)
    chain.states(i, 0) = -ybar + 2.0 * ybar * i / static_cast<double>(n_states - 1);
  chain.pi = stationary_distribution(chain.trans);
  return chain;
}

std::vector<int> simulate_indices(const MarkovChain& chain, int n, std::uint64_t seed,
                                  std::optional<int> fixed_init) {
  if (n < 1) throw std::invalid_argument("simulate_indices: n must be >= 1");
  const int size = chain.size();
  if (fixed_init && (*fixed_init < 0 || *fixed_init >= size))
    throw std::invalid_argument("simulate_indices: initial index out of range");

  // Precompute row CDFs (and the stationary CDF for the initial draw).
  Eigen::MatrixXd row_cdf(size, size);
  for (int i = 0; i < size; ++i) {
    double acc = 0.0;
    for (int j = 0; j < size; ++j) {
      acc += chain.trans(i, j);
      row_cdf(i, j) = acc;
    }
  }
  Eigen::VectorXd pi_cdf(size);
  {
    double acc = 0.0;
    for (int j = 0; j < size; ++j) {
      acc += chain.pi[j];
      pi_cdf[j] = acc;
    }
  }
  auto draw = [size](const auto& cdf, double u) {
    for (int j = 0; j < size; ++j)
      if (u < cdf[j]) return j;
    return size - 1;
  };

  Rng rng(seed);
  std::vector<int> path(static_cast<std::size_t>(n) + 1);
  path[0] = fixed_init ? *fixed_init : draw(pi_cdf, rng.uniform());
  for (int t = 1; t <= n; ++t) path[t] = draw(row_cdf.row(path[t - 1]), rng.uniform());
  return path;
}

MarkovChain product_independent(const std::vector<MarkovChain>& components, long max_states) {
  if (components.empty()) throw std::invalid_argument("product_independent: no components");

  long total = 1;
  int label_cols = 0;
  for (const auto& c : components) {
    total *= c.size();
    label_cols += static_cast<int>(c.states.cols());
    if (total > max_states)
      throw std::invalid_argument("product_independent: product state count exceeds cap");
  }

  MarkovChain prod;
  prod.trans = Eigen::MatrixXd::Ones(1, 1);
  prod.states = Eigen::MatrixXd::Zero(1, 0);
  for (const auto& c : components) {
    const long n_a = prod.trans.rows(), n_b = c.size();
    Eigen::MatrixXd trans(n_a * n_b, n_a * n_b);
    for (long ia = 0; ia < n_a; ++ia)
      for (long ib = 0; ib < n_b; ++ib)
        for (long ja = 0; ja < n_a; ++ja)
          for (long jb = 0; jb < n_b; ++jb)
            trans(ia * n_b + ib, ja * n_b + jb) = prod.trans(ia, ja) * c.trans(ib, jb);

    Eigen::MatrixXd states(n_a * n_b, prod.states.cols() + c.states.cols());
    for (long ia = 0; ia < n_a; ++ia)
      for (long ib = 0; ib < n_b; ++ib) {
        states.row(ia * n_b + ib) << prod.states.row(ia), c.states.row(ib);
      }
    prod.trans = std::move(trans);
    prod.states = std::move(states);
  }
  prod.pi = stationary_distribution(prod.trans);
  return prod;
}

}  // namespace ezstab::markov
