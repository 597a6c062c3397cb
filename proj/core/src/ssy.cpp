#include "ezstab/ssy.hpp"

#include <cmath>
#include <stdexcept>

#include "ezstab/errors.hpp"

namespace ezstab::ssy {

namespace {

// Degenerate single-state chain at location 0 (for H/I/J = 1 studies).
markov::MarkovChain unit_chain() {
  markov::MarkovChain c;
  c.trans = Eigen::MatrixXd::Ones(1, 1);
  c.states = Eigen::MatrixXd::Zero(1, 1);
  c.pi = Eigen::VectorXd::Ones(1);
  return c;
}

markov::MarkovChain chain_for(int n, double rho, double sigma) {
  return n == 1 ? unit_chain() : markov::rouwenhorst(n, rho, sigma);
}

int nearest_index(const Eigen::VectorXd& grid, double value) {
  int best = 0;
  double best_dist = std::abs(grid[0] - value);
  for (int j = 1; j < grid.size(); ++j) {
    double d = std::abs(grid[j] - value);
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

SSYGrid build_ssy_grid(const SSY& params, int H, int I, int J, ZMapping mapping) {
  if (H < 1 || I < 1 || J < 1) throw std::invalid_argument("build_ssy_grid: grid sizes must be >= 1");
  long total = static_cast<long>(H) * I * J;
  if (total > 1000000) throw std::invalid_argument("build_ssy_grid: state count exceeds cap");

  markov::MarkovChain hc = chain_for(H, params.rho_hc, params.sigma_hc);
  markov::MarkovChain hz = chain_for(I, params.rho_hz, params.sigma_hz);

  SSYGrid grid;
  grid.H = H;
  grid.I = I;
  grid.J = J;
  grid.mapping = mapping;
  grid.sigma_c_levels = (params.phi_c * params.sigma_bar * hc.states.col(0).array().exp()).matrix();
  grid.sigma_z_levels = (params.phi_z * params.sigma_bar * hz.states.col(0).array().exp()).matrix();

  // One z grid per sigma_z level; the transition probabilities depend only on
  // rho, so every level shares the same z transition matrix.
  markov::MarkovChain z_proto = chain_for(J, params.rho, 1.0);
  const double innov_base = std::sqrt(1.0 - params.rho * params.rho);
  grid.z_grids.reserve(static_cast<std::size_t>(I));
  for (int b = 0; b < I; ++b) {
    markov::MarkovChain zc = chain_for(J, params.rho, innov_base * grid.sigma_z_levels[b]);
    grid.z_grids.push_back(zc.states.col(0));
  }

  const int n = H * I * J;
  Eigen::MatrixXd trans(n, n);
  Eigen::MatrixXd states(n, 3);  // (sigma_c, sigma_z, z)
  auto idx = [&](int a, int b, int c) { return (a * I + b) * J + c; };

  for (int a = 0; a < H; ++a)
    for (int b = 0; b < I; ++b)
      for (int c = 0; c < J; ++c) {
        int s = idx(a, b, c);
        states(s, 0) = grid.sigma_c_levels[a];
        states(s, 1) = grid.sigma_z_levels[b];
        states(s, 2) = grid.z_grids[static_cast<std::size_t>(b)][c];
        for (int a2 = 0; a2 < H; ++a2)
          for (int b2 = 0; b2 < I; ++b2) {
            // z index carried to the destination level's grid
            int c_from = c;
            if (mapping == ZMapping::nearest_value && b2 != b)
              c_from = nearest_index(grid.z_grids[static_cast<std::size_t>(b2)],
                                     grid.z_grids[static_cast<std::size_t>(b)][c]);
            double base = hc.trans(a, a2) * hz.trans(b, b2);
            for (int c2 = 0; c2 < J; ++c2)
              trans(s, idx(a2, b2, c2)) = base * z_proto.trans(c_from, c2);
          }
      }

  markov::MarkovChain composite;
  composite.trans = std::move(trans);
  composite.states = std::move(states);
  composite.pi = markov::stationary_distribution(composite.trans);
  grid.chain = std::move(composite);
  return grid;
}

valuation::KMatrix build_k_ssy(const SSYGrid& grid, double mu_c, double gamma) {
  const double a = 1.0 - gamma;
  valuation::KMatrix k;
  k.chain = grid.chain;
  k.gamma = gamma;
  k.mat = grid.chain.trans;
  for (int s = 0; s < grid.chain.size(); ++s) {
    double sigma_c = grid.chain.states(s, 0);
    double z = grid.chain.states(s, 2);
    double factor = std::exp(a * (mu_c + z) + 0.5 * a * a * sigma_c * sigma_c);
    if (!std::isfinite(factor))
      throw numerical_error("build_k_ssy: non-finite growth moment at state " + std::to_string(s));
    k.mat.row(s) *= factor;
  }
  return k;
}

}  // namespace ezstab::ssy
