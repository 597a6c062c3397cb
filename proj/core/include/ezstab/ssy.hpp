#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ezstab/markov.hpp"
#include "ezstab/models.hpp"
#include "ezstab/valuation.hpp"

namespace ezstab::ssy {

// How a z index is carried across volatility levels when sigma_z jumps.
// positional keeps the same ordinal grid point on the new grid (the same
// normalized AR(1) location); nearest_value remaps by closest z value and is
// kept as a sensitivity diagnostic.
enum class ZMapping { positional, nearest_value };

// Discretized long-run-risk state space: H volatility levels for sigma_c,
// I for sigma_z, and one J-point z grid per sigma_z level. Composite chain
// labels are rows (sigma_c, sigma_z, z).
struct SSYGrid {
  int H = 0, I = 0, J = 0;
  markov::MarkovChain chain;
  Eigen::VectorXd sigma_c_levels;           // phi_c sigma_bar exp(h_c grid)
  Eigen::VectorXd sigma_z_levels;           // phi_z sigma_bar exp(h_z grid)
  std::vector<Eigen::VectorXd> z_grids;     // one per sigma_z level
  ZMapping mapping = ZMapping::positional;
};

// Rouwenhorst on h_c and h_z, exponentiation to volatility levels, then a
// Rouwenhorst z grid per sigma_z level with innovation scale
// sqrt(1-rho^2) sigma_z. The composite transition moves all three
// coordinates jointly in one step; the z transition is taken on the
// destination level's grid.
SSYGrid build_ssy_grid(const SSY& params, int H, int I, int J,
                       ZMapping mapping = ZMapping::positional);

// K over the composite states; the exponent uses the current state:
//   K[s][s'] = exp((1-gamma)(mu_c + z(s)) + (1-gamma)^2 sigma_c(s)^2 / 2) trans[s][s']
valuation::KMatrix build_k_ssy(const SSYGrid& grid, double mu_c, double gamma);

}  // namespace ezstab::ssy
