#include "ezstab/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "ezstab/parallel.hpp"

namespace ezstab::solver {

double apply_phi(const Preferences& prefs, double t) {
  if (!(t >= 0.0)) throw std::domain_error("apply_phi: t must be nonnegative");
  if (t == 0.0)
    return prefs.theta < 0.0 ? 0.0 : std::pow(1.0 - prefs.beta, prefs.theta);
  // t^(1/theta) may overflow to inf for tiny t and theta < 0; IEEE pow then
  // gives inf^theta = 0, which is exactly the required convention.
  double inner = 1.0 - prefs.beta + prefs.beta * std::pow(t, 1.0 / prefs.theta);
  return std::pow(inner, prefs.theta);
}

Eigen::VectorXd apply_A(const Preferences& prefs, const valuation::KMatrix& k,
                        const Eigen::VectorXd& g) {
  if (g.size() != k.mat.rows()) throw std::invalid_argument("apply_A: dimension mismatch");
  Eigen::VectorXd kg = k.mat * g;
  Eigen::VectorXd out(kg.size());
  for (Eigen::Index i = 0; i < kg.size(); ++i)
    out[i] = kg[i] >= 0.0 ? apply_phi(prefs, kg[i])
                          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

void fill_wc(const Preferences& prefs, const valuation::KMatrix& k, FixedPointSolution& sol) {
  if (sol.g_star.size() == 0) return;
  sol.wc_ratio = (sol.g_star.array().pow(1.0 / prefs.theta) / (1.0 - prefs.beta)).matrix();
  if (k.chain.pi.size() == sol.wc_ratio.size())
    sol.mean_wc = k.chain.pi.dot(sol.wc_ratio);
}

}  // namespace

FixedPointSolution solve_fixed_point(const Preferences& prefs, const valuation::KMatrix& k,
                                     const Eigen::VectorXd& g0, const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_fixed_point: tol must be positive");
  if (g0.size() != k.mat.rows() || (g0.array() <= 0.0).any())
    throw std::invalid_argument("solve_fixed_point: g0 must be strictly positive and match K");

  FixedPointSolution sol;
  sol.lambda = lambda_from_spectral_radius(prefs, valuation::spectral_radius(k).radius);

  if (!opts.force_iterate && sol.lambda >= 1.0) {
    sol.status = Status::no_solution;
    return sol;
  }

  Eigen::VectorXd g = g0;
  for (long it = 1; it <= opts.max_iter; ++it) {
    Eigen::VectorXd next = apply_A(prefs, k, g);
    bool finite = next.allFinite();
    if (!finite || next.maxCoeff() > opts.magnitude_cap || next.minCoeff() <= 0.0) {
      sol.status = Status::diverged;
      sol.iterations = it;
      sol.g_star = finite ? next : g;
      fill_wc(prefs, k, sol);
      return sol;
    }
    sol.residual = opts.relative
                       ? ((next - g).cwiseAbs().array() / g.cwiseAbs().array()).maxCoeff()
                       : (next - g).cwiseAbs().maxCoeff();
    g = std::move(next);
    if (sol.residual < opts.tol) {
      sol.status = Status::converged;
      sol.iterations = it;
      sol.g_star = std::move(g);
      fill_wc(prefs, k, sol);
      return sol;
    }
  }
  sol.status = Status::diverged;
  sol.iterations = opts.max_iter;
  sol.g_star = std::move(g);
  fill_wc(prefs, k, sol);
  return sol;
}

FixedPointSolution solve_fixed_point(const Preferences& prefs, const valuation::KMatrix& k,
                                     const SolveOptions& opts) {
  return solve_fixed_point(prefs, k, Eigen::VectorXd::Ones(k.mat.rows()), opts);
}

std::vector<std::vector<WcCell>> wc_ratio_grid(
    double beta, double gamma, const std::vector<double>& mu_c_values,
    const std::vector<double>& psi_values,
    const std::function<valuation::KMatrix(double)>& k_builder, const SolveOptions& opts,
    int workers) {
  if (mu_c_values.empty() || psi_values.empty())
    throw std::invalid_argument("wc_ratio_grid: empty grid");

  // Builders may not be thread safe; materialize every K up front.
  std::vector<valuation::KMatrix> ks;
  ks.reserve(mu_c_values.size());
  for (double mu_c : mu_c_values) ks.push_back(k_builder(mu_c));

  const std::int64_t n_rows = static_cast<std::int64_t>(mu_c_values.size());
  const std::int64_t n_cols = static_cast<std::int64_t>(psi_values.size());
  std::vector<std::vector<WcCell>> table(mu_c_values.size(),
                                         std::vector<WcCell>(psi_values.size()));

  parallel_for(n_rows * n_cols, workers, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t cell = lo; cell < hi; ++cell) {
      auto r = static_cast<std::size_t>(cell / n_cols);
      auto c = static_cast<std::size_t>(cell % n_cols);
      WcCell& out = table[r][c];
      try {
        Preferences prefs(beta, gamma, psi_values[c]);
        FixedPointSolution sol = solve_fixed_point(prefs, ks[r], opts);
        out.status = sol.status;
        out.mean_wc = sol.mean_wc;
        out.lambda = sol.lambda;
        out.iterations = sol.iterations;
      } catch (const std::exception&) {
        out.status = Status::diverged;
        out.mean_wc = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
  return table;
}

}  // namespace ezstab::solver
