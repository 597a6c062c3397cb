#include "ezstab/valuation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ezstab/errors.hpp"

namespace ezstab::valuation {

namespace {

void check_entries_finite(const Eigen::MatrixXd& mat, const char* where) {
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j)
      if (!std::isfinite(mat(i, j))) {
        std::ostringstream msg;
        msg << where << ": non-finite entry at state (" << i << ", " << j << ")";
        throw numerical_error(msg.str());
      }
}

double logsumexp(const Eigen::ArrayXd& v) {
  double hi = v.maxCoeff();
  if (!std::isfinite(hi)) return hi;  // all -inf stays -inf
  return hi + std::log((v - hi).exp().sum());
}

}  // namespace

KMatrix build_k_lognormal(const markov::MarkovChain& chain, double mu_c, double sigma_c,
                          double gamma) {
  if (chain.states.cols() != 1)
    throw std::invalid_argument("build_k_lognormal: chain must have scalar states");
  const double a = 1.0 - gamma;
  const double moment = 0.5 * a * a * sigma_c * sigma_c;

  KMatrix k;
  k.chain = chain;
  k.gamma = gamma;
  k.mat = chain.trans;
  for (int i = 0; i < chain.size(); ++i)
    k.mat.row(i) *= std::exp(a * (mu_c + chain.states(i, 0)) + moment);
  check_entries_finite(k.mat, "build_k_lognormal");
  return k;
}

KMatrix build_k_switching(const MarkovSwitching& params, double gamma) {
  const double a = 1.0 - gamma;
  const double xi1 = std::exp(a * params.mu1 + 0.5 * a * a * params.sigma1 * params.sigma1);
  const double xi2 = std::exp(a * params.mu2 + 0.5 * a * a * params.sigma2 * params.sigma2);

  KMatrix k;
  k.gamma = gamma;
  k.chain.trans.resize(2, 2);
  k.chain.trans << params.q11, 1.0 - params.q11, 1.0 - params.q22, params.q22;
  k.chain.states.resize(2, 1);
  k.chain.states << 1.0, 2.0;
  double p1 = params.stationary_p1();
  k.chain.pi.resize(2);
  k.chain.pi << p1, 1.0 - p1;

  k.mat.resize(2, 2);
  k.mat << xi1 * params.q11, xi2 * (1.0 - params.q11),
           xi1 * (1.0 - params.q22), xi2 * params.q22;
  check_entries_finite(k.mat, "build_k_switching");
  return k;
}

SpectralResult spectral_radius(const Eigen::MatrixXd& mat, double tol, long max_iter) {
  const auto n = mat.rows();
  if (n == 0 || mat.cols() != n) throw std::invalid_argument("spectral_radius: matrix must be square");
  if ((mat.array() < 0.0).any())
    throw std::invalid_argument("spectral_radius: matrix must be nonnegative");

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0);
  double estimate = 0.0;
  for (long it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd w = mat * v;
    double norm = w.maxCoeff();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw numerical_error("spectral_radius: iteration left the positive cone");
    w /= norm;
    double change = std::abs(norm - estimate) / std::max(1.0, std::abs(norm));
    estimate = norm;
    v = std::move(w);
    if (it > 1 && change < tol) {
      SpectralResult out;
      out.radius = estimate;
      out.perron = std::move(v);
      out.iterations = it;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "spectral_radius: no convergence after " << max_iter << " iterations (last estimate "
      << estimate << ")";
  throw numerical_error(msg.str());
}

double gelfand_growth(const KMatrix& k, int n) {
  if (n < 1) throw std::invalid_argument("gelfand_growth: n must be >= 1");
  const auto size = k.mat.rows();
  const double neg_inf = -std::numeric_limits<double>::infinity();

  Eigen::MatrixXd log_mat(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j)
      log_mat(i, j) = k.mat(i, j) > 0.0 ? std::log(k.mat(i, j)) : neg_inf;

  // w = log(K^t 1), advanced one log-space matvec at a time.
  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(size);
  Eigen::ArrayXd next(size);
  for (int t = 0; t < n; ++t) {
    for (Eigen::Index i = 0; i < size; ++i)
      next[i] = logsumexp(log_mat.row(i).transpose().array() + w);
    w = next;
  }
  Eigen::ArrayXd weighted = k.chain.pi.array().log() + w;
  return std::exp(logsumexp(weighted) / static_cast<double>(n));
}

double lrm_lognormal_analytic(double mu_c, double sigma_c, double rho, double sigma,
                              double gamma) {
  if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("lrm_lognormal_analytic: |rho| < 1");
  double lr_var = sigma_c * sigma_c + sigma * sigma / ((1.0 - rho) * (1.0 - rho));
  return std::exp(mu_c + 0.5 * (1.0 - gamma) * lr_var);
}

double lognormal_s2n(double rho, double sigma, double sigma_c, long n) {
  if (n < 1) throw std::invalid_argument("lognormal_s2n: n must be >= 1");
  double sx2 = sigma * sigma / (1.0 - rho * rho);
  double nn = static_cast<double>(n);
  double braces = nn + 2.0 * (nn - 1.0) * rho / (1.0 - rho) -
                  2.0 * rho * rho * (1.0 - std::pow(rho, nn - 1.0)) / ((1.0 - rho) * (1.0 - rho));
  return nn * sigma_c * sigma_c + sx2 * braces;
}

double lrm_trend_analytic(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("lrm_trend_analytic: tau must be positive");
  return tau;
}

}  // namespace ezstab::valuation
