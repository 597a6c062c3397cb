#include "ezstab/compare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ezstab::compare {

ConditionResult epstein_zin_condition(const Preferences& prefs, double b_c) {
  if (!(b_c > 0.0)) throw std::invalid_argument("epstein_zin_condition: B_c must be positive");

  ConditionResult out;
  out.name = "epstein_zin";
  out.comparable = prefs.psi > 1.0 && std::isfinite(b_c);
  out.coefficient = prefs.beta * std::pow(b_c, 1.0 - 1.0 / prefs.psi);
  out.satisfied = out.comparable && out.coefficient < 1.0;
  return out;
}

ConditionResult alvarez_jermann_condition(const Preferences& prefs, double tau,
                                          const DiscreteDist& factor) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("alvarez_jermann_condition: tau must be positive");
  validate(factor);

  // max over support points of { sum_y (y/x)^(1-gamma) p(y) }^(1/theta),
  // an exact finite sum for discrete factors.
  double max_term = -std::numeric_limits<double>::infinity();
  for (double x : factor.support) {
    double sum = 0.0;
    for (std::size_t j = 0; j < factor.support.size(); ++j)
      sum += factor.probs[j] * std::pow(factor.support[j] / x, 1.0 - prefs.gamma);
    max_term = std::max(max_term, std::pow(sum, 1.0 / prefs.theta));
  }

  ConditionResult out;
  out.name = "alvarez_jermann";
  out.comparable = true;
  out.coefficient = prefs.beta * std::pow(tau, 1.0 - 1.0 / prefs.psi) * max_term;
  out.satisfied = out.coefficient < 1.0;
  return out;
}

}  // namespace ezstab::compare
