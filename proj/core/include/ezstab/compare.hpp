#pragma once

#include <string>

#include "ezstab/models.hpp"
#include "ezstab/preferences.hpp"

namespace ezstab::compare {

// Alternative sufficient conditions from the prior literature, reported
// alongside the test value for side-by-side display. Each coefficient
// weakly dominates the test value whenever its hypotheses apply.
struct ConditionResult {
  std::string name;
  double coefficient = 0.0;  // may be inf
  bool satisfied = false;    // coefficient < 1, when comparable
  bool comparable = false;   // condition's hypotheses apply to the spec
};

// Probability-one bound condition: psi > 1 and beta B_c^(1-1/psi) < 1, where
// B_c bounds consumption growth almost surely (inf for Gaussian growth).
ConditionResult epstein_zin_condition(const Preferences& prefs, double b_c);

// One-step contraction condition for the geometric-trend model:
//   beta tau^(1-1/psi) max_x { sum_y (y/x)^(1-gamma) p(y) }^(1/theta) < 1
// evaluated by direct enumeration over the finite factor support.
ConditionResult alvarez_jermann_condition(const Preferences& prefs, double tau,
                                          const DiscreteDist& factor);

}  // namespace ezstab::compare
