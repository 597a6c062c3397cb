#pragma once

#include <map>
#include <string>

namespace ezstab {

enum class Verdict { stable, unstable, inconclusive };

struct LambdaEstimate {
  double value = 0.0;
  double uncertainty = 0.0;  // 0 for deterministic methods, ensemble std for MC
};

// One stability check: the test value from every method that ran, the
// combined verdict, and enough provenance to rerun the computation.
struct StabilityReport {
  std::map<std::string, LambdaEstimate> lambda_values;  // keys: analytic | spectral | montecarlo
  Verdict verdict = Verdict::inconclusive;
  bool at_boundary = false;  // some method landed exactly on 1; classified unstable
  std::map<std::string, std::string> metadata;
};

// stable: every central value < 1 and no 2-sigma interval straddles 1.
// inconclusive: some interval straddles 1. unstable otherwise.
inline Verdict verdict_from(const std::map<std::string, LambdaEstimate>& lambda_values) {
  bool all_below = true;
  for (const auto& [name, est] : lambda_values) {
    double lo = est.value - 2.0 * est.uncertainty;
    double hi = est.value + 2.0 * est.uncertainty;
    if (lo < 1.0 && hi > 1.0) return Verdict::inconclusive;
    if (!(est.value < 1.0)) all_below = false;
  }
  return all_below ? Verdict::stable : Verdict::unstable;
}

inline StabilityReport make_report(std::map<std::string, LambdaEstimate> lambda_values,
                                   std::map<std::string, std::string> metadata = {}) {
  StabilityReport rep;
  rep.verdict = verdict_from(lambda_values);
  for (const auto& [name, est] : lambda_values)
    if (est.value == 1.0) rep.at_boundary = true;
  rep.lambda_values = std::move(lambda_values);
  rep.metadata = std::move(metadata);
  return rep;
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    default: return "inconclusive";
  }
}

}  // namespace ezstab
