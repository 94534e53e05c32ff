#include "ugnorm/model.hpp"

#include <stdexcept>

namespace ugnorm {

const char* to_string(NormSource source) {
  switch (source) {
    case NormSource::computed: return "computed";
    case NormSource::drawn: return "drawn";
    case NormSource::counterfactual: return "counterfactual";
    case NormSource::probed: return "probed";
  }
  return "unknown";
}

double utility(int demand, double di, int pie) {
  if (demand < 0 || demand > pie) {
    throw std::domain_error("utility: demand outside {0..P}");
  }
  const double p = static_cast<double>(pie);
  const double wealth_weight = 1.0 + 0.5 * di;
  const double fairness_weight = 1.0 - 0.5 * di;
  // 1 at the equal split, 0 at either extreme.
  const double closeness = 1.0 - std::abs(0.5 * p - demand) / (0.5 * p);
  return -wealth_weight / (demand / p + 0.5) - fairness_weight / (closeness + 0.5);
}

int value_demand(double di, int pie) {
  int best = 0;
  double best_utility = utility(0, di, pie);
  for (int d = 1; d <= pie; ++d) {
    const double u = utility(d, di, pie);
    if (u > best_utility) {  // strict: ties keep the smallest demand
      best_utility = u;
      best = d;
    }
  }
  return best;
}

NormValue norm_demand(const ObservationState& obs, Rng& rng) {
  const double p = static_cast<double>(obs.pie);
  const bool has_rejects = !obs.rejected.empty();
  const bool has_accepts = !obs.accepted.empty();
  if (has_rejects && has_accepts) {
    return {0.5 * (obs.min_rejected() + obs.max_accepted()), NormSource::computed};
  }
  if (has_rejects) {
    return {0.5 * (obs.min_rejected() + 0.5 * p), NormSource::computed};
  }
  if (has_accepts) {
    return {0.5 * (obs.max_accepted() + p), NormSource::computed};
  }
  const double draw = rng.normal(kEmpiricalNormMean, kEmpiricalNormStd);
  return {std::clamp(draw, 0.0, p), NormSource::drawn};
}

int combined_demand(const Profile& profile, const NormValue& norm, int pie) {
  return blend_demand(value_demand(profile.di, pie), profile.vw, norm.value, pie);
}

int responder_threshold(const Profile& profile, const std::vector<int>& observed_demands,
                        int pie, Rng& rng) {
  double norm;
  if (observed_demands.empty()) {
    norm = std::clamp(rng.normal(kEmpiricalNormMean, kEmpiricalNormStd), 0.0,
                      static_cast<double>(pie));
  } else {
    double sum = 0.0;
    for (int d : observed_demands) sum += d;
    norm = sum / static_cast<double>(observed_demands.size());
  }
  return blend_demand(value_demand(profile.di, pie), profile.vw, norm, pie);
}

}  // namespace ugnorm
