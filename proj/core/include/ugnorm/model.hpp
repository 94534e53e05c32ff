#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ugnorm/rng.hpp"

namespace ugnorm {

// Demand distribution of the empirical dataset the agent model was fitted
// to. Used as the fallback norm when an agent has no observations yet.
constexpr double kEmpiricalNormMean = 561.8;
constexpr double kEmpiricalNormStd = 128.9;

// An agent's latent preference parameters, constant over a game.
struct Profile {
  double di = 0.0;  // difference in importance: wealth vs fairness
  double vw = 0.0;  // weight on values vs norms, in [0, 1]
};

enum class NormSource { computed, drawn, counterfactual, probed };

const char* to_string(NormSource source);

// A norm-based demand value in [0, P] plus how it was obtained.
struct NormValue {
  double value = 0.0;
  NormSource source = NormSource::computed;
};

// A proposer's own demands split by the reply they received.
struct ObservationState {
  std::vector<int> rejected;  // RD, multiset
  std::vector<int> accepted;  // AD, multiset
  int pie = 1000;

  bool empty() const { return rejected.empty() && accepted.empty(); }
  int size() const { return static_cast<int>(rejected.size() + accepted.size()); }
  int min_rejected() const { return *std::min_element(rejected.begin(), rejected.end()); }
  int max_accepted() const { return *std::max_element(accepted.begin(), accepted.end()); }
};

struct GameConfig {
  int pie = 1000;
  int rounds = 20;
  int proposers = 16;
  int responders = 16;
};

// Round half up to the nearest integer. All demand/threshold rounding in the
// model goes through here so estimation can replay logged play bit-exactly.
inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

// Blend of a value-based demand and a norm value, the common core of the
// proposer demand and the responder threshold. Result clamped to {0..P}.
inline int blend_demand(int value_demand, double vw, double norm, int pie) {
  const double blend = vw * static_cast<double>(value_demand) + (1.0 - vw) * norm;
  return std::clamp(round_half_up(blend), 0, pie);
}

// Utility an agent with preference di assigns to demanding d out of pie.
// Wealth disutility shrinks as the demand grows; fairness disutility shrinks
// as the demand approaches the equal split. Throws std::domain_error for
// d outside {0..P}.
double utility(int demand, double di, int pie);

// Demand in {0..P} with the highest utility; ties go to the smallest demand.
int value_demand(double di, int pie);

// Norm-based demand from the observed replies. With both rejections and
// acceptances present it is the midpoint of min(RD) and max(AD); with only
// one side present the missing indicator is replaced by 0.5P (no accepts)
// or P (no rejects). With no observations at all the norm is drawn from
// the empirical demand distribution, clamped to [0, P]; the draw is not
// written back into obs.
NormValue norm_demand(const ObservationState& obs, Rng& rng);

// Eq-style weighted demand: vw on the value-based demand, 1-vw on the norm.
int combined_demand(const Profile& profile, const NormValue& norm, int pie);

// Responder acceptance threshold: same blend as the proposer demand, with
// the norm component the mean of the demands observed so far. An empty
// observation set falls back to the empirical demand distribution.
int responder_threshold(const Profile& profile, const std::vector<int>& observed_demands,
                        int pie, Rng& rng);

inline bool responder_reply(int threshold, int demand) { return demand <= threshold; }

}  // namespace ugnorm
