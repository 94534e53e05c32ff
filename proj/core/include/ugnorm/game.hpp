#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ugnorm/model.hpp"
#include "ugnorm/rng.hpp"

namespace ugnorm {

// How value-weight samples outside [0, 1] are mapped back into range.
// clamp pins them to the nearest bound (mass piles up at 0 and 1);
// truncate redraws until the sample lands inside (no boundary mass).
enum class VwSampling { clamp, truncate };

const char* to_string(VwSampling mode);

// Normal-distribution parameters governing agent heterogeneity.
struct PopulationParams {
  double mu_di = 0.5;
  double sigma_di = 0.25;
  double mu_vw = -0.6;
  double sigma_vw = 1.14;
  VwSampling vw_sampling = VwSampling::clamp;
};

enum class Role { proposer, responder };

struct AgentInfo {
  int id = 0;
  Role role = Role::proposer;
  Profile profile;
};

// One proposer-responder interaction.
struct RoundRecord {
  int round = 0;  // 1-based
  int proposer_id = 0;
  int responder_id = 0;
  int demand = 0;
  bool accepted = false;
  NormValue proposer_norm;     // the norm input used for this demand
  int responder_threshold = 0;
};

// Full record of one game: who played, what happened, and every proposer's
// observation state after each round.
struct RunLog {
  GameConfig config;
  std::uint64_t seed = 0;
  std::vector<AgentInfo> population;  // proposers 0..n-1, responders n..2n-1
  std::vector<RoundRecord> records;   // round-major, proposer order within a round
  // snapshots[p][k]: proposer p's observations after k replies (k in 0..rounds)
  std::vector<std::vector<ObservationState>> snapshots;

  const RoundRecord& record(int proposer_id, int round) const;
};

// One profile per draw; di ~ N(mu_di, sigma_di), vw ~ N(mu_vw, sigma_vw)
// mapped into [0, 1] per params.vw_sampling.
std::vector<Profile> sample_population(const PopulationParams& params, int count, Rng& rng);

// Rotation pairing: proposer i meets responder (i + round - 1) mod n.
// Bijective every round; no pair repeats within n consecutive rounds.
std::vector<std::pair<int, int>> round_pairing(int round, int n);

// Runs a complete game. Within a round all demands are computed from the
// previous round's observations, then all replies are applied. Deterministic
// in (params, config, seed).
RunLog run_game(const PopulationParams& params, const GameConfig& config, std::uint64_t seed);

}  // namespace ugnorm
