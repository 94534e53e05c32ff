#include "ugnorm/game.hpp"

#include <stdexcept>
#include <string>

namespace ugnorm {

const char* to_string(VwSampling mode) {
  return mode == VwSampling::clamp ? "clamp" : "truncate";
}

const RoundRecord& RunLog::record(int proposer_id, int round) const {
  for (const RoundRecord& r : records) {
    if (r.proposer_id == proposer_id && r.round == round) return r;
  }
  throw std::out_of_range("RunLog::record: no record for proposer " +
                          std::to_string(proposer_id) + " round " + std::to_string(round));
}

namespace {

double sample_vw(const PopulationParams& params, Rng& rng) {
  if (params.vw_sampling == VwSampling::clamp) {
    return std::clamp(rng.normal(params.mu_vw, params.sigma_vw), 0.0, 1.0);
  }
  // Rejection sampling of the truncated normal. The acceptance probability
  // for the calibrated parameters is ~0.22, so the loop is short; the cap
  // only guards degenerate parameter choices.
  for (int i = 0; i < 100000; ++i) {
    const double v = rng.normal(params.mu_vw, params.sigma_vw);
    if (v >= 0.0 && v <= 1.0) return v;
  }
  throw std::runtime_error("sample_vw: truncated sampling did not converge");
}

void validate(const PopulationParams& params, const GameConfig& config) {
  if (config.pie <= 0 || config.rounds < 0 || config.proposers <= 0 || config.responders <= 0) {
    throw std::invalid_argument("run_game: pie/proposers/responders must be positive");
  }
  if (config.proposers != config.responders) {
    throw std::invalid_argument("run_game: pairing requires proposers == responders");
  }
  if (params.sigma_di < 0.0 || params.sigma_vw < 0.0) {
    throw std::invalid_argument("run_game: sigmas must be non-negative");
  }
}

}  // namespace

std::vector<Profile> sample_population(const PopulationParams& params, int count, Rng& rng) {
  std::vector<Profile> profiles;
  profiles.reserve(count);
  for (int i = 0; i < count; ++i) {
    Profile p;
    p.di = rng.normal(params.mu_di, params.sigma_di);
    p.vw = sample_vw(params, rng);
    profiles.push_back(p);
  }
  return profiles;
}

std::vector<std::pair<int, int>> round_pairing(int round, int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    pairs.emplace_back(i, (i + round - 1) % n);
  }
  return pairs;
}

RunLog run_game(const PopulationParams& params, const GameConfig& config, std::uint64_t seed) {
  validate(params, config);
  const int n = config.proposers;

  Rng population_rng(seed, Stream::population);
  Rng proposer_norm_rng(seed, Stream::proposer_norm);
  Rng responder_norm_rng(seed, Stream::responder_norm);

  RunLog log;
  log.config = config;
  log.seed = seed;

  const std::vector<Profile> profiles = sample_population(params, 2 * n, population_rng);
  for (int i = 0; i < 2 * n; ++i) {
    log.population.push_back({i, i < n ? Role::proposer : Role::responder, profiles[i]});
  }

  // Value demands are constant over rounds; compute them once per agent.
  std::vector<int> agent_vd(2 * n);
  for (int i = 0; i < 2 * n; ++i) agent_vd[i] = value_demand(profiles[i].di, config.pie);

  std::vector<ObservationState> obs(n);
  for (auto& o : obs) o.pie = config.pie;
  std::vector<std::vector<int>> responder_observed(n);  // demands seen by each responder

  log.snapshots.assign(n, {});
  for (int p = 0; p < n; ++p) log.snapshots[p].push_back(obs[p]);

  std::vector<NormValue> norms(n);
  std::vector<int> demands(n);
  for (int round = 1; round <= config.rounds; ++round) {
    for (int p = 0; p < n; ++p) {
      norms[p] = norm_demand(obs[p], proposer_norm_rng);
      demands[p] = blend_demand(agent_vd[p], profiles[p].vw, norms[p].value, config.pie);
    }
    for (const auto& [p, r] : round_pairing(round, n)) {
      const Profile& responder = profiles[n + r];
      // The proposal itself signals what the proposer considers normal, so
      // it joins the responder's observations before the reply.
      responder_observed[r].push_back(demands[p]);
      double norm_sum = 0.0;
      for (int d : responder_observed[r]) norm_sum += d;
      const double responder_norm = norm_sum / static_cast<double>(responder_observed[r].size());
      const int threshold =
          blend_demand(agent_vd[n + r], responder.vw, responder_norm, config.pie);
      const bool accepted = responder_reply(threshold, demands[p]);
      log.records.push_back({round, p, n + r, demands[p], accepted, norms[p], threshold});
    }
    // Synchronous round: replies land in the proposers' observations only
    // after every pair has played.
    for (int p = 0; p < n; ++p) {
      const RoundRecord& rec = log.records[log.records.size() - n + p];
      (rec.accepted ? obs[p].accepted : obs[p].rejected).push_back(rec.demand);
      log.snapshots[p].push_back(obs[p]);
    }
  }
  (void)responder_norm_rng;  // reserved: responders never see an empty set in-game
  return log;
}

}  // namespace ugnorm
