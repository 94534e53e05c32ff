#include "ugnorm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ugnorm {

const char* to_string(ReductionMethod method) {
  switch (method) {
    case ReductionMethod::ar_ss: return "ar_ss";
    case ReductionMethod::ar_c: return "ar_c";
    case ReductionMethod::ar_direct: return "ar_direct";
  }
  return "unknown";
}

int farthest_norm_probe(const std::vector<double>& norms, int lo, int hi) {
  int best = lo;
  double best_dist = -1.0;
  for (int x = lo; x <= hi; ++x) {
    double dist = std::numeric_limits<double>::infinity();
    for (double n : norms) dist = std::min(dist, std::abs(x - n));
    if (dist > best_dist) {  // strict: ties keep the smaller value
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

ElicitationSession::ElicitationSession(const RunLog& log, int proposer_id, int m,
                                       const Estimator& estimator, NormMode mode)
    : estimator_(&estimator),
      rng_(log.seed, Stream::session),
      pie_(log.config.pie) {
  if (proposer_id < 0 || proposer_id >= log.config.proposers) {
    throw std::out_of_range("ElicitationSession: unknown proposer id");
  }
  if (m < 1 || m > log.config.rounds) {
    throw std::invalid_argument("ElicitationSession: m must be in 1..rounds");
  }
  true_profile_ = log.population[proposer_id].profile;
  true_value_demand_ = value_demand(true_profile_.di, pie_);
  working_obs_ = log.snapshots[proposer_id][m];
  round_demand_.resize(m);
  round_accepted_.resize(m);
  round_used_.assign(m, false);
  for (int round = 1; round <= m; ++round) {
    const RoundRecord& rec = log.record(proposer_id, round);
    round_demand_[round - 1] = rec.demand;
    round_accepted_[round - 1] = rec.accepted;
  }
  trace_ = trace_from_log(log, proposer_id, m, mode);
  solutions_ = estimator_->estimate(trace_);
  next_round_ = m + 1;
}

int ElicitationSession::answer_query(double norm_value) const {
  return blend_demand(true_value_demand_, true_profile_.vw, norm_value, pie_);
}

void ElicitationSession::record_interaction(const NormValue& norm, int demand) {
  trace_.entries.push_back({next_round_++, norm, demand});
  solutions_ = estimator_->estimate(trace_);
  ++count_;
}

ReductionReport ElicitationSession::make_report(ReductionMethod method, int initial) const {
  return {method, initial, static_cast<int>(solutions_.points.size()), count_,
          solutions_.fitness};
}

void ElicitationSession::require_fresh() {
  if (ran_) throw std::logic_error("ElicitationSession: one strategy per session");
  ran_ = true;
}

ReductionReport ElicitationSession::run_search_space(int max_interactions) {
  require_fresh();
  const int initial = static_cast<int>(solutions_.points.size());
  NormValue norm = norm_demand(working_obs_, rng_);
  while (solutions_.ambiguous() && count_ < max_interactions) {
    const int demand = answer_query(norm.value);
    record_interaction(norm, demand);
    // Widen the observed band around the answer. An answer inside the
    // already-explored band changes neither set; the next question repeats
    // under the same norm and the loop runs on against the budget.
    if (working_obs_.rejected.empty() || demand < working_obs_.min_rejected()) {
      working_obs_.rejected.push_back(demand);
    } else if (working_obs_.accepted.empty() || demand > working_obs_.max_accepted()) {
      working_obs_.accepted.push_back(demand);
    }
    norm = norm_demand(working_obs_, rng_);
  }
  return make_report(ReductionMethod::ar_ss, initial);
}

ReductionReport ElicitationSession::run_counterfactual() {
  require_fresh();
  const int initial = static_cast<int>(solutions_.points.size());
  const int max_interactions = static_cast<int>(round_demand_.size());
  while (solutions_.ambiguous() && count_ < max_interactions) {
    // Score every unused historical round whose flipped reply widens the band.
    const std::vector<double> seen = trace_.norm_values();
    int best_round = -1;
    double best_score = -1.0;
    NormValue best_norm;
    for (int i = 0; i < static_cast<int>(round_demand_.size()); ++i) {
      if (round_used_[i]) continue;
      const int d = round_demand_[i];
      ObservationState cf = working_obs_;
      if (round_accepted_[i]) {
        if (!cf.rejected.empty() && d >= cf.min_rejected()) continue;
        cf.accepted.erase(std::find(cf.accepted.begin(), cf.accepted.end(), d));
        cf.rejected.push_back(d);
      } else {
        if (!cf.accepted.empty() && d <= cf.max_accepted()) continue;
        cf.rejected.erase(std::find(cf.rejected.begin(), cf.rejected.end(), d));
        cf.accepted.push_back(d);
      }
      NormValue cf_norm = norm_demand(cf, rng_);
      cf_norm.source = NormSource::counterfactual;
      double score = std::numeric_limits<double>::infinity();
      for (double n : seen) score = std::min(score, std::abs(cf_norm.value - n));
      if (score > best_score) {  // strict: ties keep the smallest round index
        best_score = score;
        best_round = i;
        best_norm = cf_norm;
      }
    }
    if (best_round < 0) break;  // no reply flip can widen the band

    // Commit the chosen flip to the session's working copies.
    const int d = round_demand_[best_round];
    if (round_accepted_[best_round]) {
      working_obs_.accepted.erase(
          std::find(working_obs_.accepted.begin(), working_obs_.accepted.end(), d));
      working_obs_.rejected.push_back(d);
    } else {
      working_obs_.rejected.erase(
          std::find(working_obs_.rejected.begin(), working_obs_.rejected.end(), d));
      working_obs_.accepted.push_back(d);
    }
    round_accepted_[best_round] = !round_accepted_[best_round];
    round_used_[best_round] = true;

    record_interaction(best_norm, answer_query(best_norm.value));
  }
  return make_report(ReductionMethod::ar_c, initial);
}

ReductionReport ElicitationSession::run_direct(int norm_lo, int norm_hi, int max_interactions) {
  require_fresh();
  if (norm_lo > norm_hi || norm_lo < 0 || norm_hi > pie_) {
    throw std::invalid_argument("run_direct: norm range must be a subinterval of [0, P]");
  }
  const int initial = static_cast<int>(solutions_.points.size());
  while (solutions_.ambiguous() && count_ < max_interactions) {
    const int probe = farthest_norm_probe(trace_.norm_values(), norm_lo, norm_hi);
    const NormValue norm{static_cast<double>(probe), NormSource::probed};
    record_interaction(norm, answer_query(norm.value));
  }
  return make_report(ReductionMethod::ar_direct, initial);
}

}  // namespace ugnorm
