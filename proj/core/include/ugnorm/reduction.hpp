#pragma once

#include <vector>

#include "ugnorm/estimation.hpp"
#include "ugnorm/game.hpp"

namespace ugnorm {

enum class ReductionMethod { ar_ss, ar_c, ar_direct };

const char* to_string(ReductionMethod method);

struct ReductionReport {
  ReductionMethod method = ReductionMethod::ar_ss;
  int initial_solutions = 0;
  int final_solutions = 0;
  int interactions = 0;
  double final_fitness = 0.0;
};

// Picks the integer norm in [lo, hi] with the largest minimum distance to
// the norms already seen; ties go to the smaller value. An empty set makes
// every candidate equally far, so the lower endpoint wins.
int farthest_norm_probe(const std::vector<double>& norms, int lo, int hi);

// One elicitation side-game against a proposer from a finished run. The
// session works on copies of the proposer's observations and trace; the
// canonical RunLog is never touched. The proposer's true profile is held
// only to answer queries and is invisible to the strategies.
//
// A session runs exactly one strategy. The initial estimate is made on
// rounds 1..m of the log under the given norm mode.
class ElicitationSession {
 public:
  ElicitationSession(const RunLog& log, int proposer_id, int m, const Estimator& estimator,
                     NormMode mode = NormMode::oracle_norm);

  // Asks "what would your next demand be?", then rejects answers below
  // every past rejection and accepts answers above every past acceptance,
  // widening the observed band. Stops early when an answer falls inside
  // the already-explored band: the norm, and hence every later answer,
  // could no longer change.
  ReductionReport run_search_space(int max_interactions = 20);

  // Asks "what would your next demand be if round i had gone the other
  // way?" for the historical round whose flipped reply yields the norm
  // farthest from anything seen. Only replies whose flip widens the band
  // qualify; each round is asked at most once, so the budget is the number
  // of observed rounds.
  ReductionReport run_counterfactual();

  // Sets the norm directly: greedy farthest-point probes over [lo, hi].
  ReductionReport run_direct(int norm_lo, int norm_hi, int max_interactions = 20);

  const SolutionSet& solutions() const { return solutions_; }
  const ObservationTrace& trace() const { return trace_; }
  const ObservationState& working_observations() const { return working_obs_; }
  int interactions() const { return count_; }

 private:
  int answer_query(double norm_value) const;  // the proposer's true reply
  void record_interaction(const NormValue& norm, int demand);
  ReductionReport make_report(ReductionMethod method, int initial) const;
  void require_fresh();

  const Estimator* estimator_;
  Rng rng_;  // feeds norm_demand's signature; never drawn from while observations exist
  int pie_;
  Profile true_profile_;
  int true_value_demand_;
  ObservationState working_obs_;
  std::vector<int> round_demand_;     // historical demands, index 0 = round 1
  std::vector<bool> round_accepted_;  // working reply status per historical round
  std::vector<bool> round_used_;      // counterfactual already asked for this round
  ObservationTrace trace_;
  SolutionSet solutions_;
  int next_round_;
  int count_ = 0;
  bool ran_ = false;
};

}  // namespace ugnorm
