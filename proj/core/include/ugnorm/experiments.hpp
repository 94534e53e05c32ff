#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ugnorm/estimation.hpp"
#include "ugnorm/reduction.hpp"

namespace ugnorm {

// Everything a batch experiment needs. Experiments sample agents with the
// truncated value-weight mode by default so every proposer is identifiable
// in principle; calibration-style contexts override this to clamp.
struct ExperimentConfig {
  int n_runs = 100;
  int m_min = 1;
  int m_max = 20;
  int m_single = 10;  // the m used by single-horizon experiments
  NormMode norm_mode = NormMode::oracle_norm;
  std::vector<ReductionMethod> methods{ReductionMethod::ar_ss, ReductionMethod::ar_c};
  std::string output_dir = ".";
  std::uint64_t master_seed = 1;
  GridSpec grid;
  PopulationParams population{0.5, 0.25, -0.6, 1.14, VwSampling::truncate};
  GameConfig game;
  int ar_ss_budget = 20;
  int ar_direct_budget = 20;
  int ar_direct_lo = 0;
  int ar_direct_hi = 1000;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;  // throws std::invalid_argument
};

inline std::uint64_t run_seed(const ExperimentConfig& config, int run_index) {
  return config.master_seed + static_cast<std::uint64_t>(run_index);
}

// One estimation of one proposer from m observed rounds.
struct EstimationCase {
  std::uint64_t run_seed = 0;
  int proposer_id = 0;
  int m = 0;
  int n_solutions = 0;
  double min_fitness = 0.0;
  double rmse = 0.0;          // representative-solution RMSE over the trace, demand units
  long long sq_dev_sum = 0;   // squared deviations, for pooled aggregation
  int trace_rounds = 0;
  double std_or = 0.0;        // dispersion of the trace's norm inputs
  double std_di = 0.0;        // dispersion of the solution set
  double std_vw = 0.0;
};

// One ambiguity-reduction attempt on one estimation case. Cases whose
// initial estimate was already unique pass through with ran = false.
struct ReductionCase {
  std::uint64_t run_seed = 0;
  int proposer_id = 0;
  int m = 0;
  ReductionMethod method = ReductionMethod::ar_ss;
  bool ran = false;
  int initial_solutions = 0;
  int final_solutions = 0;
  int interactions = 0;
  double final_fitness = 0.0;
  double rmse = 0.0;
  long long sq_dev_sum = 0;
  int trace_rounds = 0;
  double std_or = 0.0;
  double std_di = 0.0;
  double std_vw = 0.0;
};

struct AggregateRow {
  int m = 0;
  double rmse = 0.0;             // pooled over all case rounds, demand units
  double pct_unique = 0.0;       // % of cases ending with a single solution
  double mean_solutions = 0.0;
  double mean_interactions = 0.0;  // over the cases where the method ran
  double resolved_pct = 0.0;       // % of initially ambiguous cases ending unique
  double std_or = 0.0;
  double std_di_hat = 0.0;
  double std_vw_hat = 0.0;
};

struct EstimationExperiment {
  std::vector<EstimationCase> cases;
  std::vector<AggregateRow> aggregate;  // one row per m
};

struct ReductionExperiment {
  std::vector<EstimationCase> baseline_cases;
  std::vector<ReductionCase> cases;
  std::vector<AggregateRow> baseline;                          // one row per m
  std::map<ReductionMethod, std::vector<AggregateRow>> by_method;
};

// Estimation-only sweep: every (run, proposer, m) triple for m in
// m_min..m_max. Backs fig2.csv / estimates.csv.
EstimationExperiment experiment_estimation(const ExperimentConfig& config);

// Estimation followed by each enabled reduction method at each m in ms.
// Backs fig3.csv / table2.csv / reduction.csv.
ReductionExperiment experiment_reduction(const ExperimentConfig& config,
                                         const std::vector<int>& ms);

// Aggregation helpers, exposed so reports can be recomputed from case rows.
std::vector<AggregateRow> aggregate_estimation(const std::vector<EstimationCase>& cases);
std::vector<AggregateRow> aggregate_reduction(const std::vector<ReductionCase>& cases,
                                              ReductionMethod method);

}  // namespace ugnorm
