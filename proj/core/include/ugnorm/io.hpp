#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ugnorm/calibration.hpp"
#include "ugnorm/experiments.hpp"

namespace ugnorm {

// All CSV floats use 6 significant digits.
std::string format_double(double v);

// runs.csv: run_seed,round,proposer_id,responder_id,demand,accepted,
//           norm_value,norm_source,threshold
void write_runs_header(std::ostream& os);
void write_runs_rows(const RunLog& log, std::ostream& os);

// population.csv: agent_id,role,di,vw
void write_population_header(std::ostream& os);
void write_population_rows(const RunLog& log, std::ostream& os);

// solutions.csv: a summary comment line, then di,vw,fitness rows.
void write_solutions_csv(const SolutionSet& sol, std::ostream& os);

// estimates.csv: one row per estimation case.
void write_estimates_csv(const std::vector<EstimationCase>& cases, std::ostream& os);

// reduction.csv: one row per reduction case.
void write_reduction_csv(const std::vector<ReductionCase>& cases, std::ostream& os);

// fig2.csv: per-m aggregate of the estimation experiment.
void write_fig2_csv(const std::vector<AggregateRow>& rows, std::ostream& os);

// fig3.csv: per-(method, m) aggregates, baseline rows labelled "estimation".
void write_fig3_csv(const ReductionExperiment& exp, std::ostream& os);

// table2.csv: one row per method at a single m. rmse is in demand units.
void write_table2_csv(const ReductionExperiment& exp, int m, std::ostream& os);

// calibration.csv: one row per parameter setting, best row flagged.
void write_calibration_csv(const CalibrationResult& result, std::ostream& os);

}  // namespace ugnorm
