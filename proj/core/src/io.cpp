#include "ugnorm/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ugnorm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_runs_header(std::ostream& os) {
  os << "run_seed,round,proposer_id,responder_id,demand,accepted,norm_value,norm_source,"
        "threshold\n";
}

void write_runs_rows(const RunLog& log, std::ostream& os) {
  for (const RoundRecord& r : log.records) {
    os << log.seed << ',' << r.round << ',' << r.proposer_id << ',' << r.responder_id << ','
       << r.demand << ',' << (r.accepted ? 1 : 0) << ',' << format_double(r.proposer_norm.value)
       << ',' << to_string(r.proposer_norm.source) << ',' << r.responder_threshold << '\n';
  }
}

void write_population_header(std::ostream& os) { os << "agent_id,role,di,vw\n"; }

void write_population_rows(const RunLog& log, std::ostream& os) {
  for (const AgentInfo& a : log.population) {
    os << a.id << ',' << (a.role == Role::proposer ? "proposer" : "responder") << ','
       << format_double(a.profile.di) << ',' << format_double(a.profile.vw) << '\n';
  }
}

void write_solutions_csv(const SolutionSet& sol, std::ostream& os) {
  os << "# n_solutions=" << sol.points.size() << " min_fitness=" << format_double(sol.fitness)
     << " evaluated=" << sol.evaluated << '\n';
  os << "di,vw,fitness\n";
  for (const GridPoint& p : sol.points) {
    os << format_double(p.di) << ',' << format_double(p.vw) << ',' << format_double(sol.fitness)
       << '\n';
  }
}

void write_estimates_csv(const std::vector<EstimationCase>& cases, std::ostream& os) {
  os << "run_seed,proposer_id,m,n_solutions,min_fitness,rmse,std_or,std_di_hat,std_vw_hat\n";
  for (const EstimationCase& c : cases) {
    os << c.run_seed << ',' << c.proposer_id << ',' << c.m << ',' << c.n_solutions << ','
       << format_double(c.min_fitness) << ',' << format_double(c.rmse) << ','
       << format_double(c.std_or) << ',' << format_double(c.std_di) << ','
       << format_double(c.std_vw) << '\n';
  }
}

void write_reduction_csv(const std::vector<ReductionCase>& cases, std::ostream& os) {
  os << "run_seed,method,proposer_id,m,initial_solutions,final_solutions,interactions,"
        "final_fitness\n";
  for (const ReductionCase& c : cases) {
    os << c.run_seed << ',' << to_string(c.method) << ',' << c.proposer_id << ',' << c.m << ','
       << c.initial_solutions << ',' << c.final_solutions << ',' << c.interactions << ','
       << format_double(c.final_fitness) << '\n';
  }
}

namespace {

// rmse is in demand units (integer-demand residuals of the representative
// solution, pooled over case rounds).
void write_aggregate_header(std::ostream& os, bool with_method) {
  if (with_method) os << "method,";
  os << "m,rmse,pct_unique,mean_solutions,mean_interactions,resolved_pct,std_or,std_di_hat,"
        "std_vw_hat\n";
}

void write_aggregate_row(const AggregateRow& row, const char* method, std::ostream& os) {
  if (method != nullptr) os << method << ',';
  os << row.m << ',' << format_double(row.rmse) << ',' << format_double(row.pct_unique) << ','
     << format_double(row.mean_solutions) << ',' << format_double(row.mean_interactions) << ','
     << format_double(row.resolved_pct) << ',' << format_double(row.std_or) << ','
     << format_double(row.std_di_hat) << ',' << format_double(row.std_vw_hat) << '\n';
}

}  // namespace

void write_fig2_csv(const std::vector<AggregateRow>& rows, std::ostream& os) {
  write_aggregate_header(os, false);
  for (const AggregateRow& row : rows) write_aggregate_row(row, nullptr, os);
}

void write_fig3_csv(const ReductionExperiment& exp, std::ostream& os) {
  write_aggregate_header(os, true);
  for (const AggregateRow& row : exp.baseline) write_aggregate_row(row, "estimation", os);
  for (const auto& [method, rows] : exp.by_method) {
    for (const AggregateRow& row : rows) write_aggregate_row(row, to_string(method), os);
  }
}

namespace {

const AggregateRow& row_at(const std::vector<AggregateRow>& rows, int m) {
  for (const AggregateRow& row : rows) {
    if (row.m == m) return row;
  }
  throw std::out_of_range("table2: no aggregate row for requested m");
}

}  // namespace

void write_table2_csv(const ReductionExperiment& exp, int m, std::ostream& os) {
  os << "method,precision,pct_unique,rounds_on_ar,std_or,std_di_hat,std_vw_hat,resolved_pct\n";
  const auto emit = [&](const char* name, const AggregateRow& row) {
    os << name << ',' << format_double(row.rmse) << ',' << format_double(row.pct_unique) << ','
       << format_double(row.mean_interactions) << ',' << format_double(row.std_or) << ','
       << format_double(row.std_di_hat) << ',' << format_double(row.std_vw_hat) << ','
       << format_double(row.resolved_pct) << '\n';
  };
  emit("estimation", row_at(exp.baseline, m));
  for (const auto& [method, rows] : exp.by_method) emit(to_string(method), row_at(rows, m));
}

void write_calibration_csv(const CalibrationResult& result, std::ostream& os) {
  os << "mu_di,sigma_di,mu_vw,sigma_vw,nrmse,r1_mu_d,r1_sigma_d,r1_mu_a,r1_sigma_a,r1_sigma_vd,"
        "r10_mu_d,r10_sigma_d,r10_mu_a,r10_sigma_a,r10_sigma_vd,best\n";
  const auto emit_measures = [&](const PerformanceMeasures& pm) {
    os << format_double(pm.mu_d) << ',' << format_double(pm.sigma_d) << ','
       << format_double(pm.mu_a) << ',' << format_double(pm.sigma_a) << ','
       << format_double(pm.sigma_vd);
  };
  bool flagged = false;
  for (const CalibrationEntry& e : result.table) {
    const bool best = !flagged && e.nrmse == result.nrmse;
    flagged = flagged || best;
    os << format_double(e.params.mu_di) << ',' << format_double(e.params.sigma_di) << ','
       << format_double(e.params.mu_vw) << ',' << format_double(e.params.sigma_vw) << ','
       << format_double(e.nrmse) << ',';
    emit_measures(e.measures.round1);
    os << ',';
    emit_measures(e.measures.round10);
    os << ',' << (best ? 1 : 0) << '\n';
  }
}

}  // namespace ugnorm
