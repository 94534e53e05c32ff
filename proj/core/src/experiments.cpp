#include "ugnorm/experiments.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "ugnorm/parallel.hpp"

namespace ugnorm {

namespace {

double population_std(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

int grid_index(double value, double lo, double step) {
  return static_cast<int>(std::lround((value - lo) / step));
}

// Per-case statistics shared by estimation and reduction cases: residuals of
// the representative (first) solution over the trace, plus dispersions of
// the trace norms and of the solution set.
struct CaseStats {
  double rmse = 0.0;
  long long sq_dev_sum = 0;
  int trace_rounds = 0;
  double std_or = 0.0;
  double std_di = 0.0;
  double std_vw = 0.0;
};

CaseStats case_stats(const Estimator& estimator, const ObservationTrace& trace,
                     const SolutionSet& sol) {
  CaseStats stats;
  const GridSpec& grid = estimator.grid();
  const GridPoint& rep = sol.points.front();
  const int vd = estimator.value_demand_at(grid_index(rep.di, grid.di_min, grid.step));
  for (const TraceEntry& e : trace.entries) {
    const long long dev = blend_demand(vd, rep.vw, e.norm.value, estimator.pie()) - e.demand;
    stats.sq_dev_sum += dev * dev;
  }
  stats.trace_rounds = static_cast<int>(trace.entries.size());
  stats.rmse = std::sqrt(static_cast<double>(stats.sq_dev_sum) / stats.trace_rounds);
  stats.std_or = population_std(trace.norm_values());
  std::vector<double> dis, vws;
  dis.reserve(sol.points.size());
  vws.reserve(sol.points.size());
  for (const GridPoint& p : sol.points) {
    dis.push_back(p.di);
    vws.push_back(p.vw);
  }
  stats.std_di = population_std(dis);
  stats.std_vw = population_std(vws);
  return stats;
}

template <typename Case>
void fill_stats(Case& c, const CaseStats& s) {
  c.rmse = s.rmse;
  c.sq_dev_sum = s.sq_dev_sum;
  c.trace_rounds = s.trace_rounds;
  c.std_or = s.std_or;
  c.std_di = s.std_di;
  c.std_vw = s.std_vw;
}

std::vector<int> sorted_ms(const std::vector<int>& ms) {
  std::set<int> uniq(ms.begin(), ms.end());
  return {uniq.begin(), uniq.end()};
}

int final_solutions_of(const EstimationCase& c) { return c.n_solutions; }
int final_solutions_of(const ReductionCase& c) { return c.final_solutions; }
bool ran_of(const EstimationCase&) { return false; }
bool ran_of(const ReductionCase& c) { return c.ran; }
int interactions_of(const EstimationCase&) { return 0; }
int interactions_of(const ReductionCase& c) { return c.interactions; }

template <typename Case>
AggregateRow aggregate_rows_for(const std::vector<const Case*>& cases) {
  AggregateRow row;
  long long sq_sum = 0;
  long long rounds = 0;
  int unique = 0;
  int ran = 0;
  int ran_unique = 0;
  long long interactions = 0;
  double solutions = 0.0, std_or = 0.0, std_di = 0.0, std_vw = 0.0;
  for (const Case* c : cases) {
    sq_sum += c->sq_dev_sum;
    rounds += c->trace_rounds;
    const int n_solutions = final_solutions_of(*c);
    if (n_solutions == 1) ++unique;
    solutions += n_solutions;
    std_or += c->std_or;
    std_di += c->std_di;
    std_vw += c->std_vw;
    if (ran_of(*c)) {
      ++ran;
      interactions += interactions_of(*c);
      if (n_solutions == 1) ++ran_unique;
    }
  }
  const double n = static_cast<double>(cases.size());
  row.rmse = rounds > 0 ? std::sqrt(static_cast<double>(sq_sum) / rounds) : 0.0;
  row.pct_unique = 100.0 * unique / n;
  row.mean_solutions = solutions / n;
  row.mean_interactions = ran > 0 ? static_cast<double>(interactions) / ran : 0.0;
  row.resolved_pct = ran > 0 ? 100.0 * ran_unique / ran : 0.0;
  row.std_or = std_or / n;
  row.std_di_hat = std_di / n;
  row.std_vw_hat = std_vw / n;
  return row;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_runs < 1) throw std::invalid_argument("config: n_runs must be >= 1");
  if (m_min < 1 || m_min > m_max || m_max > game.rounds) {
    throw std::invalid_argument("config: need 1 <= m_min <= m_max <= rounds");
  }
  if (m_single < 1 || m_single > game.rounds) {
    throw std::invalid_argument("config: m must be in 1..rounds");
  }
  if (game.pie <= 0 || game.proposers <= 0 || game.proposers != game.responders) {
    throw std::invalid_argument("config: invalid game setup");
  }
  if (grid.step <= 0.0 || grid.di_min > grid.di_max || grid.vw_min > grid.vw_max) {
    throw std::invalid_argument("config: malformed grid");
  }
  if (ar_direct_lo < 0 || ar_direct_hi > game.pie || ar_direct_lo > ar_direct_hi) {
    throw std::invalid_argument("config: direct probe range must be a subinterval of [0, P]");
  }
  if (ar_ss_budget < 0 || ar_direct_budget < 0) {
    throw std::invalid_argument("config: budgets must be non-negative");
  }
  if (methods.empty()) throw std::invalid_argument("config: no reduction methods enabled");
}

EstimationExperiment experiment_estimation(const ExperimentConfig& config) {
  config.validate();
  const Estimator estimator(config.grid, config.game.pie);
  const int per_run = config.game.proposers * (config.m_max - config.m_min + 1);

  std::vector<std::vector<EstimationCase>> slots(config.n_runs);
  parallel_for(config.n_runs, config.threads, [&](int run) {
    const std::uint64_t seed = run_seed(config, run);
    const RunLog log = run_game(config.population, config.game, seed);
    slots[run].reserve(per_run);
    for (int pid = 0; pid < config.game.proposers; ++pid) {
      for (int m = config.m_min; m <= config.m_max; ++m) {
        const ObservationTrace trace = trace_from_log(log, pid, m, config.norm_mode);
        const SolutionSet sol = estimator.estimate(trace);
        EstimationCase c;
        c.run_seed = seed;
        c.proposer_id = pid;
        c.m = m;
        c.n_solutions = static_cast<int>(sol.points.size());
        c.min_fitness = sol.fitness;
        fill_stats(c, case_stats(estimator, trace, sol));
        slots[run].push_back(c);
      }
    }
  });

  EstimationExperiment result;
  result.cases.reserve(static_cast<size_t>(config.n_runs) * per_run);
  for (const auto& slot : slots) {
    result.cases.insert(result.cases.end(), slot.begin(), slot.end());
  }
  result.aggregate = aggregate_estimation(result.cases);
  return result;
}

ReductionExperiment experiment_reduction(const ExperimentConfig& config,
                                         const std::vector<int>& ms_in) {
  config.validate();
  const std::vector<int> ms = sorted_ms(ms_in);
  for (int m : ms) {
    if (m < 1 || m > config.game.rounds) {
      throw std::invalid_argument("experiment_reduction: m out of range");
    }
  }
  const Estimator estimator(config.grid, config.game.pie);

  struct Slot {
    std::vector<EstimationCase> baseline;
    std::vector<ReductionCase> cases;
  };
  std::vector<Slot> slots(config.n_runs);
  parallel_for(config.n_runs, config.threads, [&](int run) {
    const std::uint64_t seed = run_seed(config, run);
    const RunLog log = run_game(config.population, config.game, seed);
    for (int pid = 0; pid < config.game.proposers; ++pid) {
      for (int m : ms) {
        const ObservationTrace trace = trace_from_log(log, pid, m, config.norm_mode);
        const SolutionSet sol = estimator.estimate(trace);
        EstimationCase base;
        base.run_seed = seed;
        base.proposer_id = pid;
        base.m = m;
        base.n_solutions = static_cast<int>(sol.points.size());
        base.min_fitness = sol.fitness;
        const CaseStats base_stats = case_stats(estimator, trace, sol);
        fill_stats(base, base_stats);
        slots[run].baseline.push_back(base);

        for (ReductionMethod method : config.methods) {
          ReductionCase rc;
          rc.run_seed = seed;
          rc.proposer_id = pid;
          rc.m = m;
          rc.method = method;
          rc.initial_solutions = base.n_solutions;
          if (!sol.ambiguous()) {
            rc.ran = false;
            rc.final_solutions = base.n_solutions;
            rc.interactions = 0;
            rc.final_fitness = base.min_fitness;
            fill_stats(rc, base_stats);
          } else {
            ElicitationSession session(log, pid, m, estimator, config.norm_mode);
            ReductionReport report;
            switch (method) {
              case ReductionMethod::ar_ss:
                report = session.run_search_space(config.ar_ss_budget);
                break;
              case ReductionMethod::ar_c:
                report = session.run_counterfactual();
                break;
              case ReductionMethod::ar_direct:
                report = session.run_direct(config.ar_direct_lo, config.ar_direct_hi,
                                            config.ar_direct_budget);
                break;
            }
            rc.ran = true;
            rc.final_solutions = report.final_solutions;
            rc.interactions = report.interactions;
            rc.final_fitness = report.final_fitness;
            fill_stats(rc, case_stats(estimator, session.trace(), session.solutions()));
          }
          slots[run].cases.push_back(rc);
        }
      }
    }
  });

  ReductionExperiment result;
  for (const Slot& slot : slots) {
    result.baseline_cases.insert(result.baseline_cases.end(), slot.baseline.begin(),
                                 slot.baseline.end());
    result.cases.insert(result.cases.end(), slot.cases.begin(), slot.cases.end());
  }
  result.baseline = aggregate_estimation(result.baseline_cases);
  for (ReductionMethod method : config.methods) {
    result.by_method[method] = aggregate_reduction(result.cases, method);
  }
  return result;
}

std::vector<AggregateRow> aggregate_estimation(const std::vector<EstimationCase>& cases) {
  std::set<int> ms;
  for (const EstimationCase& c : cases) ms.insert(c.m);
  std::vector<AggregateRow> rows;
  for (int m : ms) {
    std::vector<const EstimationCase*> group;
    for (const EstimationCase& c : cases) {
      if (c.m == m) group.push_back(&c);
    }
    AggregateRow row = aggregate_rows_for(group);
    row.m = m;
    rows.push_back(row);
  }
  return rows;
}

std::vector<AggregateRow> aggregate_reduction(const std::vector<ReductionCase>& cases,
                                              ReductionMethod method) {
  std::set<int> ms;
  for (const ReductionCase& c : cases) {
    if (c.method == method) ms.insert(c.m);
  }
  std::vector<AggregateRow> rows;
  for (int m : ms) {
    std::vector<const ReductionCase*> group;
    for (const ReductionCase& c : cases) {
      if (c.m == m && c.method == method) group.push_back(&c);
    }
    AggregateRow row = aggregate_rows_for(group);
    row.m = m;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ugnorm
