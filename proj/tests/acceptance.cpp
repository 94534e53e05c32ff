// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Tolerances and budgets are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ugnorm/calibration.hpp"
#include "ugnorm/config.hpp"
#include "ugnorm/io.hpp"
#include "ugnorm/reduction.hpp"

using namespace ugnorm;

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back("info: " + what); }
};

int g_failures = 0;

void report(int number, const std::string& title, const Checker& c) {
  std::printf("[%s] criterion %d: %s\n", c.ok ? "PASS" : "FAIL", number, title.c_str());
  for (const std::string& n : c.notes) std::printf("        %s\n", n.c_str());
  if (!c.ok) ++g_failures;
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) { return format_double(v); }

bool within(double value, double center, double halfwidth) {
  return value >= center - halfwidth && value <= center + halfwidth;
}

std::string serialize_log(const RunLog& log) {
  std::ostringstream os;
  write_runs_rows(log, os);
  write_population_rows(log, os);
  return os.str();
}

const GridSpec kGrid;

// ---- criterion 1 -----------------------------------------------------------

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;

  c.require(std::abs(utility(500, 0.0, 1000) - (-5.0 / 3.0)) < 1e-12, "utility(500,0,1000)");
  c.require(std::abs(utility(1000, 2.0, 1000) - (-4.0 / 3.0)) < 1e-12, "utility(1000,2,1000)");
  c.require(std::abs(utility(700, 0.5, 1000) - (-455.0 / 264.0)) < 1e-12,
            "utility(700,0.5,1000)");
  c.require(value_demand(2.0, 1000) == 1000, "value_demand(2)");
  c.require(value_demand(-2.0, 1000) == 500, "value_demand(-2)");

  Rng rng(1234, Stream::population);
  ObservationState obs;
  obs.rejected = {600};
  obs.accepted = {550};
  c.require(norm_demand(obs, rng).value == 575.0, "norm_demand both sides");
  obs.rejected = {700};
  obs.accepted.clear();
  c.require(norm_demand(obs, rng).value == 600.0, "norm_demand only rejects");
  obs.rejected.clear();
  obs.accepted = {550};
  c.require(norm_demand(obs, rng).value == 775.0, "norm_demand only accepts");
  obs.accepted.clear();
  const NormValue drawn = norm_demand(obs, rng);
  c.require(drawn.source == NormSource::drawn && drawn.value >= 0.0 && drawn.value <= 1000.0,
            "norm_demand empty draws");

  c.require(combined_demand({0.5, 1.0}, {575.0, NormSource::computed}, 1000) ==
                value_demand(0.5, 1000),
            "combined vw=1");
  c.require(combined_demand({0.5, 0.0}, {575.0, NormSource::computed}, 1000) == 575,
            "combined vw=0");
  c.require(combined_demand({2.0, 0.5}, {600.0, NormSource::computed}, 1000) == 800,
            "combined mean");
  c.require(responder_reply(600, 600), "reply t=d accepts");
  c.require(!responder_reply(600, 601), "reply d>t rejects");
  c.require(responder_reply(0, 0), "reply boundary");

  // 50 random di against the brute-force argmax, exact integer equality
  Rng di_rng(777, Stream::population);
  for (int i = 0; i < 50; ++i) {
    const double di = -0.15 + 1.94 * di_rng.uniform01();
    int best = 0;
    double best_u = utility(0, di, 1000);
    for (int d = 1; d <= 1000; ++d) {
      const double u = utility(d, di, 1000);
      if (u > best_u) {
        best_u = u;
        best = d;
      }
    }
    if (value_demand(di, 1000) != best) {
      c.require(false, "brute-force mismatch at di=" + fmt(di));
      break;
    }
  }

  const double elapsed = seconds_since(start);
  c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + "s exceeds 1s");
  report(1, "equation unit suite, brute-force argmax oracle, <1s", c);
}

// ---- criterion 2 -----------------------------------------------------------

void criterion_2() {
  Checker c;
  for (int i = 0; i < kGrid.di_count(); ++i) {
    if (value_demand(kGrid.di_at(i), 1000) < 500) {
      c.require(false, "value_demand below 0.5P at di=" + fmt(kGrid.di_at(i)));
      break;
    }
  }
  c.note("checked " + std::to_string(kGrid.di_count()) + " grid points");
  report(2, "value demand never below half the pie across the di grid", c);
}

// ---- criterion 3 -----------------------------------------------------------

void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  PopulationParams params;  // calibrated defaults
  params.vw_sampling = VwSampling::clamp;
  const GameConfig config;

  PerformanceMeasures r1{}, r10{};
  const int n_seeds = 30;
  for (int seed = 1; seed <= n_seeds; ++seed) {
    const RunLog log = run_game(params, config, seed);
    const PerformanceMeasures a = measure(log, 1);
    const PerformanceMeasures b = measure(log, 10);
    r1.mu_d += a.mu_d / n_seeds;
    r1.sigma_d += a.sigma_d / n_seeds;
    r1.mu_a += a.mu_a / n_seeds;
    r10.mu_d += b.mu_d / n_seeds;
    r10.mu_a += b.mu_a / n_seeds;
  }

  c.require(within(r1.mu_d, 557.9, 25.0), "round-1 mu_d " + fmt(r1.mu_d) + " not in 557.9+-25");
  c.require(within(r1.sigma_d, 91.1, 20.0),
            "round-1 sigma_d " + fmt(r1.sigma_d) + " not in 91.1+-20");
  c.require(within(r1.mu_a, 0.876, 0.06), "round-1 mu_a " + fmt(r1.mu_a) + " not in 0.876+-0.06");
  c.require(within(r10.mu_d, 646.8, 35.0),
            "round-10 mu_d " + fmt(r10.mu_d) + " not in 646.8+-35");
  c.require(within(r10.mu_a, 0.923, 0.06),
            "round-10 mu_a " + fmt(r10.mu_a) + " not in 0.923+-0.06");
  c.note("measured r1(mu_d=" + fmt(r1.mu_d) + ", sigma_d=" + fmt(r1.sigma_d) +
         ", mu_a=" + fmt(r1.mu_a) + ") r10(mu_d=" + fmt(r10.mu_d) + ", mu_a=" + fmt(r10.mu_a) +
         ")");

  const double elapsed = seconds_since(start);
  c.require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s exceeds 30s");
  report(3, "calibrated-model behavior vs reference table, 30 seeds, <30s", c);
}

// ---- criterion 4 -----------------------------------------------------------

void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  const Estimator estimator(kGrid);
  Rng rng(20260810, Stream::population);

  int sound = 0;
  const int cases = 200;
  for (int i = 0; i < cases; ++i) {
    const int di_idx = static_cast<int>(rng.uniform01() * kGrid.di_count());
    const int vw_idx = static_cast<int>(rng.uniform01() * kGrid.vw_count());
    const Profile truth{kGrid.di_at(di_idx), kGrid.vw_at(vw_idx)};

    ObservationTrace trace;
    trace.proposer_id = 0;
    for (int k = 1; k <= 20; ++k) {
      const NormValue norm{400.0 + 500.0 * rng.uniform01(), NormSource::computed};
      trace.entries.push_back({k, norm, combined_demand(truth, norm, 1000)});
    }
    const SolutionSet sol = estimator.estimate(trace);
    bool found = false;
    for (const GridPoint& g : sol.points) {
      if (g.di == truth.di && g.vw == truth.vw) {
        found = true;
        break;
      }
    }
    if (sol.fitness == 0.0 && found) ++sound;
  }
  c.require(sound == cases,
            "soundness held in " + std::to_string(sound) + "/" + std::to_string(cases));
  const double elapsed = seconds_since(start);
  c.require(elapsed < 120.0, "runtime " + fmt(elapsed) + "s exceeds 2min");
  c.note("200/200 requires min fitness 0 and the true point in the set; took " + fmt(elapsed) +
         "s");
  report(4, "estimation soundness on 200 on-grid synthetic proposers, <2min", c);
}

// ---- criteria 5-9 share the big experiment runs ----------------------------

void criterion_5(const EstimationExperiment& fig2, double elapsed_s) {
  Checker c;
  const auto row = [&](int m) -> const AggregateRow& {
    for (const AggregateRow& r : fig2.aggregate) {
      if (r.m == m) return r;
    }
    throw std::logic_error("missing m row");
  };
  const double u1 = row(1).pct_unique;
  const double u4 = row(4).pct_unique;
  const double u20 = row(20).pct_unique;
  c.require(u1 <= 25.0, "pct_unique(m=1) " + fmt(u1) + " exceeds 25%");
  c.require(u4 >= u1 + 20.0,
            "rise m=1->4 " + fmt(u1) + "->" + fmt(u4) + " not steep (needs +20pp)");
  c.require(u20 >= 45.0 && u20 <= 75.0, "pct_unique(m=20) " + fmt(u20) + " not in [45,75]");

  double mean_solutions_small_m = 0.0;
  for (int m = 1; m <= 4; ++m) mean_solutions_small_m += row(m).mean_solutions / 4.0;
  c.require(mean_solutions_small_m > 20.0,
            "mean solutions for m<=4 " + fmt(mean_solutions_small_m) + " not > 20");

  // informational: smoothed pct_unique trend over m (window 3)
  bool monotone = true;
  double prev = -1.0;
  for (int m = 2; m <= 19; ++m) {
    const double s = (row(m - 1).pct_unique + row(m).pct_unique + row(m + 1).pct_unique) / 3.0;
    if (s + 1e-9 < prev) monotone = false;
    prev = s;
  }
  c.note(std::string("smoothed pct_unique trend non-decreasing: ") + (monotone ? "yes" : "no"));
  c.note("pct_unique m=1: " + fmt(u1) + ", m=4: " + fmt(u4) + ", m=20: " + fmt(u20) +
         "; mean solutions m<=4: " + fmt(mean_solutions_small_m));
  c.require(elapsed_s < 900.0, "runtime " + fmt(elapsed_s) + "s exceeds 15min");
  report(5, "estimation experiment trends at 100 runs, <15min", c);
}

void criterion_6(const ReductionExperiment& exp) {
  Checker c;
  const AggregateRow& base = exp.baseline.at(0);
  const AggregateRow& ss = exp.by_method.at(ReductionMethod::ar_ss).at(0);
  const AggregateRow& cf = exp.by_method.at(ReductionMethod::ar_c).at(0);

  c.require(within(base.pct_unique, 57.4, 10.0),
            "baseline pct_unique " + fmt(base.pct_unique) + " not in 57.4+-10");
  c.require(within(ss.pct_unique, 86.7, 10.0),
            "ar_ss pct_unique " + fmt(ss.pct_unique) + " not in 86.7+-10");
  c.require(within(cf.pct_unique, 83.5, 10.0),
            "ar_c pct_unique " + fmt(cf.pct_unique) + " not in 83.5+-10");
  c.require(ss.mean_interactions >= 5.0 && ss.mean_interactions <= 14.0,
            "ar_ss interactions " + fmt(ss.mean_interactions) + " not in [5,14]");
  c.require(cf.mean_interactions >= 1.0 && cf.mean_interactions <= 4.0,
            "ar_c interactions " + fmt(cf.mean_interactions) + " not in [1,4]");
  c.require(ss.mean_interactions > cf.mean_interactions,
            "ar_ss does not use more interactions than ar_c");
  for (const auto* row : {&base, &ss, &cf}) {
    if (row->rmse < 0.05 || row->rmse > 0.15) {
      c.require(false, "precision " + fmt(row->rmse) + " (demand units) not in [0.05,0.15]");
    }
  }
  c.note("baseline " + fmt(base.pct_unique) + "%, ar_ss " + fmt(ss.pct_unique) + "% @" +
         fmt(ss.mean_interactions) + " rounds, ar_c " + fmt(cf.pct_unique) + "% @" +
         fmt(cf.mean_interactions) + " rounds; precisions " + fmt(base.rmse) + "/" +
         fmt(ss.rmse) + "/" + fmt(cf.rmse));
  report(6, "reduction reproduction at m=10, 100 runs", c);
}

void criterion_7(const ReductionExperiment& exp) {
  Checker c;
  const AggregateRow& base = exp.baseline.at(0);
  const AggregateRow& ss = exp.by_method.at(ReductionMethod::ar_ss).at(0);
  const AggregateRow& cf = exp.by_method.at(ReductionMethod::ar_c).at(0);
  c.require(ss.std_or > base.std_or, "ar_ss std_or " + fmt(ss.std_or) + " not above baseline " +
                                         fmt(base.std_or));
  c.require(cf.std_or > base.std_or,
            "ar_c std_or " + fmt(cf.std_or) + " not above baseline " + fmt(base.std_or));
  c.require(ss.std_di_hat < base.std_di_hat, "ar_ss std_di_hat did not fall");
  c.require(cf.std_di_hat < base.std_di_hat, "ar_c std_di_hat did not fall");
  c.require(ss.std_vw_hat < base.std_vw_hat, "ar_ss std_vw_hat did not fall");
  c.require(cf.std_vw_hat < base.std_vw_hat, "ar_c std_vw_hat did not fall");
  c.note("std_or " + fmt(base.std_or) + " -> " + fmt(ss.std_or) + "/" + fmt(cf.std_or) +
         "; std_di_hat " + fmt(base.std_di_hat) + " -> " + fmt(ss.std_di_hat) + "/" +
         fmt(cf.std_di_hat) + "; std_vw_hat " + fmt(base.std_vw_hat) + " -> " +
         fmt(ss.std_vw_hat) + "/" + fmt(cf.std_vw_hat));
  report(7, "dispersion directions: search space scatters, estimates gather", c);
}

void criterion_8(const ReductionExperiment& exp) {
  Checker c;
  const AggregateRow& base = exp.baseline.at(0);
  const AggregateRow& ss = exp.by_method.at(ReductionMethod::ar_ss).at(0);
  const AggregateRow& cf = exp.by_method.at(ReductionMethod::ar_c).at(0);
  const double ss_gain = (ss.pct_unique - base.pct_unique) / ss.mean_interactions;
  const double cf_gain = (cf.pct_unique - base.pct_unique) / cf.mean_interactions;
  c.require(cf_gain > ss_gain, "ar_c gain/interaction " + fmt(cf_gain) +
                                   " not above ar_ss " + fmt(ss_gain));
  c.note("gain per interaction: ar_c " + fmt(cf_gain) + " pp, ar_ss " + fmt(ss_gain) + " pp");
  report(8, "counterfactual queries pay more per interaction", c);
}

void criterion_9(const ReductionExperiment& exp) {
  Checker c;
  const AggregateRow& direct = exp.by_method.at(ReductionMethod::ar_direct).at(0);
  c.require(direct.pct_unique >= 90.0,
            "ar_direct pct_unique " + fmt(direct.pct_unique) + " below 90%");
  c.note("ar_direct pct_unique " + fmt(direct.pct_unique) + "% at " +
         fmt(direct.mean_interactions) + " probes on [0,1000], budget 20");
  report(9, "direct norm probes on the full range nearly eliminate ambiguity", c);
}

// ---- criterion 10 ----------------------------------------------------------

void criterion_10() {
  Checker c;
  PopulationParams params;
  params.vw_sampling = VwSampling::truncate;
  const Estimator estimator(kGrid);

  // replay soundness of every logged demand and computed norm
  for (std::uint64_t seed : {11ull, 22ull, 33ull}) {
    const RunLog log = run_game(params, GameConfig{}, seed);
    bool replay_ok = true;
    for (const RoundRecord& rec : log.records) {
      const Profile& p = log.population[rec.proposer_id].profile;
      if (combined_demand(p, rec.proposer_norm, 1000) != rec.demand) replay_ok = false;
      if (rec.proposer_norm.source == NormSource::computed) {
        Rng unused(0, Stream::session);
        const NormValue recomputed =
            norm_demand(log.snapshots[rec.proposer_id][rec.round - 1], unused);
        if (recomputed.value != rec.proposer_norm.value) replay_ok = false;
      }
    }
    c.require(replay_ok, "replay failed for seed " + std::to_string(seed));
  }

  // side-game isolation plus AR-SS widening and AR-C budget
  const RunLog log = run_game(params, GameConfig{}, 44);
  const std::string before = serialize_log(log);
  int sessions = 0;
  for (int pid = 0; pid < log.config.proposers && sessions < 8; ++pid) {
    const ObservationTrace trace = trace_from_log(log, pid, 10, NormMode::oracle_norm);
    if (!estimator.estimate(trace).ambiguous()) continue;
    ++sessions;

    ElicitationSession ss(log, pid, 10, estimator);
    const ObservationState initial = ss.working_observations();
    ss.run_search_space(20);
    // re-derive the widening walk from the recorded answers
    ObservationState band = initial;
    bool monotone = true;
    for (size_t i = 10; i < ss.trace().entries.size(); ++i) {
      const int d = ss.trace().entries[i].demand;
      const int prev_min = band.rejected.empty() ? -1 : band.min_rejected();
      const int prev_max = band.accepted.empty() ? -1 : band.max_accepted();
      if (band.rejected.empty() || d < band.min_rejected()) {
        band.rejected.push_back(d);
      } else if (band.accepted.empty() || d > band.max_accepted()) {
        band.accepted.push_back(d);
      }
      if (prev_min >= 0 && band.min_rejected() > prev_min) monotone = false;
      if (prev_max >= 0 && band.max_accepted() < prev_max) monotone = false;
    }
    const ObservationState& final_obs = ss.working_observations();
    const bool same_walk = band.rejected == final_obs.rejected &&
                           band.accepted == final_obs.accepted;
    c.require(monotone && same_walk,
              "ar_ss widening not monotone for proposer " + std::to_string(pid));

    ElicitationSession cf(log, pid, 10, estimator);
    const ReductionReport cr = cf.run_counterfactual();
    c.require(cr.interactions <= 10, "ar_c exceeded its budget");
  }
  c.require(sessions > 0, "no ambiguous case found for the invariant checks");
  c.require(serialize_log(log) == before, "side game mutated the canonical log");

  // end-to-end determinism of the estimation experiment
  ExperimentConfig cfg;
  cfg.n_runs = 8;
  cfg.threads = 2;
  const EstimationExperiment a = experiment_estimation(cfg);
  cfg.threads = 1;
  const EstimationExperiment b = experiment_estimation(cfg);
  std::ostringstream csv_a, csv_b, agg_a, agg_b;
  write_estimates_csv(a.cases, csv_a);
  write_estimates_csv(b.cases, csv_b);
  write_fig2_csv(a.aggregate, agg_a);
  write_fig2_csv(b.aggregate, agg_b);
  c.require(csv_a.str() == csv_b.str() && agg_a.str() == agg_b.str(),
            "estimation experiment output not byte-identical across repeats");

  report(10, "invariant suite: isolation, replay, widening, budgets, determinism", c);
}

}  // namespace

int main() {
  std::printf("acceptance suite (grid %dx%d = %lld evaluations per estimate)\n",
              kGrid.di_count(), kGrid.vw_count(),
              static_cast<long long>(kGrid.di_count()) * kGrid.vw_count());

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();

  ExperimentConfig fig2_cfg;
  fig2_cfg.n_runs = 100;
  const auto fig2_start = std::chrono::steady_clock::now();
  const EstimationExperiment fig2 = experiment_estimation(fig2_cfg);
  criterion_5(fig2, seconds_since(fig2_start));

  ExperimentConfig table2_cfg;
  table2_cfg.n_runs = 100;
  table2_cfg.methods = {ReductionMethod::ar_ss, ReductionMethod::ar_c,
                        ReductionMethod::ar_direct};
  const ReductionExperiment table2 = experiment_reduction(table2_cfg, {10});
  criterion_6(table2);
  criterion_7(table2);
  criterion_8(table2);
  criterion_9(table2);

  criterion_10();

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
