#include "ugnorm/calibration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

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

}  // namespace

PerformanceMeasures measure(const RunLog& log, int round) {
  if (round < 1 || round > log.config.rounds) {
    throw std::out_of_range("measure: round not logged");
  }
  std::vector<double> demands;
  std::vector<double> accepts;
  for (const RoundRecord& rec : log.records) {
    if (rec.round != round) continue;
    demands.push_back(rec.demand);
    accepts.push_back(rec.accepted ? 1.0 : 0.0);
  }
  PerformanceMeasures pm;
  for (double d : demands) pm.mu_d += d;
  pm.mu_d /= static_cast<double>(demands.size());
  pm.sigma_d = population_std(demands);
  for (double a : accepts) pm.mu_a += a;
  pm.mu_a /= static_cast<double>(accepts.size());
  pm.sigma_a = population_std(accepts);

  std::vector<double> value_demands;
  for (const AgentInfo& agent : log.population) {
    if (agent.role != Role::proposer) continue;
    value_demands.push_back(value_demand(agent.profile.di, log.config.pie));
  }
  pm.sigma_vd = population_std(value_demands);
  return pm;
}

double nrmse(const RoundMeasures& measured, const RoundMeasures& targets) {
  const double m[10] = {measured.round1.mu_d,  measured.round1.sigma_d,
                        measured.round1.mu_a,  measured.round1.sigma_a,
                        measured.round1.sigma_vd, measured.round10.mu_d,
                        measured.round10.sigma_d,  measured.round10.mu_a,
                        measured.round10.sigma_a,  measured.round10.sigma_vd};
  const double t[10] = {targets.round1.mu_d,  targets.round1.sigma_d,
                        targets.round1.mu_a,  targets.round1.sigma_a,
                        targets.round1.sigma_vd, targets.round10.mu_d,
                        targets.round10.sigma_d,  targets.round10.mu_a,
                        targets.round10.sigma_a,  targets.round10.sigma_vd};
  double ss = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double rel = (m[i] - t[i]) / t[i];
    ss += rel * rel;
  }
  return 100.0 * std::sqrt(ss / 10.0);
}

CalibrationResult calibrate(const std::vector<PopulationParams>& settings, std::uint64_t seed_lo,
                            std::uint64_t seed_hi, const GameConfig& config,
                            const RoundMeasures& targets) {
  if (settings.empty() || seed_lo > seed_hi) {
    throw std::invalid_argument("calibrate: need at least one setting and one seed");
  }
  const auto add = [](PerformanceMeasures& acc, const PerformanceMeasures& x) {
    acc.mu_d += x.mu_d;
    acc.sigma_d += x.sigma_d;
    acc.mu_a += x.mu_a;
    acc.sigma_a += x.sigma_a;
    acc.sigma_vd += x.sigma_vd;
  };
  const auto scale = [](PerformanceMeasures& acc, double f) {
    acc.mu_d *= f;
    acc.sigma_d *= f;
    acc.mu_a *= f;
    acc.sigma_a *= f;
    acc.sigma_vd *= f;
  };

  CalibrationResult result;
  result.nrmse = std::numeric_limits<double>::infinity();
  for (const PopulationParams& params : settings) {
    RoundMeasures avg;
    int n_seeds = 0;
    for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed, ++n_seeds) {
      const RunLog log = run_game(params, config, seed);
      add(avg.round1, measure(log, 1));
      add(avg.round10, measure(log, 10));
    }
    scale(avg.round1, 1.0 / n_seeds);
    scale(avg.round10, 1.0 / n_seeds);
    const double score = nrmse(avg, targets);  // seed-averaged measures, then scored
    result.table.push_back({params, score, avg});
    if (score < result.nrmse) {
      result.nrmse = score;
      result.best_params = params;
    }
  }
  return result;
}

std::vector<PopulationParams> calibration_grid(double mu_di_min, double mu_di_max,
                                               double mu_di_step, double mu_vw_min,
                                               double mu_vw_max, double mu_vw_step,
                                               double sigma_di, double sigma_vw,
                                               VwSampling vw_sampling) {
  std::vector<PopulationParams> settings;
  const int n_di = static_cast<int>(std::floor((mu_di_max - mu_di_min) / mu_di_step + 1e-6)) + 1;
  const int n_vw = static_cast<int>(std::floor((mu_vw_max - mu_vw_min) / mu_vw_step + 1e-6)) + 1;
  for (int i = 0; i < n_di; ++i) {
    for (int j = 0; j < n_vw; ++j) {
      settings.push_back({mu_di_min + i * mu_di_step, sigma_di, mu_vw_min + j * mu_vw_step,
                          sigma_vw, vw_sampling});
    }
  }
  return settings;
}

}  // namespace ugnorm
