#pragma once

#include <cstdint>
#include <vector>

#include "ugnorm/game.hpp"

namespace ugnorm {

// The five per-round population statistics the model is judged on.
// Standard deviations are population (divide by n) throughout: the
// acceptance-rate std of a Bernoulli sample is then sqrt(p(1-p)), matching
// how the empirical targets were derived.
struct PerformanceMeasures {
  double mu_d = 0.0;      // average demand
  double sigma_d = 0.0;   // demand std
  double mu_a = 0.0;      // acceptance rate
  double sigma_a = 0.0;   // acceptance std
  double sigma_vd = 0.0;  // std of the proposers' value-only demands
};

struct RoundMeasures {
  PerformanceMeasures round1;
  PerformanceMeasures round10;
};

// Human reference values, rounds 1 and 10.
inline constexpr RoundMeasures kHumanTargets = {
    {561.8, 128.9, 0.806, 0.40, 128.9},
    {584.2, 98.66, 0.868, 0.34, 122.5},
};

// Statistics over one logged round. sigma_vd is round-independent (profiles
// are constant), computed across the proposers' value demands.
PerformanceMeasures measure(const RunLog& log, int round);

// Normalized root mean square error over the ten measure/target pairs:
// each error is divided by its target, then root-mean-squared, times 100.
// Zero iff measured == targets exactly.
double nrmse(const RoundMeasures& measured, const RoundMeasures& targets = kHumanTargets);

struct CalibrationEntry {
  PopulationParams params;
  double nrmse = 0.0;
  RoundMeasures measures;  // averaged over seeds
};

struct CalibrationResult {
  PopulationParams best_params;
  double nrmse = 0.0;
  std::vector<CalibrationEntry> table;
};

// For every candidate setting: simulate seeds seed_lo..seed_hi, average the
// measures over seeds, then score the averaged measures against the targets.
// Returns the argmin (first entry on ties) plus the full table.
CalibrationResult calibrate(const std::vector<PopulationParams>& settings, std::uint64_t seed_lo,
                            std::uint64_t seed_hi, const GameConfig& config,
                            const RoundMeasures& targets = kHumanTargets);

// Cartesian sweep over mu_di and mu_vw with the sigmas held fixed; the
// default ranges match the calibration procedure's search box.
std::vector<PopulationParams> calibration_grid(double mu_di_min, double mu_di_max,
                                               double mu_di_step, double mu_vw_min,
                                               double mu_vw_max, double mu_vw_step,
                                               double sigma_di, double sigma_vw,
                                               VwSampling vw_sampling);

}  // namespace ugnorm
