#pragma once

#include <vector>

#include "ugnorm/game.hpp"
#include "ugnorm/model.hpp"

namespace ugnorm {

// Inclusive search grid over (di, vw). The default covers the full range in
// which di changes the value demand, in steps of 0.01: 195 x 101 points.
struct GridSpec {
  double di_min = -0.15;
  double di_max = 1.79;
  double vw_min = 0.0;
  double vw_max = 1.0;
  double step = 0.01;

  int di_count() const { return axis_count(di_min, di_max); }
  int vw_count() const { return axis_count(vw_min, vw_max); }
  double di_at(int i) const { return di_min + i * step; }
  double vw_at(int j) const { return vw_min + j * step; }

 private:
  int axis_count(double lo, double hi) const {
    return static_cast<int>(std::floor((hi - lo) / step + 1e-6)) + 1;
  }
};

struct GridPoint {
  double di = 0.0;
  double vw = 0.0;
};

// Every grid point attaining the minimal fitness. points are ordered by
// di index then vw index, so the first entry is a deterministic
// representative.
struct SolutionSet {
  std::vector<GridPoint> points;
  double fitness = 0.0;       // mean absolute demand deviation, demand units
  long long evaluated = 0;    // grid evaluations performed
  bool ambiguous() const { return points.size() > 1; }
};

struct TraceEntry {
  int round = 0;        // strictly increasing within a trace
  NormValue norm;       // the norm input for this round
  int demand = 0;       // the demand actually observed
};

// The per-round (norm input, observed demand) pairs a profiler works from.
struct ObservationTrace {
  int proposer_id = -1;
  std::vector<TraceEntry> entries;

  std::vector<double> norm_values() const;
};

// How estimation fills rounds whose logged norm was drawn (empty history):
// oracle_norm substitutes the realized draw, mean_norm the distribution mean.
enum class NormMode { oracle_norm, mean_norm };

const char* to_string(NormMode mode);

// Mean absolute deviation between the demands the profile would have made
// under the trace's norm inputs and the observed demands. Errors on an
// empty trace.
double fitness(const Profile& profile, const ObservationTrace& trace, int pie = 1000);

// Exhaustive grid search. The value demand for each of the grid's di values
// is precomputed once; reuse one Estimator across estimates, that table is
// the inner loop's main cost otherwise. Fitness comparisons use integer
// deviation sums accumulated in a fixed order, so "equal minimum" is exact;
// tolerance (in fitness units) optionally widens the accepted band.
class Estimator {
 public:
  explicit Estimator(const GridSpec& grid, int pie = 1000);

  const GridSpec& grid() const { return grid_; }
  int pie() const { return pie_; }
  int value_demand_at(int di_index) const { return value_demands_[di_index]; }

  SolutionSet estimate(const ObservationTrace& trace, double tolerance = 0.0) const;

 private:
  GridSpec grid_;
  int pie_;
  std::vector<int> value_demands_;  // one entry per grid di value
};

// One-shot convenience wrapper; builds the table on every call.
SolutionSet estimate(const ObservationTrace& trace, const GridSpec& grid, double tolerance = 0.0);

// Extracts rounds 1..m of a proposer's play as an estimation trace,
// substituting drawn norms per mode. Errors on m < 1, m > logged rounds, or
// an unknown proposer id.
ObservationTrace trace_from_log(const RunLog& log, int proposer_id, int m, NormMode mode);

}  // namespace ugnorm
