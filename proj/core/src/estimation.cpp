#include "ugnorm/estimation.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace ugnorm {

const char* to_string(NormMode mode) {
  return mode == NormMode::oracle_norm ? "oracle_norm" : "mean_norm";
}

std::vector<double> ObservationTrace::norm_values() const {
  std::vector<double> values;
  values.reserve(entries.size());
  for (const TraceEntry& e : entries) values.push_back(e.norm.value);
  return values;
}

double fitness(const Profile& profile, const ObservationTrace& trace, int pie) {
  if (trace.entries.empty()) {
    throw std::invalid_argument("fitness: empty trace");
  }
  const int vd = value_demand(profile.di, pie);
  long long sum = 0;
  for (const TraceEntry& e : trace.entries) {
    sum += std::abs(blend_demand(vd, profile.vw, e.norm.value, pie) - e.demand);
  }
  return static_cast<double>(sum) / static_cast<double>(trace.entries.size());
}

Estimator::Estimator(const GridSpec& grid, int pie) : grid_(grid), pie_(pie) {
  if (grid.step <= 0.0 || grid.di_min > grid.di_max || grid.vw_min > grid.vw_max) {
    throw std::invalid_argument("Estimator: malformed grid");
  }
  const int n_di = grid_.di_count();
  value_demands_.resize(n_di);
  for (int i = 0; i < n_di; ++i) {
    value_demands_[i] = value_demand(grid_.di_at(i), pie_);
  }
}

SolutionSet Estimator::estimate(const ObservationTrace& trace, double tolerance) const {
  if (trace.entries.empty()) {
    throw std::invalid_argument("estimate: empty trace");
  }
  const int m = static_cast<int>(trace.entries.size());
  const int n_di = grid_.di_count();
  const int n_vw = grid_.vw_count();

  std::vector<double> norms(m);
  std::vector<int> observed(m);
  for (int k = 0; k < m; ++k) {
    norms[k] = trace.entries[k].norm.value;
    observed[k] = trace.entries[k].demand;
  }

  // Integer deviation sums make the minimum comparison exact.
  std::vector<long long> sums;
  const bool keep_all = tolerance > 0.0;
  if (keep_all) sums.reserve(static_cast<size_t>(n_di) * n_vw);

  long long best = std::numeric_limits<long long>::max();
  std::vector<GridPoint> minima;
  for (int i = 0; i < n_di; ++i) {
    const int vd = value_demands_[i];
    for (int j = 0; j < n_vw; ++j) {
      const double vw = grid_.vw_at(j);
      long long sum = 0;
      for (int k = 0; k < m; ++k) {
        sum += std::abs(blend_demand(vd, vw, norms[k], pie_) - observed[k]);
      }
      if (keep_all) sums.push_back(sum);
      if (sum < best) {
        best = sum;
        if (!keep_all) {
          minima.clear();
          minima.push_back({grid_.di_at(i), vw});
        }
      } else if (sum == best && !keep_all) {
        minima.push_back({grid_.di_at(i), vw});
      }
    }
  }

  if (keep_all) {
    // Second pass: everything within tolerance of the minimum (mean units).
    const double cutoff = static_cast<double>(best) + tolerance * m + 1e-9;
    size_t idx = 0;
    for (int i = 0; i < n_di; ++i) {
      for (int j = 0; j < n_vw; ++j, ++idx) {
        if (static_cast<double>(sums[idx]) <= cutoff) {
          minima.push_back({grid_.di_at(i), grid_.vw_at(j)});
        }
      }
    }
  }

  SolutionSet result;
  result.points = std::move(minima);
  result.fitness = static_cast<double>(best) / static_cast<double>(m);
  result.evaluated = static_cast<long long>(n_di) * n_vw;
  return result;
}

SolutionSet estimate(const ObservationTrace& trace, const GridSpec& grid, double tolerance) {
  return Estimator(grid).estimate(trace, tolerance);
}

ObservationTrace trace_from_log(const RunLog& log, int proposer_id, int m, NormMode mode) {
  if (proposer_id < 0 || proposer_id >= log.config.proposers) {
    throw std::out_of_range("trace_from_log: unknown proposer id " + std::to_string(proposer_id));
  }
  if (m < 1 || m > log.config.rounds) {
    throw std::invalid_argument("trace_from_log: m must be in 1..rounds");
  }
  ObservationTrace trace;
  trace.proposer_id = proposer_id;
  trace.entries.reserve(m);
  for (int round = 1; round <= m; ++round) {
    const RoundRecord& rec = log.record(proposer_id, round);
    NormValue norm = rec.proposer_norm;
    if (norm.source == NormSource::drawn && mode == NormMode::mean_norm) {
      norm.value = kEmpiricalNormMean;
    }
    trace.entries.push_back({round, norm, rec.demand});
  }
  return trace;
}

}  // namespace ugnorm
