#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ugnorm/config.hpp"
#include "ugnorm/io.hpp"

namespace {

using namespace ugnorm;

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> out;
  std::optional<int> m;
  std::optional<std::string> norm_mode;
  std::optional<std::string> methods;
  std::optional<int> threads;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "flat key = value config file");
  cmd->add_option("--set", flags.sets, "extra key=value override, repeatable");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--runs", flags.runs, "number of game runs");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--m", flags.m, "rounds of observed play used for estimation");
  cmd->add_option("--norm-mode", flags.norm_mode, "oracle_norm or mean_norm");
  cmd->add_option("--methods", flags.methods, "comma list: ar_ss,ar_c,ar_direct");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
}

ExperimentConfig build_config(const CommonFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = load_config_file(flags.config_path, cfg);
  for (const std::string& kv : flags.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    }
    apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (flags.seed) cfg.master_seed = *flags.seed;
  if (flags.runs) cfg.n_runs = *flags.runs;
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.m) cfg.m_single = *flags.m;
  if (flags.norm_mode) apply_config_value(cfg, "norm_mode", *flags.norm_mode);
  if (flags.methods) apply_config_value(cfg, "methods", *flags.methods);
  if (flags.threads) cfg.threads = *flags.threads;
  return cfg;
}

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  const auto path = std::filesystem::path(cfg.output_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int cmd_simulate(const CommonFlags& flags) {
  const ExperimentConfig cfg = build_config(flags);
  const RunLog log = run_game(cfg.population, cfg.game, cfg.master_seed);
  {
    auto out = open_output(cfg, "runs.csv");
    write_runs_header(out);
    write_runs_rows(log, out);
  }
  {
    auto out = open_output(cfg, "population.csv");
    write_population_header(out);
    write_population_rows(log, out);
  }
  std::cout << "simulate: seed " << cfg.master_seed << ", " << log.records.size()
            << " records -> " << cfg.output_dir << "/runs.csv\n";
  return 0;
}

int cmd_estimate(const CommonFlags& flags, int proposer) {
  const ExperimentConfig cfg = build_config(flags);
  const RunLog log = run_game(cfg.population, cfg.game, cfg.master_seed);
  const Estimator estimator(cfg.grid, cfg.game.pie);
  const ObservationTrace trace = trace_from_log(log, proposer, cfg.m_single, cfg.norm_mode);
  const SolutionSet sol = estimator.estimate(trace);
  {
    auto out = open_output(cfg, "solutions.csv");
    write_solutions_csv(sol, out);
  }
  std::cout << "estimate: proposer " << proposer << " m " << cfg.m_single << " -> "
            << sol.points.size() << " solution(s), min fitness " << format_double(sol.fitness)
            << ", evaluated " << sol.evaluated << '\n';
  return 0;
}

int cmd_reduce(const CommonFlags& flags, int proposer, const std::string& method_name) {
  ExperimentConfig cfg = build_config(flags);
  apply_config_value(cfg, "methods", method_name);
  const ReductionMethod method = cfg.methods.front();
  const RunLog log = run_game(cfg.population, cfg.game, cfg.master_seed);
  const Estimator estimator(cfg.grid, cfg.game.pie);

  ElicitationSession session(log, proposer, cfg.m_single, estimator, cfg.norm_mode);
  ReductionReport report;
  switch (method) {
    case ReductionMethod::ar_ss: report = session.run_search_space(cfg.ar_ss_budget); break;
    case ReductionMethod::ar_c: report = session.run_counterfactual(); break;
    case ReductionMethod::ar_direct:
      report = session.run_direct(cfg.ar_direct_lo, cfg.ar_direct_hi, cfg.ar_direct_budget);
      break;
  }

  ReductionCase row;
  row.run_seed = log.seed;
  row.proposer_id = proposer;
  row.m = cfg.m_single;
  row.method = method;
  row.ran = report.interactions > 0 || report.initial_solutions > 1;
  row.initial_solutions = report.initial_solutions;
  row.final_solutions = report.final_solutions;
  row.interactions = report.interactions;
  row.final_fitness = report.final_fitness;
  {
    auto out = open_output(cfg, "reduction.csv");
    write_reduction_csv({row}, out);
  }
  std::cout << "reduce: " << to_string(method) << " proposer " << proposer << " m "
            << cfg.m_single << ": " << report.initial_solutions << " -> "
            << report.final_solutions << " solutions in " << report.interactions
            << " interaction(s)\n";
  return 0;
}

int cmd_experiment(const CommonFlags& flags, const std::string& which) {
  const ExperimentConfig cfg = build_config(flags);
  if (which == "fig2") {
    const EstimationExperiment exp = experiment_estimation(cfg);
    {
      auto out = open_output(cfg, "fig2.csv");
      write_fig2_csv(exp.aggregate, out);
    }
    {
      auto out = open_output(cfg, "estimates.csv");
      write_estimates_csv(exp.cases, out);
    }
    std::cout << "experiment fig2: " << exp.cases.size() << " estimations -> "
              << cfg.output_dir << "/fig2.csv\n";
    return 0;
  }
  if (which == "fig3") {
    std::vector<int> ms;
    for (int m = cfg.m_min; m <= cfg.m_max; ++m) ms.push_back(m);
    const ReductionExperiment exp = experiment_reduction(cfg, ms);
    {
      auto out = open_output(cfg, "fig3.csv");
      write_fig3_csv(exp, out);
    }
    {
      auto out = open_output(cfg, "reduction.csv");
      write_reduction_csv(exp.cases, out);
    }
    std::cout << "experiment fig3: " << exp.cases.size() << " reduction cases -> "
              << cfg.output_dir << "/fig3.csv\n";
    return 0;
  }
  if (which == "table2") {
    const ReductionExperiment exp = experiment_reduction(cfg, {cfg.m_single});
    {
      auto out = open_output(cfg, "table2.csv");
      write_table2_csv(exp, cfg.m_single, out);
    }
    {
      auto out = open_output(cfg, "reduction.csv");
      write_reduction_csv(exp.cases, out);
    }
    std::cout << "experiment table2: m " << cfg.m_single << ", " << exp.cases.size()
              << " reduction cases -> " << cfg.output_dir << "/table2.csv\n";
    return 0;
  }
  throw std::invalid_argument("unknown experiment '" + which + "'");
}

struct CalibrateFlags {
  double mu_di_min = -1.0, mu_di_max = 1.0, mu_di_step = 0.25;
  double mu_vw_min = 0.0, mu_vw_max = 1.0, mu_vw_step = 0.1;
  std::uint64_t seed_lo = 1, seed_hi = 30;
};

int cmd_calibrate(const CommonFlags& flags, const CalibrateFlags& cal) {
  const ExperimentConfig cfg = build_config(flags);
  const auto settings = calibration_grid(cal.mu_di_min, cal.mu_di_max, cal.mu_di_step,
                                         cal.mu_vw_min, cal.mu_vw_max, cal.mu_vw_step,
                                         cfg.population.sigma_di, cfg.population.sigma_vw,
                                         cfg.population.vw_sampling);
  const CalibrationResult result = calibrate(settings, cal.seed_lo, cal.seed_hi, cfg.game);
  {
    auto out = open_output(cfg, "calibration.csv");
    write_calibration_csv(result, out);
  }
  std::cout << "calibrate: " << settings.size() << " settings x " << (cal.seed_hi - cal.seed_lo + 1)
            << " seeds; best mu_di " << format_double(result.best_params.mu_di) << ", mu_vw "
            << format_double(result.best_params.mu_vw) << ", nrmse "
            << format_double(result.nrmse) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultimatum-game value/norm simulator and profiling harness"};
  app.require_subcommand(1);

  CommonFlags flags;
  int proposer = 0;
  std::string method_name = "ar_ss";
  std::string experiment_name;
  CalibrateFlags cal;

  CLI::App* simulate = app.add_subcommand("simulate", "run one game and dump CSV logs");
  add_common_flags(simulate, flags);

  CLI::App* estimate = app.add_subcommand("estimate", "profile one proposer from m rounds");
  add_common_flags(estimate, flags);
  estimate->add_option("--proposer", proposer, "proposer id")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "run one ambiguity-reduction session");
  add_common_flags(reduce, flags);
  reduce->add_option("--proposer", proposer, "proposer id")->required();
  reduce->add_option("--method", method_name, "ar_ss, ar_c or ar_direct")->required();

  CLI::App* experiment = app.add_subcommand("experiment", "batch experiments: fig2, fig3, table2");
  add_common_flags(experiment, flags);
  experiment->add_option("name", experiment_name, "fig2, fig3 or table2")->required();

  CLI::App* calibrate_cmd = app.add_subcommand("calibrate", "sweep population parameters");
  add_common_flags(calibrate_cmd, flags);
  calibrate_cmd->add_option("--mu-di-min", cal.mu_di_min);
  calibrate_cmd->add_option("--mu-di-max", cal.mu_di_max);
  calibrate_cmd->add_option("--mu-di-step", cal.mu_di_step);
  calibrate_cmd->add_option("--mu-vw-min", cal.mu_vw_min);
  calibrate_cmd->add_option("--mu-vw-max", cal.mu_vw_max);
  calibrate_cmd->add_option("--mu-vw-step", cal.mu_vw_step);
  calibrate_cmd->add_option("--seed-lo", cal.seed_lo);
  calibrate_cmd->add_option("--seed-hi", cal.seed_hi);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(flags);
    if (estimate->parsed()) return cmd_estimate(flags, proposer);
    if (reduce->parsed()) return cmd_reduce(flags, proposer, method_name);
    if (experiment->parsed()) return cmd_experiment(flags, experiment_name);
    if (calibrate_cmd->parsed()) return cmd_calibrate(flags, cal);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
