#include "ugnorm/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ugnorm {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int to_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad seed for " + key + ": '" + value + "'");
  }
}

std::vector<ReductionMethod> to_methods(const std::string& value) {
  std::vector<ReductionMethod> methods;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "ar_ss") {
      methods.push_back(ReductionMethod::ar_ss);
    } else if (item == "ar_c") {
      methods.push_back(ReductionMethod::ar_c);
    } else if (item == "ar_direct") {
      methods.push_back(ReductionMethod::ar_direct);
    } else {
      throw std::invalid_argument("config: unknown method '" + item + "'");
    }
  }
  if (methods.empty()) throw std::invalid_argument("config: empty method list");
  return methods;
}

}  // namespace

void apply_config_value(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "runs") {
    config.n_runs = to_int(key, value);
  } else if (key == "master_seed") {
    config.master_seed = to_u64(key, value);
  } else if (key == "rounds") {
    config.game.rounds = to_int(key, value);
  } else if (key == "proposers") {
    config.game.proposers = to_int(key, value);
    config.game.responders = config.game.proposers;
  } else if (key == "pie") {
    config.game.pie = to_int(key, value);
  } else if (key == "m_min") {
    config.m_min = to_int(key, value);
  } else if (key == "m_max") {
    config.m_max = to_int(key, value);
  } else if (key == "m") {
    config.m_single = to_int(key, value);
  } else if (key == "norm_mode") {
    if (value == "oracle_norm") {
      config.norm_mode = NormMode::oracle_norm;
    } else if (value == "mean_norm") {
      config.norm_mode = NormMode::mean_norm;
    } else {
      throw std::invalid_argument("config: norm_mode must be oracle_norm or mean_norm");
    }
  } else if (key == "methods") {
    config.methods = to_methods(value);
  } else if (key == "output_dir") {
    config.output_dir = value;
  } else if (key == "mu_di") {
    config.population.mu_di = to_double(key, value);
  } else if (key == "sigma_di") {
    config.population.sigma_di = to_double(key, value);
  } else if (key == "mu_vw") {
    config.population.mu_vw = to_double(key, value);
  } else if (key == "sigma_vw") {
    config.population.sigma_vw = to_double(key, value);
  } else if (key == "vw_sampling") {
    if (value == "clamp") {
      config.population.vw_sampling = VwSampling::clamp;
    } else if (value == "truncate") {
      config.population.vw_sampling = VwSampling::truncate;
    } else {
      throw std::invalid_argument("config: vw_sampling must be clamp or truncate");
    }
  } else if (key == "di_min") {
    config.grid.di_min = to_double(key, value);
  } else if (key == "di_max") {
    config.grid.di_max = to_double(key, value);
  } else if (key == "vw_min") {
    config.grid.vw_min = to_double(key, value);
  } else if (key == "vw_max") {
    config.grid.vw_max = to_double(key, value);
  } else if (key == "grid_step") {
    config.grid.step = to_double(key, value);
  } else if (key == "ar_ss_budget") {
    config.ar_ss_budget = to_int(key, value);
  } else if (key == "ar_direct_budget") {
    config.ar_direct_budget = to_int(key, value);
  } else if (key == "ar_direct_lo") {
    config.ar_direct_lo = to_int(key, value);
  } else if (key == "ar_direct_hi") {
    config.ar_direct_hi = to_int(key, value);
  } else if (key == "threads") {
    config.threads = to_int(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot read '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not 'key = value'");
    }
    apply_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace ugnorm
