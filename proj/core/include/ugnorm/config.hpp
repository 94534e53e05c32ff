#pragma once

#include <string>

#include "ugnorm/experiments.hpp"

namespace ugnorm {

// Applies one "key = value" setting. Throws std::invalid_argument on an
// unknown key or a malformed value. Keys and defaults are listed in the
// README.
void apply_config_value(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

// Loads a flat key = value file ('#' starts a comment) on top of base.
// Throws std::runtime_error if the file cannot be read.
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base);

}  // namespace ugnorm
