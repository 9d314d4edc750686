#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "fdrbench/adjust.hpp"
#include "fdrbench/de_test.hpp"
#include "fdrbench/simulate.hpp"

namespace fdrbench {

struct EmitFlags {
  bool volcano = true;
  bool ma = true;
  bool roc = true;
  bool pr = true;
  bool pca = true;
  bool dist = true;
  bool matrix = false;  // counts.csv
  bool truth = false;   // truth.csv
};

struct RunOptions {
  std::string config_path;
  std::string output_dir;
  std::int64_t replicates = 1;
  double alpha = 0.05;
  EmitFlags emit;
  TestOptions test;
  StoreyOptions storey;

  void validate() const;  // throws config_error naming the field
};

// Reads a config file: either flat `key = value` lines (# comments allowed)
// or a JSON object with the same keys. Unset keys keep their defaults;
// unknown keys are rejected. Throws io_error if the file cannot be read and
// config_error for malformed or out-of-range content.
std::pair<SimulationConfig, RunOptions> parse_config(const std::string& path);

// Same parser over an in-memory string (the config_path is left empty).
std::pair<SimulationConfig, RunOptions> parse_config_text(const std::string& text);

// Parses "volcano,ma,roc,..." into flags; every listed name is enabled and
// everything else disabled.
EmitFlags parse_emit_list(const std::string& names);

// JSON echo of every parseable key (excludes output paths, so two runs of
// one config serialize identically). parse_config_text() round-trips it.
std::string config_json(const SimulationConfig& cfg, const RunOptions& opts);

}  // namespace fdrbench
