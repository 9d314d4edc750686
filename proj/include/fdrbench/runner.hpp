#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fdrbench/config.hpp"
#include "fdrbench/metrics.hpp"
#include "fdrbench/plots.hpp"
#include "fdrbench/simulate.hpp"

namespace fdrbench {

inline constexpr std::array<Method, 3> kAllMethods = {Method::bh, Method::by,
                                                      Method::storey_q};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample sd; 0 for a single replicate
};

struct MethodAggregate {
  MeanSd type1, fdr, power, tp, fp, tn, fn;
};

struct ReplicateRow {
  std::int64_t replicate = 0;
  std::uint64_t seed = 0;
  std::array<ConfusionSummary, 3> methods;  // kAllMethods order
};

struct ExperimentSummary {
  SimulationConfig config;
  RunOptions options;
  std::vector<ReplicateRow> rows;
  std::array<MethodAggregate, 3> aggregates;  // kAllMethods order
};

// Everything a run produces; the plot payloads come from replicate 1 and
// are only filled for the emit flags that are on.
struct ExperimentOutputs {
  ExperimentSummary summary;
  std::vector<PlotRow> volcano;
  std::vector<PlotRow> ma;
  CurveSeries roc;
  CurveSeries pr;
  ProjectionResult pca;
  std::vector<SampleDistribution> dist;
  CountMatrix first_counts;
  GroundTruth first_truth;
};

// Replicate r uses seed = cfg.seed + r; each replicate simulates, tests,
// applies all three corrections at opts.alpha, and scores against truth.
// Per-replicate rates are pre-rounded to the CSV precision so the written
// rows and the reported aggregates agree exactly.
ExperimentOutputs run_experiment(const SimulationConfig& cfg, const RunOptions& opts);

// Writes summary.json, metrics.csv, and the flagged plot-data files into
// opts.output_dir; returns the paths written. Same inputs give
// byte-identical files.
std::vector<std::string> write_outputs(const ExperimentOutputs& outputs,
                                       const RunOptions& opts);

// summary.json body (exposed for tests).
std::string summary_json(const ExperimentSummary& summary);

}  // namespace fdrbench
