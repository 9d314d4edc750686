#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdrbench/de_test.hpp"
#include "fdrbench/matrix.hpp"
#include "fdrbench/simulate.hpp"

namespace fdrbench {

inline constexpr int kHistogramBins = 30;

struct PlotRow {
  std::int64_t gene = 0;
  double x = 0.0;
  double y = 0.0;
  bool is_de = false;
};

// Volcano: x = estimated log2 FC, y = -log10(p).
std::vector<PlotRow> volcano_data(const TestResult& result, const GroundTruth& truth);

// MA: per gene, with group mean counts mA/mB and a +1 pseudo-count,
//   x = A = (log2(mB + 1) + log2(mA + 1)) / 2
//   y = M = log2(mB + 1) - log2(mA + 1).
std::vector<PlotRow> ma_data(const CountMatrix& counts,
                             std::span<const std::uint8_t> de_flags);

struct ProjectionResult {
  std::vector<double> pc1;                 // per sample
  std::vector<double> pc2;                 // per sample
  std::vector<double> variance_explained;  // per component, sums to 1
};

// Sample projection onto the top two principal axes of the gene-centered
// expression matrix (SVD). Component signs are fixed by forcing the
// largest-magnitude gene loading positive.
ProjectionResult pca_projection(const Matrix<double>& log_counts);

struct SampleDistribution {
  double q0 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q100 = 0.0;
  std::vector<std::int64_t> histogram;  // kHistogramBins over the global range
};

// Per-sample five-number summary and fixed-bin histogram; all samples share
// one bin grid spanning the global [min, max].
std::vector<SampleDistribution> distribution_summary(const Matrix<double>& log_counts);

}  // namespace fdrbench
