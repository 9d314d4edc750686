#include "fdrbench/plots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdrbench {

std::vector<PlotRow> volcano_data(const TestResult& result, const GroundTruth& truth) {
  const std::size_t g = result.p_value.size();
  if (truth.is_de.size() != g || result.est_log2_fc.size() != g) {
    throw std::invalid_argument("volcano_data: input lengths must match");
  }
  std::vector<PlotRow> rows(g);
  for (std::size_t i = 0; i < g; ++i) {
    rows[i] = {static_cast<std::int64_t>(i), result.est_log2_fc[i],
               -std::log10(result.p_value[i]), truth.is_de[i] != 0};
  }
  return rows;
}

std::vector<PlotRow> ma_data(const CountMatrix& counts,
                             std::span<const std::uint8_t> de_flags) {
  const std::size_t g = counts.n_genes();
  const std::size_t s = counts.n_samples();
  if (de_flags.size() != g || counts.group_labels.size() != s) {
    throw std::invalid_argument("ma_data: input lengths must match");
  }
  double na = 0.0, nb = 0.0;
  for (const char label : counts.group_labels) (label == 'B' ? nb : na) += 1.0;
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("ma_data: both groups must be present");
  }

  std::vector<PlotRow> rows(g);
  for (std::size_t i = 0; i < g; ++i) {
    double sum_a = 0.0, sum_b = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      const auto c = static_cast<double>(counts.counts(i, j));
      (counts.group_labels[j] == 'B' ? sum_b : sum_a) += c;
    }
    const double la = std::log2(sum_a / na + 1.0);
    const double lb = std::log2(sum_b / nb + 1.0);
    rows[i] = {static_cast<std::int64_t>(i), 0.5 * (lb + la), lb - la,
               de_flags[i] != 0};
  }
  return rows;
}

ProjectionResult pca_projection(const Matrix<double>& log_counts) {
  const std::size_t g = log_counts.rows();
  const std::size_t s = log_counts.cols();
  if (s < 2) {
    throw std::invalid_argument("pca_projection: need at least 2 samples");
  }

  Eigen::MatrixXd centered(g, s);
  for (std::size_t i = 0; i < g; ++i) {
    const auto row = log_counts.row(i);
    double mean = 0.0;
    for (const double v : row) mean += v;
    mean /= static_cast<double>(s);
    for (std::size_t j = 0; j < s; ++j) {
      centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j] - mean;
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::MatrixXd loadings = svd.matrixU();   // gene space, g x r
  Eigen::MatrixXd axes = svd.matrixV();       // sample space, s x r
  const Eigen::Index r = sigma.size();

  // Deterministic sign: largest-|.| gene loading of each axis is positive.
  for (Eigen::Index c = 0; c < r; ++c) {
    Eigen::Index arg_max = 0;
    loadings.col(c).cwiseAbs().maxCoeff(&arg_max);
    if (loadings(arg_max, c) < 0.0) {
      loadings.col(c) = -loadings.col(c);
      axes.col(c) = -axes.col(c);
    }
  }

  ProjectionResult out;
  out.pc1.resize(s);
  out.pc2.resize(s, 0.0);
  for (std::size_t j = 0; j < s; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out.pc1[j] = axes(jj, 0) * sigma(0);
    if (r > 1) out.pc2[j] = axes(jj, 1) * sigma(1);
  }

  const double total = sigma.array().square().sum();
  out.variance_explained.resize(static_cast<std::size_t>(r), 0.0);
  if (total > 0.0) {
    for (Eigen::Index c = 0; c < r; ++c) {
      out.variance_explained[static_cast<std::size_t>(c)] =
          sigma(c) * sigma(c) / total;
    }
  }
  return out;
}

namespace {

// Linear-interpolation quantile of pre-sorted values.
double quantile_sorted(const std::vector<double>& sorted, double prob) {
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - std::floor(h);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<SampleDistribution> distribution_summary(const Matrix<double>& log_counts) {
  const std::size_t g = log_counts.rows();
  const std::size_t s = log_counts.cols();
  if (g == 0 || s == 0) {
    throw std::invalid_argument("distribution_summary: matrix must be nonempty");
  }

  double global_min = log_counts.data()[0];
  double global_max = log_counts.data()[0];
  for (const double v : log_counts.data()) {
    global_min = std::min(global_min, v);
    global_max = std::max(global_max, v);
  }
  const double width = global_max - global_min;

  std::vector<SampleDistribution> out(s);
  std::vector<double> column(g);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < g; ++i) column[i] = log_counts(i, j);
    std::sort(column.begin(), column.end());

    auto& dist = out[j];
    dist.q0 = column.front();
    dist.q25 = quantile_sorted(column, 0.25);
    dist.q50 = quantile_sorted(column, 0.50);
    dist.q75 = quantile_sorted(column, 0.75);
    dist.q100 = column.back();

    dist.histogram.assign(kHistogramBins, 0);
    for (const double v : column) {
      std::size_t bin = 0;
      if (width > 0.0) {
        bin = static_cast<std::size_t>((v - global_min) / width * kHistogramBins);
        bin = std::min(bin, static_cast<std::size_t>(kHistogramBins - 1));
      }
      dist.histogram[bin] += 1;
    }
  }
  return out;
}

}  // namespace fdrbench
