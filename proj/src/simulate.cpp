#include "fdrbench/simulate.hpp"

#include <cfenv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fdrbench/errors.hpp"

namespace fdrbench {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw config_error(message);
}

}  // namespace

void SimulationConfig::validate() const {
  require(n_genes > 0, "n_genes must be > 0");
  require(n_per_group > 0, "n_per_group must be > 0");
  require(prop_de >= 0.0 && prop_de <= 1.0,
          "prop_de must be in [0,1] (got " + std::to_string(prop_de) + ")");
  require(dispersion >= 0.0, "dispersion must be >= 0");
  require(baseline_shape > 0.0, "baseline_shape must be > 0");
  require(baseline_scale > 0.0, "baseline_scale must be > 0");
  require(baseline_multiplier > 0.0, "baseline_multiplier must be > 0");
  require(library_mean > 0.0, "library_mean must be > 0");
  require(std::isfinite(fc_log2_mean), "fc_log2_mean must be finite");
  require(fc_log2_sd >= 0.0, "fc_log2_sd must be >= 0");
  require(fc_min_abs_log2 >= 0.0, "fc_min_abs_log2 must be >= 0");
}

std::int64_t de_gene_count(double prop_de, std::int64_t n_genes) {
  // nearbyint under the default FE_TONEAREST mode rounds half to even.
  return static_cast<std::int64_t>(
      std::nearbyint(prop_de * static_cast<double>(n_genes)));
}

std::vector<double> draw_baseline_means(const SimulationConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<double> means(static_cast<std::size_t>(cfg.n_genes));
  for (auto& m : means) {
    m = rng.sample_gamma(cfg.baseline_shape, cfg.baseline_scale) *
        cfg.baseline_multiplier;
  }
  return means;
}

std::vector<std::uint8_t> assign_de_genes(const SimulationConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto g = static_cast<std::size_t>(cfg.n_genes);
  const auto n_de = static_cast<std::size_t>(de_gene_count(cfg.prop_de, cfg.n_genes));

  std::vector<std::uint32_t> index(g);
  std::iota(index.begin(), index.end(), 0u);
  // Partial Fisher-Yates: only the first n_de slots need shuffling.
  for (std::size_t i = 0; i < n_de; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.next_uniform() *
                                                static_cast<double>(g - i));
    std::swap(index[i], index[j]);
  }

  std::vector<std::uint8_t> flags(g, 0);
  for (std::size_t i = 0; i < n_de; ++i) flags[index[i]] = 1;
  return flags;
}

std::vector<double> draw_log2_fold_changes(const SimulationConfig& cfg, Rng& rng,
                                           std::span<const std::uint8_t> de_flags) {
  cfg.validate();
  if (de_flags.size() != static_cast<std::size_t>(cfg.n_genes)) {
    throw std::invalid_argument("draw_fold_changes: flag vector length mismatch");
  }
  std::vector<double> log2_fc(de_flags.size(), 0.0);
  for (std::size_t i = 0; i < de_flags.size(); ++i) {
    if (!de_flags[i]) continue;
    if (cfg.fc_scheme == FcScheme::signed_magnitude) {
      double magnitude = rng.sample_normal(cfg.fc_log2_mean, cfg.fc_log2_sd);
      magnitude = std::max(magnitude, cfg.fc_min_abs_log2);
      const double sign = rng.next_uniform() < 0.5 ? -1.0 : 1.0;
      log2_fc[i] = sign * magnitude;
    } else {
      log2_fc[i] = rng.sample_normal(cfg.fc_log2_mean, cfg.fc_log2_sd);
    }
  }
  return log2_fc;
}

std::vector<double> draw_fold_changes(const SimulationConfig& cfg, Rng& rng,
                                      std::span<const std::uint8_t> de_flags) {
  std::vector<double> fc = draw_log2_fold_changes(cfg, rng, de_flags);
  for (auto& f : fc) f = std::exp2(f);
  return fc;
}

Matrix<double> compute_mean_matrix(std::span<const double> baselines,
                                   std::span<const double> fold_changes,
                                   std::span<const std::uint8_t> de_flags,
                                   std::span<const std::int64_t> library_sizes,
                                   std::span<const char> group_labels) {
  const std::size_t g = baselines.size();
  const std::size_t s = library_sizes.size();
  if (fold_changes.size() != g || de_flags.size() != g) {
    throw std::invalid_argument("compute_mean_matrix: per-gene vector length mismatch");
  }
  if (group_labels.size() != s || s == 0) {
    throw std::invalid_argument("compute_mean_matrix: per-sample vector length mismatch");
  }
  double lib_sum = 0.0;
  for (const auto lib : library_sizes) {
    if (lib <= 0) {
      throw std::invalid_argument("compute_mean_matrix: library sizes must be > 0");
    }
    lib_sum += static_cast<double>(lib);
  }
  const double lib_bar = lib_sum / static_cast<double>(s);

  std::vector<double> scale(s);
  for (std::size_t j = 0; j < s; ++j) {
    scale[j] = static_cast<double>(library_sizes[j]) / lib_bar;
  }

  Matrix<double> mu(g, s);
  for (std::size_t i = 0; i < g; ++i) {
    const double base_a = baselines[i];
    const double base_b = baselines[i] * fold_changes[i];
    for (std::size_t j = 0; j < s; ++j) {
      mu(i, j) = (group_labels[j] == 'B' ? base_b : base_a) * scale[j];
    }
  }
  return mu;
}

Matrix<std::int64_t> simulate_counts(const Matrix<double>& mean_matrix,
                                     double dispersion, Rng& rng) {
  Matrix<std::int64_t> counts(mean_matrix.rows(), mean_matrix.cols());
  for (std::size_t i = 0; i < mean_matrix.rows(); ++i) {
    for (std::size_t j = 0; j < mean_matrix.cols(); ++j) {
      counts(i, j) = rng.sample_nb(mean_matrix(i, j), dispersion);
    }
  }
  return counts;
}

std::pair<CountMatrix, GroundTruth> simulate_dataset(const SimulationConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  GroundTruth truth;
  truth.baseline_mean = draw_baseline_means(cfg, rng);
  truth.is_de = assign_de_genes(cfg, rng);
  truth.true_log2_fc = draw_log2_fold_changes(cfg, rng, truth.is_de);
  std::vector<double> fc(truth.true_log2_fc.size());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    fc[i] = truth.is_de[i] ? std::exp2(truth.true_log2_fc[i]) : 1.0;
  }

  CountMatrix cm;
  const auto n = static_cast<std::size_t>(cfg.n_per_group);
  cm.group_labels.resize(2 * n);
  std::fill(cm.group_labels.begin(), cm.group_labels.begin() + n, 'A');
  std::fill(cm.group_labels.begin() + n, cm.group_labels.end(), 'B');

  cm.library_sizes.resize(2 * n);
  for (auto& lib : cm.library_sizes) {
    // A zero draw would leave the depth scaling undefined; reject and redraw
    // (only reachable for tiny library_mean).
    do {
      lib = rng.sample_poisson(cfg.library_mean);
    } while (lib == 0);
  }

  const Matrix<double> mu =
      compute_mean_matrix(truth.baseline_mean, fc, truth.is_de,
                          cm.library_sizes, cm.group_labels);
  cm.counts = simulate_counts(mu, cfg.dispersion, rng);
  return {std::move(cm), std::move(truth)};
}

}  // namespace fdrbench
