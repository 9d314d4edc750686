#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fdrbench/matrix.hpp"
#include "fdrbench/rng.hpp"

namespace fdrbench {

// How log2 fold-changes are drawn for DE genes.
//   signed_magnitude: |log2 FC| ~ N(fc_log2_mean, fc_log2_sd^2) clamped to
//     >= fc_min_abs_log2, with an equiprobable random sign.
//   plain_normal: log2 FC ~ N(fc_log2_mean, fc_log2_sd^2) as-is.
enum class FcScheme { signed_magnitude, plain_normal };

struct SimulationConfig {
  std::int64_t n_genes = 10000;
  std::int64_t n_per_group = 10;
  double prop_de = 0.3;
  double dispersion = 0.05;
  double baseline_shape = 2.0;
  double baseline_scale = 0.5;
  double baseline_multiplier = 100.0;
  double library_mean = 80000.0;
  double fc_log2_mean = 1.1;
  double fc_log2_sd = 0.5;
  double fc_min_abs_log2 = 0.5;
  FcScheme fc_scheme = FcScheme::signed_magnitude;
  std::uint64_t seed = 42;

  // Throws config_error naming the offending field.
  void validate() const;
};

struct GroundTruth {
  std::vector<std::uint8_t> is_de;      // per gene
  std::vector<double> true_log2_fc;     // 0 exactly for non-DE genes
  std::vector<double> baseline_mean;    // per gene

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct CountMatrix {
  Matrix<std::int64_t> counts;               // n_genes x 2*n_per_group
  std::vector<char> group_labels;            // 'A' or 'B' per sample
  std::vector<std::int64_t> library_sizes;   // per sample, > 0

  std::size_t n_genes() const noexcept { return counts.rows(); }
  std::size_t n_samples() const noexcept { return counts.cols(); }

  friend bool operator==(const CountMatrix&, const CountMatrix&) = default;
};

// Number of DE genes implied by a config: round-half-to-even of prop_de * G.
std::int64_t de_gene_count(double prop_de, std::int64_t n_genes);

// Per-gene baseline means M_i = Gamma(shape, scale) * multiplier.
std::vector<double> draw_baseline_means(const SimulationConfig& cfg, Rng& rng);

// Flags exactly de_gene_count(...) genes, chosen uniformly without
// replacement (seeded partial Fisher-Yates).
std::vector<std::uint8_t> assign_de_genes(const SimulationConfig& cfg, Rng& rng);

// Per-gene log2 fold changes; 0 exactly where the DE flag is false.
std::vector<double> draw_log2_fold_changes(const SimulationConfig& cfg, Rng& rng,
                                           std::span<const std::uint8_t> de_flags);

// Per-gene fold changes (exp2 of the above); 1 exactly where the DE flag is
// false.
std::vector<double> draw_fold_changes(const SimulationConfig& cfg, Rng& rng,
                                      std::span<const std::uint8_t> de_flags);

// Expected counts mu_ij = M_i * (L_j / Lbar), times FC_i for group-B samples.
// Lbar is the arithmetic mean of the realized library sizes.
Matrix<double> compute_mean_matrix(std::span<const double> baselines,
                                   std::span<const double> fold_changes,
                                   std::span<const std::uint8_t> de_flags,
                                   std::span<const std::int64_t> library_sizes,
                                   std::span<const char> group_labels);

// Entrywise NB(mu_ij, dispersion) draws in row-major (gene, then sample)
// order so a fixed seed reproduces the matrix exactly.
Matrix<std::int64_t> simulate_counts(const Matrix<double>& mean_matrix,
                                     double dispersion, Rng& rng);

// Full generative pipeline: baselines, DE flags, fold changes, library sizes
// (Poisson around library_mean), mean matrix, NB counts.
std::pair<CountMatrix, GroundTruth> simulate_dataset(const SimulationConfig& cfg);

}  // namespace fdrbench
