// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Runs the full default design (G=10000, n=10 per group) end to end, so a
// complete pass takes on the order of ten seconds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fdrbench/adjust.hpp"
#include "fdrbench/de_test.hpp"
#include "fdrbench/metrics.hpp"
#include "fdrbench/plots.hpp"
#include "fdrbench/rng.hpp"
#include "fdrbench/runner.hpp"
#include "fdrbench/simulate.hpp"
#include "oracles.hpp"

using namespace fdrbench;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: the reference confusion counts reproduce the tabulated rates.

void criterion_rates() {
  const auto start = std::chrono::steady_clock::now();
  struct Row {
    std::int64_t tp, fp, tn, fn;
    double type1, fdr, power;
  };
  const Row rows[] = {
      {2754, 94, 6906, 246, 0.0134, 0.0330, 0.9180},
      {2252, 3, 6997, 748, 0.0004, 0.0013, 0.7507},
      {2764, 106, 6894, 236, 0.0151, 0.0369, 0.9213},
  };
  bool pass = true;
  double worst = 0.0;
  for (const auto& row : rows) {
    const auto rates = error_rates(row.tp, row.fp, row.tn, row.fn);
    for (const auto [got, want] : {std::pair{rates.type1, row.type1},
                                   std::pair{rates.fdr, row.fdr},
                                   std::pair{rates.power, row.power}}) {
      worst = std::max(worst, std::abs(got - want));
      pass = pass && std::abs(got - want) <= 1e-4;
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && elapsed < 1.0;
  report(1, "reference-table rate reproduction", pass,
         "max |rate error| = " + fmt(worst) + ", runtime " + fmt(elapsed) + "s");
}

// ---------------------------------------------------------------------------
// Criteria 2 + 7 (default scenario) and 8's AUC floor and 10's PCA check all
// come from the same 20-replicate default run.

struct DefaultRunStats {
  double bh_power = 0, bh_fdr = 0, by_power = 0, by_fdr = 0, storey_power = 0;
  bool nesting = true;
  double rep1_auc = 0.0;
  bool pca_separated = false;
  double pca_centroid_gap = 0.0;
  double pca_max_dev = 0.0;
};

DefaultRunStats run_default_scenario(int replicates) {
  SimulationConfig cfg;  // the full default design
  RunOptions opts;
  DefaultRunStats stats;

  for (int r = 1; r <= replicates; ++r) {
    SimulationConfig rep = cfg;
    rep.seed = cfg.seed + static_cast<std::uint64_t>(r);
    const auto [counts, truth] = simulate_dataset(rep);
    const TestResult tests = run_de_tests(counts, opts.test);

    const auto bh = adjust_bh(tests.p_value, opts.alpha);
    const auto by = adjust_by(tests.p_value, opts.alpha);
    const auto storey = storey_qvalues(tests.p_value, opts.alpha, opts.storey);

    for (std::size_t i = 0; i < bh.significant.size(); ++i) {
      if (by.significant[i] && !bh.significant[i]) stats.nesting = false;
      if (bh.significant[i] && !storey.significant[i]) stats.nesting = false;
    }

    const auto cm_bh = confusion(bh.significant, truth.is_de);
    const auto cm_by = confusion(by.significant, truth.is_de);
    const auto cm_st = confusion(storey.significant, truth.is_de);
    stats.bh_power += cm_bh.power / replicates;
    stats.bh_fdr += cm_bh.fdr / replicates;
    stats.by_power += cm_by.power / replicates;
    stats.by_fdr += cm_by.fdr / replicates;
    stats.storey_power += cm_st.power / replicates;

    if (r == 1) {
      stats.rep1_auc = roc_curve(tests.p_value, truth.is_de).auc;

      const auto proj = pca_projection(log2_transform(counts.counts));
      double centroid_a = 0.0, centroid_b = 0.0;
      const auto n = static_cast<double>(rep.n_per_group);
      for (std::size_t j = 0; j < counts.n_samples(); ++j) {
        (counts.group_labels[j] == 'B' ? centroid_b : centroid_a) += proj.pc1[j] / n;
      }
      for (std::size_t j = 0; j < counts.n_samples(); ++j) {
        const double centroid =
            counts.group_labels[j] == 'B' ? centroid_b : centroid_a;
        stats.pca_max_dev =
            std::max(stats.pca_max_dev, std::abs(proj.pc1[j] - centroid));
      }
      stats.pca_centroid_gap = std::abs(centroid_a - centroid_b);
      stats.pca_separated = stats.pca_centroid_gap > stats.pca_max_dev;
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Criterion 3: global null calibration (plus its share of criterion 7).

struct NullRunStats {
  double raw_rejection_fraction = 0.0;
  double bh_fp = 0.0, by_fp = 0.0, storey_fp = 0.0;
  bool nesting = true;
};

NullRunStats run_null_scenario(int replicates) {
  SimulationConfig cfg;
  cfg.prop_de = 0.0;
  RunOptions opts;
  NullRunStats stats;

  for (int r = 1; r <= replicates; ++r) {
    SimulationConfig rep = cfg;
    rep.seed = cfg.seed + static_cast<std::uint64_t>(r);
    const auto [counts, truth] = simulate_dataset(rep);
    const TestResult tests = run_de_tests(counts, opts.test);

    double rejected = 0.0;
    for (const double p : tests.p_value) {
      if (p < 0.05) rejected += 1.0;
    }
    stats.raw_rejection_fraction +=
        rejected / static_cast<double>(rep.n_genes) / replicates;

    const auto bh = adjust_bh(tests.p_value, opts.alpha);
    const auto by = adjust_by(tests.p_value, opts.alpha);
    const auto storey = storey_qvalues(tests.p_value, opts.alpha, opts.storey);
    for (std::size_t i = 0; i < bh.significant.size(); ++i) {
      if (by.significant[i] && !bh.significant[i]) stats.nesting = false;
      if (bh.significant[i] && !storey.significant[i]) stats.nesting = false;
    }
    stats.bh_fp += static_cast<double>(confusion(bh.significant, truth.is_de).fp) /
                   replicates;
    stats.by_fp += static_cast<double>(confusion(by.significant, truth.is_de).fp) /
                   replicates;
    stats.storey_fp +=
        static_cast<double>(confusion(storey.significant, truth.is_de).fp) /
        replicates;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Criterion 4: BH/BY against the definitional threshold search.

void criterion_correction_oracle() {
  Rng rng(20240601);
  bool pass = true;
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    const std::size_t g = 1 + static_cast<std::size_t>(rng.next_uniform() * 12);
    std::vector<double> p(g);
    for (auto& v : p) {
      v = rng.next_uniform() < 0.4 ? rng.next_uniform() * 0.08 : rng.next_uniform();
    }
    const double alpha = 0.01 + rng.next_uniform() * 0.2;

    pass = pass && adjust_bh(p, alpha).significant ==
                       oracles::brute_force_step_up(p, alpha, 1.0);
    pass = pass && adjust_by(p, alpha).significant ==
                       oracles::brute_force_step_up(p, alpha,
                                                    harmonic_number(g));
    const auto bh = adjust_bh(p, alpha);
    const auto q1 = qvalues(p, 1.0, alpha);
    pass = pass && q1.adjusted == bh.adjusted && q1.significant == bh.significant;
  }
  report(4, "correction oracle equivalence (G <= 12)", pass,
         pass ? "1000/1000 vectors matched brute force"
              : "mismatch against brute-force threshold search");
}

// ---------------------------------------------------------------------------
// Criterion 5: normal approximation vs exact enumeration, nA,nB <= 5.

void criterion_wilcoxon_oracle() {
  Rng rng(424242);
  double worst = 0.0;
  int worst_na = 0, worst_nb = 0;
  double worst_small_floor = 0.0;  // restricted to min group size >= 4
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int na = 1 + static_cast<int>(rng.next_uniform() * 5);
    const int nb = 1 + static_cast<int>(rng.next_uniform() * 5);
    std::vector<double> a(na), b(nb);
    for (auto& v : a) v = rng.sample_normal(0.0, 1.0);
    for (auto& v : b) v = rng.sample_normal(0.6, 1.0);
    const double approx = wilcoxon_rank_sum(a, b).p_value;
    const double exact = oracles::exact_rank_sum_p(a, b);
    const double diff = std::abs(approx - exact);
    if (diff > worst) {
      worst = diff;
      worst_na = na;
      worst_nb = nb;
    }
    if (std::min(na, nb) >= 4) worst_small_floor = std::max(worst_small_floor, diff);
    if (diff > 0.03) ++violations;
  }

  const std::vector<double> flat(6, 3.25);
  const bool degenerate_ok =
      wilcoxon_rank_sum(std::vector<double>(flat.begin(), flat.begin() + 3),
                        std::vector<double>(flat.begin() + 3, flat.end()))
          .p_value == 1.0;

  const bool pass = violations == 0 && degenerate_ok;
  std::string detail = "max |approx - exact| = " + fmt(worst) + " at nA=" +
                       std::to_string(worst_na) + ", nB=" + std::to_string(worst_nb) +
                       " (" + std::to_string(violations) +
                       "/500 cases above 0.03; max for min size >= 4: " +
                       fmt(worst_small_floor) + "); degenerate p=1 " +
                       (degenerate_ok ? "ok" : "violated");
  report(5, "Wilcoxon approximation vs exact enumeration", pass, detail);
}

// ---------------------------------------------------------------------------
// Criterion 6: NB sampler moments.

void criterion_nb_moments() {
  Rng rng(6001);
  const int n = 100000;
  auto moments = [&rng, n](double mu, double dispersion) {
    std::vector<double> xs(n);
    double sum = 0.0;
    for (auto& x : xs) {
      x = static_cast<double>(rng.sample_nb(mu, dispersion));
      sum += x;
    }
    const double mean = sum / n;
    double var = 0.0;
    for (const double x : xs) var += (x - mean) * (x - mean);
    return std::pair{mean, var / (n - 1)};
  };

  const auto [nb_mean, nb_var] = moments(100.0, 0.05);
  const bool nb_ok =
      std::abs(nb_mean - 100.0) <= 1.0 && std::abs(nb_var - 600.0) <= 30.0;

  const auto [po_mean, po_var] = moments(100.0, 0.0);
  const bool po_ok =
      std::abs(po_mean - 100.0) <= 1.0 && std::abs(po_var - 100.0) <= 5.0;

  report(6, "NB sampler moment law", nb_ok && po_ok,
         "NB(100, 0.05): mean " + fmt(nb_mean) + ", var " + fmt(nb_var) +
             "; alpha=0: mean " + fmt(po_mean) + ", var " + fmt(po_var));
}

// ---------------------------------------------------------------------------
// Criterion 8: AUC identity and the default-scenario floor.

void criterion_auc(double default_auc) {
  Rng rng(8080);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(rng.next_uniform() * 200);
    std::vector<double> p(n);
    std::vector<std::uint8_t> truth(n, 0);
    bool any_true = false, any_false = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double raw = rng.next_uniform();
      p[i] = rng.next_uniform() < 0.5 ? std::round(raw * 25.0) / 25.0 : raw;
      truth[i] = rng.next_uniform() < 0.3 ? 1 : 0;
      (truth[i] ? any_true : any_false) = true;
    }
    if (!any_true || !any_false) continue;
    const double trapezoid = roc_curve(p, truth).auc;
    const double pairs = oracles::concordance_auc(p, truth);
    worst = std::max(worst, std::abs(trapezoid - pairs));
  }
  const bool pass = worst <= 1e-9 && default_auc > 0.95;
  report(8, "AUC identity and default-scenario AUC", pass,
         "max |trapezoid - concordance| = " + fmt(worst) +
             "; default-run AUC = " + fmt(default_auc));
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical outputs for identical configs.

void criterion_determinism() {
  namespace fs = std::filesystem;
  SimulationConfig cfg;  // full default design
  RunOptions opts;
  opts.emit.matrix = true;
  opts.emit.truth = true;

  auto slurp_dir = [](const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::ifstream in(entry.path(), std::ios::binary);
      std::stringstream buffer;
      buffer << in.rdbuf();
      files.emplace_back(entry.path().filename().string(), buffer.str());
    }
    std::sort(files.begin(), files.end());
    return files;
  };

  const auto base = fs::temp_directory_path();
  const auto dir_a = base / "fdrbench_accept_a";
  const auto dir_b = base / "fdrbench_accept_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  opts.output_dir = dir_a.string();
  write_outputs(run_experiment(cfg, opts), opts);
  opts.output_dir = dir_b.string();
  write_outputs(run_experiment(cfg, opts), opts);

  const auto files_a = slurp_dir(dir_a);
  const auto files_b = slurp_dir(dir_b);
  const bool pass = !files_a.empty() && files_a == files_b;
  report(9, "byte-identical outputs for identical config", pass,
         std::to_string(files_a.size()) + " files compared");
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

}  // namespace

int main() {
  criterion_rates();

  const auto t0 = std::chrono::steady_clock::now();
  const DefaultRunStats def = run_default_scenario(20);
  const double default_elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool c2 = def.bh_power >= 0.85 && def.bh_power <= 0.95 &&
                  def.bh_fdr <= 0.05 && def.by_power <= def.bh_power - 0.10 &&
                  def.by_fdr <= 0.005 && def.storey_power >= def.bh_power &&
                  default_elapsed < 300.0;
  report(2, "default-scenario statistical reproduction (20 replicates)", c2,
         "BH power " + fmt(def.bh_power) + " (want [0.85,0.95]), BH FDR " +
             fmt(def.bh_fdr) + " (<= 0.05), BY power " + fmt(def.by_power) +
             " (<= BH - 0.10), BY FDR " + fmt(def.by_fdr) +
             " (<= 0.005), StoreyQ power " + fmt(def.storey_power) +
             " (>= BH); runtime " + fmt(default_elapsed) + "s");

  const NullRunStats null_run = run_null_scenario(20);
  const bool c3 = std::abs(null_run.raw_rejection_fraction - 0.05) <= 0.015 &&
                  null_run.bh_fp <= 2.0 && null_run.by_fp <= 2.0 &&
                  null_run.storey_fp <= 2.0;
  report(3, "global-null calibration (20 replicates)", c3,
         "raw p<0.05 fraction " + fmt(null_run.raw_rejection_fraction) +
             " (want 0.05 +/- 0.015); mean false discoveries BH " +
             fmt(null_run.bh_fp) + ", BY " + fmt(null_run.by_fp) + ", StoreyQ " +
             fmt(null_run.storey_fp) + " (each <= 2)");

  criterion_correction_oracle();
  criterion_wilcoxon_oracle();
  criterion_nb_moments();

  report(7, "significance nesting BY within BH within StoreyQ",
         def.nesting && null_run.nesting,
         "checked per gene in all replicates of criteria 2 and 3");

  criterion_auc(def.rep1_auc);
  criterion_determinism();

  report(10, "PCA group separation on the default scenario", def.pca_separated,
         "PC1 centroid gap " + fmt(def.pca_centroid_gap) +
             " vs max within-group deviation " + fmt(def.pca_max_dev));

  if (failures > 0) {
    std::printf("%d of 10 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
