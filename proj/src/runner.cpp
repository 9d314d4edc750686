#include "fdrbench/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fdrbench/adjust.hpp"
#include "fdrbench/de_test.hpp"
#include "fdrbench/errors.hpp"
#include "fdrbench/format.hpp"

namespace fdrbench {

namespace {

using nlohmann::json;

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd out;
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (const double x : xs) sum += x;
  out.mean = sum / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

MethodAggregate aggregate_method(const std::vector<ReplicateRow>& rows,
                                 std::size_t method_index) {
  std::vector<double> type1, fdr, power, tp, fp, tn, fn;
  for (const auto& row : rows) {
    const auto& cm = row.methods[method_index];
    type1.push_back(cm.type1);
    fdr.push_back(cm.fdr);
    power.push_back(cm.power);
    tp.push_back(static_cast<double>(cm.tp));
    fp.push_back(static_cast<double>(cm.fp));
    tn.push_back(static_cast<double>(cm.tn));
    fn.push_back(static_cast<double>(cm.fn));
  }
  return {mean_sd(type1), mean_sd(fdr), mean_sd(power), mean_sd(tp),
          mean_sd(fp),    mean_sd(tn),  mean_sd(fn)};
}

json mean_sd_json(const MeanSd& ms) {
  return json{{"mean", ms.mean}, {"sd", ms.sd}};
}

std::string sample_id(std::span<const char> labels, std::size_t j) {
  std::size_t nth = 0;
  for (std::size_t k = 0; k <= j; ++k) {
    if (labels[k] == labels[j]) ++nth;
  }
  return std::string(1, labels[j]) + std::to_string(nth);
}

class FileWriter {
 public:
  explicit FileWriter(const std::filesystem::path& path)
      : path_(path.string()), out_(path, std::ios::binary) {
    if (!out_) throw io_error("cannot open output file", path_);
  }

  template <typename T>
  FileWriter& operator<<(const T& value) {
    out_ << value;
    return *this;
  }

  void close() {
    out_.close();
    if (!out_) throw io_error("failed writing output file", path_);
  }

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace

ExperimentOutputs run_experiment(const SimulationConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  opts.validate();

  ExperimentOutputs outputs;
  outputs.summary.config = cfg;
  outputs.summary.options = opts;

  for (std::int64_t r = 1; r <= opts.replicates; ++r) {
    SimulationConfig rep_cfg = cfg;
    rep_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
    try {
      auto [counts, truth] = simulate_dataset(rep_cfg);
      const TestResult tests = run_de_tests(counts, opts.test);

      const std::array<AdjustedResults, 3> adjusted = {
          adjust_bh(tests.p_value, opts.alpha),
          adjust_by(tests.p_value, opts.alpha),
          storey_qvalues(tests.p_value, opts.alpha, opts.storey),
      };

      ReplicateRow row;
      row.replicate = r;
      row.seed = rep_cfg.seed;
      for (std::size_t m = 0; m < adjusted.size(); ++m) {
        ConfusionSummary cm = confusion(adjusted[m].significant, truth.is_de);
        cm.type1 = round_sig6(cm.type1);
        cm.fdr = round_sig6(cm.fdr);
        cm.power = round_sig6(cm.power);
        row.methods[m] = cm;
      }
      outputs.summary.rows.push_back(row);

      if (r == 1) {
        const auto& emit = opts.emit;
        if (emit.volcano) outputs.volcano = volcano_data(tests, truth);
        if (emit.ma) outputs.ma = ma_data(counts, truth.is_de);
        if (emit.roc) outputs.roc = roc_curve(tests.p_value, truth.is_de);
        if (emit.pr) outputs.pr = pr_curve(tests.p_value, truth.is_de);
        if (emit.pca || emit.dist) {
          const Matrix<double> logm =
              log2_transform(counts.counts, opts.test.pseudo_count);
          if (emit.pca) outputs.pca = pca_projection(logm);
          if (emit.dist) outputs.dist = distribution_summary(logm);
        }
        outputs.first_counts = std::move(counts);
        outputs.first_truth = std::move(truth);
      }
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("replicate " + std::to_string(r) + " (seed " +
                               std::to_string(rep_cfg.seed) + "): " + e.what());
    }
  }

  for (std::size_t m = 0; m < kAllMethods.size(); ++m) {
    outputs.summary.aggregates[m] = aggregate_method(outputs.summary.rows, m);
  }
  return outputs;
}

std::string summary_json(const ExperimentSummary& summary) {
  json j;
  j["alpha"] = summary.options.alpha;
  j["replicates"] = summary.options.replicates;
  j["config"] = json::parse(config_json(summary.config, summary.options));

  json seeds = json::array();
  for (const auto& row : summary.rows) seeds.push_back(row.seed);
  j["seeds"] = seeds;

  json methods;
  for (std::size_t m = 0; m < kAllMethods.size(); ++m) {
    const auto& agg = summary.aggregates[m];
    methods[method_name(kAllMethods[m])] = {
        {"type1", mean_sd_json(agg.type1)}, {"fdr", mean_sd_json(agg.fdr)},
        {"power", mean_sd_json(agg.power)}, {"tp", mean_sd_json(agg.tp)},
        {"fp", mean_sd_json(agg.fp)},       {"tn", mean_sd_json(agg.tn)},
        {"fn", mean_sd_json(agg.fn)},
    };
  }
  j["methods"] = methods;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const ExperimentOutputs& outputs,
                                       const RunOptions& opts) {
  namespace fs = std::filesystem;
  if (opts.output_dir.empty()) {
    throw io_error("output directory not set", "<empty>");
  }
  const fs::path dir(opts.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory", dir.string());

  std::vector<std::string> written;
  const auto& emit = opts.emit;

  {
    FileWriter out(dir / "summary.json");
    out << summary_json(outputs.summary);
    out.close();
    written.push_back(out.path());
  }

  {
    FileWriter out(dir / "metrics.csv");
    out << "method,replicate,seed,tp,fp,tn,fn,type1,fdr,power\n";
    for (const auto& row : outputs.summary.rows) {
      for (std::size_t m = 0; m < kAllMethods.size(); ++m) {
        const auto& cm = row.methods[m];
        out << method_name(kAllMethods[m]) << ',' << row.replicate << ','
            << row.seed << ',' << cm.tp << ',' << cm.fp << ',' << cm.tn << ','
            << cm.fn << ',' << format_number(cm.type1) << ','
            << format_number(cm.fdr) << ',' << format_number(cm.power) << '\n';
      }
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.volcano) {
    FileWriter out(dir / "volcano.csv");
    out << "gene,log2fc,neglog10p,is_de\n";
    for (const auto& row : outputs.volcano) {
      out << (row.gene + 1) << ',' << format_number(row.x) << ','
          << format_number(row.y) << ',' << (row.is_de ? 1 : 0) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.ma) {
    FileWriter out(dir / "ma.csv");
    out << "gene,a,m,is_de\n";
    for (const auto& row : outputs.ma) {
      out << (row.gene + 1) << ',' << format_number(row.x) << ','
          << format_number(row.y) << ',' << (row.is_de ? 1 : 0) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.roc) {
    FileWriter out(dir / "roc.csv");
    out << "fpr,tpr\n";
    for (const auto& point : outputs.roc.points) {
      out << format_number(point.x) << ',' << format_number(point.y) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.pr) {
    FileWriter out(dir / "pr.csv");
    out << "recall,precision\n";
    for (const auto& point : outputs.pr.points) {
      out << format_number(point.x) << ',' << format_number(point.y) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  const auto& labels = outputs.first_counts.group_labels;

  if (emit.pca) {
    FileWriter out(dir / "pca.csv");
    out << "sample,group,pc1,pc2\n";
    for (std::size_t j = 0; j < outputs.pca.pc1.size(); ++j) {
      out << sample_id(labels, j) << ',' << labels[j] << ','
          << format_number(outputs.pca.pc1[j]) << ','
          << format_number(outputs.pca.pc2[j]) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.dist) {
    FileWriter out(dir / "dist.csv");
    out << "sample,group,q0,q25,q50,q75,q100\n";
    for (std::size_t j = 0; j < outputs.dist.size(); ++j) {
      const auto& d = outputs.dist[j];
      out << sample_id(labels, j) << ',' << labels[j] << ','
          << format_number(d.q0) << ',' << format_number(d.q25) << ','
          << format_number(d.q50) << ',' << format_number(d.q75) << ','
          << format_number(d.q100) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.matrix) {
    FileWriter out(dir / "counts.csv");
    out << "gene";
    for (std::size_t j = 0; j < labels.size(); ++j) out << ',' << sample_id(labels, j);
    out << '\n';
    const auto& counts = outputs.first_counts.counts;
    for (std::size_t i = 0; i < counts.rows(); ++i) {
      out << (i + 1);
      for (std::size_t j = 0; j < counts.cols(); ++j) out << ',' << counts(i, j);
      out << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  if (emit.truth) {
    FileWriter out(dir / "truth.csv");
    out << "gene,is_de,true_log2fc,baseline_mean\n";
    const auto& truth = outputs.first_truth;
    for (std::size_t i = 0; i < truth.is_de.size(); ++i) {
      out << (i + 1) << ',' << (truth.is_de[i] ? 1 : 0) << ','
          << format_number(truth.true_log2_fc[i]) << ','
          << format_number(truth.baseline_mean[i]) << '\n';
    }
    out.close();
    written.push_back(out.path());
  }

  return written;
}

}  // namespace fdrbench
