#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fdrbench/adjust.hpp"
#include "fdrbench/config.hpp"
#include "fdrbench/errors.hpp"
#include "fdrbench/format.hpp"
#include "fdrbench/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

std::vector<double> read_pvalue_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fdrbench::io_error("cannot open p-value file", path);

  std::string line;
  if (!std::getline(in, line)) {
    throw fdrbench::config_error("p-value file is empty: " + path);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "p") {
    throw fdrbench::config_error("p-value file must start with header 'p': " + path);
  }

  std::vector<double> pvals;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      const double p = std::stod(line, &used);
      if (used != line.size()) throw std::invalid_argument(line);
      pvals.push_back(p);
    } catch (const std::exception&) {
      throw fdrbench::config_error("line " + std::to_string(line_no) +
                                   " of " + path + " is not a number: " + line);
    }
  }
  if (pvals.empty()) {
    throw fdrbench::config_error("p-value file has no data rows: " + path);
  }
  return pvals;
}

struct RunOverrides {
  bool has_replicates = false;
  std::int64_t replicates = 0;
  bool has_alpha = false;
  double alpha = 0.0;
  bool has_emit = false;
  std::string emit;
};

int run_command(const std::string& config_path, const std::string& out_dir,
                const RunOverrides& overrides) {
  auto [cfg, opts] = fdrbench::parse_config(config_path);
  opts.output_dir = out_dir;
  if (overrides.has_replicates) opts.replicates = overrides.replicates;
  if (overrides.has_alpha) opts.alpha = overrides.alpha;
  if (overrides.has_emit) opts.emit = fdrbench::parse_emit_list(overrides.emit);
  opts.validate();

  const fdrbench::ExperimentOutputs outputs = fdrbench::run_experiment(cfg, opts);
  const auto written = fdrbench::write_outputs(outputs, opts);

  for (const auto& path : written) std::cout << "wrote " << path << '\n';
  for (std::size_t m = 0; m < fdrbench::kAllMethods.size(); ++m) {
    const auto& agg = outputs.summary.aggregates[m];
    std::cout << fdrbench::method_name(fdrbench::kAllMethods[m])
              << ": type1=" << fdrbench::format_number(agg.type1.mean)
              << " fdr=" << fdrbench::format_number(agg.fdr.mean)
              << " power=" << fdrbench::format_number(agg.power.mean) << '\n';
  }
  return kExitOk;
}

int adjust_command(const std::string& pvalue_path, const std::string& method_name,
                   double alpha, double lambda) {
  const std::vector<double> pvals = read_pvalue_csv(pvalue_path);
  const fdrbench::Method method = fdrbench::method_from_name(method_name);

  fdrbench::AdjustedResults results;
  switch (method) {
    case fdrbench::Method::bh:
      results = fdrbench::adjust_bh(pvals, alpha);
      break;
    case fdrbench::Method::by:
      results = fdrbench::adjust_by(pvals, alpha);
      break;
    case fdrbench::Method::storey_q:
      results = fdrbench::storey_qvalues(pvals, alpha, {.lambda = lambda});
      break;
  }

  std::cout << "p,adjusted,significant\n";
  for (std::size_t i = 0; i < pvals.size(); ++i) {
    std::cout << fdrbench::format_number(pvals[i]) << ','
              << fdrbench::format_number(results.adjusted[i]) << ','
              << int(results.significant[i]) << '\n';
  }

  std::size_t n_significant = 0;
  for (const auto s : results.significant) n_significant += s;
  std::cerr << "method=" << fdrbench::method_name(method) << " alpha=" << alpha
            << " pi0_hat=" << results.pi0_hat << " significant=" << n_significant
            << "/" << pvals.size() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation benchmark for FDR-controlling procedures on "
               "overdispersed count data"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  RunOverrides overrides;
  auto* run = app.add_subcommand("run", "Simulate, test, correct, and score");
  run->add_option("--config", config_path, "Config file (key=value or JSON)")
      ->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  auto* rep_opt =
      run->add_option("--replicates", overrides.replicates, "Override replicate count");
  auto* alpha_opt =
      run->add_option("--alpha", overrides.alpha, "Override significance level");
  auto* emit_opt =
      run->add_option("--emit", overrides.emit,
                      "Comma list of volcano,ma,roc,pr,pca,dist,matrix,truth");

  std::string pvalue_path, method = "bh";
  double adjust_alpha = 0.05, lambda = 0.5;
  auto* adjust = app.add_subcommand("adjust", "Correct a p-value column");
  adjust->add_option("--pvalues", pvalue_path, "CSV with header 'p', one p per line")
      ->required();
  adjust->add_option("--method", method, "bh|by|storey")->required();
  adjust->add_option("--alpha", adjust_alpha, "Significance level");
  adjust->add_option("--lambda", lambda, "Storey pi0 tuning parameter");

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      overrides.has_replicates = rep_opt->count() > 0;
      overrides.has_alpha = alpha_opt->count() > 0;
      overrides.has_emit = emit_opt->count() > 0;
      return run_command(config_path, out_dir, overrides);
    }
    return adjust_command(pvalue_path, method, adjust_alpha, lambda);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const fdrbench::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fdrbench::io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
