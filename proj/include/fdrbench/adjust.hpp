#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fdrbench {

enum class Method { bh, by, storey_q };

// Canonical display names: "BH", "BY", "StoreyQ".
const char* method_name(Method method);
Method method_from_name(const std::string& name);  // accepts bh|by|storey[q]

struct StoreyOptions {
  double lambda = 0.5;
  // Experimental: evaluate pi0 over the grid {0.05, 0.10, ..., 0.95} and
  // keep the estimate at the largest lambda.
  bool lambda_grid = false;
};

struct AdjustedResults {
  Method method = Method::bh;
  std::vector<double> adjusted;           // adjusted p or q-value, in [0,1]
  std::vector<std::uint8_t> significant;  // call at level alpha
  double alpha = 0.05;
  double pi0_hat = 1.0;                   // only Storey estimates this
};

// Benjamini-Hochberg step-up.
AdjustedResults adjust_bh(std::span<const double> pvals, double alpha);

// Benjamini-Yekutieli: BH scaled by the harmonic number H_G.
AdjustedResults adjust_by(std::span<const double> pvals, double alpha);

// Storey point estimate #{p > lambda} / (G (1 - lambda)), clamped to [1/G, 1].
double estimate_pi0(std::span<const double> pvals, double lambda);

// q-values for a given pi0; pi0 == 1 reproduces BH exactly.
AdjustedResults qvalues(std::span<const double> pvals, double pi0, double alpha);

// estimate_pi0 + qvalues in one step.
AdjustedResults storey_qvalues(std::span<const double> pvals, double alpha,
                               const StoreyOptions& opts = {});

// Harmonic number H_n = sum_{i=1..n} 1/i by direct summation.
double harmonic_number(std::size_t n);

}  // namespace fdrbench
