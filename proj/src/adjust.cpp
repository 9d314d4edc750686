#include "fdrbench/adjust.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdrbench {

namespace {

void validate_pvals(std::span<const double> pvals) {
  if (pvals.empty()) {
    throw std::invalid_argument("p-value vector must be nonempty");
  }
  for (const double p : pvals) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p-values must lie in [0,1]");
    }
  }
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1)");
  }
}

// Indices sorted ascending by p, ties broken by original index.
std::vector<std::size_t> sorted_order(std::span<const double> pvals) {
  std::vector<std::size_t> order(pvals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvals[a] < pvals[b]; });
  return order;
}

// adjusted_(k) = min_{j >= k} scale * G * p_(j) / j, clamped to 1, restored
// to the original gene order. For scale >= 1 the result dominates the raw p
// in exact arithmetic; the max() keeps that true under rounding.
std::vector<double> step_up_adjusted(std::span<const double> pvals,
                                     const std::vector<std::size_t>& order,
                                     double scale) {
  const double g = static_cast<double>(pvals.size());
  const bool dominates_raw = scale >= 1.0;
  std::vector<double> adjusted(pvals.size());
  double running_min = 1.0;
  for (std::size_t k = pvals.size(); k-- > 0;) {
    const double candidate = scale * g * pvals[order[k]] / static_cast<double>(k + 1);
    running_min = std::min(running_min, candidate);
    adjusted[order[k]] =
        dominates_raw ? std::max(running_min, pvals[order[k]]) : running_min;
  }
  return adjusted;
}

// Literal step-up call: find the largest k with p_(k) <= alpha k / (G d),
// then flag the first k sorted genes.
std::vector<std::uint8_t> step_up_significant(std::span<const double> pvals,
                                              const std::vector<std::size_t>& order,
                                              double alpha, double denominator) {
  const double g = static_cast<double>(pvals.size());
  std::size_t k_star = 0;
  for (std::size_t k = 1; k <= pvals.size(); ++k) {
    if (pvals[order[k - 1]] <= alpha * static_cast<double>(k) / (g * denominator)) {
      k_star = k;
    }
  }
  std::vector<std::uint8_t> significant(pvals.size(), 0);
  for (std::size_t k = 0; k < k_star; ++k) significant[order[k]] = 1;
  return significant;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::bh: return "BH";
    case Method::by: return "BY";
    case Method::storey_q: return "StoreyQ";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bh") return Method::bh;
  if (lower == "by") return Method::by;
  if (lower == "storey" || lower == "storeyq") return Method::storey_q;
  throw std::invalid_argument("unknown method '" + name + "' (expected bh|by|storey)");
}

double harmonic_number(std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

AdjustedResults adjust_bh(std::span<const double> pvals, double alpha) {
  validate_pvals(pvals);
  validate_alpha(alpha);
  const auto order = sorted_order(pvals);
  AdjustedResults out;
  out.method = Method::bh;
  out.alpha = alpha;
  out.adjusted = step_up_adjusted(pvals, order, 1.0);
  out.significant = step_up_significant(pvals, order, alpha, 1.0);
  return out;
}

AdjustedResults adjust_by(std::span<const double> pvals, double alpha) {
  validate_pvals(pvals);
  validate_alpha(alpha);
  const double h = harmonic_number(pvals.size());
  const auto order = sorted_order(pvals);
  AdjustedResults out;
  out.method = Method::by;
  out.alpha = alpha;
  out.adjusted = step_up_adjusted(pvals, order, h);
  out.significant = step_up_significant(pvals, order, alpha, h);
  return out;
}

double estimate_pi0(std::span<const double> pvals, double lambda) {
  validate_pvals(pvals);
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("lambda must be in (0,1)");
  }
  const double g = static_cast<double>(pvals.size());
  double above = 0.0;
  for (const double p : pvals) {
    if (p > lambda) above += 1.0;
  }
  const double raw = above / (g * (1.0 - lambda));
  return std::clamp(raw, 1.0 / g, 1.0);
}

AdjustedResults qvalues(std::span<const double> pvals, double pi0, double alpha) {
  validate_pvals(pvals);
  validate_alpha(alpha);
  if (!(pi0 > 0.0 && pi0 <= 1.0)) {
    throw std::invalid_argument("pi0 must be in (0,1]");
  }
  const auto order = sorted_order(pvals);
  AdjustedResults out;
  out.method = Method::storey_q;
  out.alpha = alpha;
  out.pi0_hat = pi0;
  out.adjusted = step_up_adjusted(pvals, order, pi0);
  out.significant.resize(pvals.size());
  for (std::size_t i = 0; i < pvals.size(); ++i) {
    out.significant[i] = out.adjusted[i] <= alpha ? 1 : 0;
  }
  return out;
}

AdjustedResults storey_qvalues(std::span<const double> pvals, double alpha,
                               const StoreyOptions& opts) {
  double pi0;
  if (opts.lambda_grid) {
    pi0 = estimate_pi0(pvals, 0.95);
  } else {
    pi0 = estimate_pi0(pvals, opts.lambda);
  }
  return qvalues(pvals, pi0, alpha);
}

}  // namespace fdrbench
