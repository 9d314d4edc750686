#include "fdrbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdrbench {

namespace {

struct ThresholdGroup {
  std::int64_t de = 0;
  std::int64_t nul = 0;
};

// Cumulative DE/null counts per unique score, ascending.
std::vector<ThresholdGroup> threshold_sweep(std::span<const double> pvals,
                                            std::span<const std::uint8_t> truth,
                                            std::int64_t& n_de, std::int64_t& n_null) {
  if (pvals.size() != truth.size()) {
    throw std::invalid_argument("curve input lengths must match");
  }
  if (pvals.empty()) {
    throw std::invalid_argument("curve input must be nonempty");
  }
  for (const double p : pvals) {
    if (!std::isfinite(p)) {
      throw std::invalid_argument("curve scores must be finite");
    }
  }
  n_de = 0;
  n_null = 0;
  for (const auto t : truth) (t ? n_de : n_null) += 1;
  if (n_de == 0 || n_null == 0) {
    throw std::invalid_argument("curve requires both a true and a false label");
  }

  std::vector<std::size_t> order(pvals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pvals[a] < pvals[b]; });

  std::vector<ThresholdGroup> groups;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    ThresholdGroup group;
    while (j < order.size() && pvals[order[j]] == pvals[order[i]]) {
      (truth[order[j]] ? group.de : group.nul) += 1;
      ++j;
    }
    groups.push_back(group);
    i = j;
  }
  return groups;
}

double trapezoid(const std::vector<CurvePoint>& points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].x - points[i - 1].x) * (points[i].y + points[i - 1].y) * 0.5;
  }
  return area;
}

}  // namespace

ErrorRates error_rates(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                       std::int64_t fn) {
  if (tp < 0 || fp < 0 || tn < 0 || fn < 0) {
    throw std::invalid_argument("confusion counts must be nonnegative");
  }
  ErrorRates rates;
  rates.type1 = (fp + tn) > 0 ? static_cast<double>(fp) / static_cast<double>(fp + tn) : 0.0;
  rates.fdr = (tp + fp) > 0 ? static_cast<double>(fp) / static_cast<double>(tp + fp) : 0.0;
  rates.power = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  return rates;
}

ErrorRates error_rates(const ConfusionSummary& cm) {
  return error_rates(cm.tp, cm.fp, cm.tn, cm.fn);
}

ConfusionSummary confusion(std::span<const std::uint8_t> significant,
                           std::span<const std::uint8_t> truth) {
  if (significant.size() != truth.size()) {
    throw std::invalid_argument("confusion: input lengths must match");
  }
  ConfusionSummary cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (significant[i]) {
      (truth[i] ? cm.tp : cm.fp) += 1;
    } else {
      (truth[i] ? cm.fn : cm.tn) += 1;
    }
  }
  const ErrorRates rates = error_rates(cm);
  cm.type1 = rates.type1;
  cm.fdr = rates.fdr;
  cm.power = rates.power;
  return cm;
}

CurveSeries roc_curve(std::span<const double> pvals,
                      std::span<const std::uint8_t> truth) {
  std::int64_t n_de = 0, n_null = 0;
  const auto groups = threshold_sweep(pvals, truth, n_de, n_null);

  CurveSeries series;
  series.kind = CurveKind::roc;
  series.points.reserve(groups.size() + 1);
  series.points.push_back({0.0, 0.0});
  std::int64_t cum_tp = 0, cum_fp = 0;
  for (const auto& group : groups) {
    cum_tp += group.de;
    cum_fp += group.nul;
    series.points.push_back({static_cast<double>(cum_fp) / static_cast<double>(n_null),
                             static_cast<double>(cum_tp) / static_cast<double>(n_de)});
  }
  series.auc = trapezoid(series.points);
  return series;
}

CurveSeries pr_curve(std::span<const double> pvals,
                     std::span<const std::uint8_t> truth) {
  std::int64_t n_de = 0, n_null = 0;
  const auto groups = threshold_sweep(pvals, truth, n_de, n_null);

  CurveSeries series;
  series.kind = CurveKind::pr;
  series.points.reserve(groups.size());
  std::int64_t cum_tp = 0, cum_calls = 0;
  for (const auto& group : groups) {
    cum_tp += group.de;
    cum_calls += group.de + group.nul;
    series.points.push_back({static_cast<double>(cum_tp) / static_cast<double>(n_de),
                             static_cast<double>(cum_tp) / static_cast<double>(cum_calls)});
  }

  std::vector<CurvePoint> anchored;
  anchored.reserve(series.points.size() + 1);
  anchored.push_back({0.0, 1.0});
  anchored.insert(anchored.end(), series.points.begin(), series.points.end());
  series.auc = trapezoid(anchored);
  return series;
}

}  // namespace fdrbench
