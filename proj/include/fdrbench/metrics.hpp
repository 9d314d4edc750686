#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fdrbench {

// Confusion counts plus the derived rates. Zero denominators follow the
// 0/0 -> 0 convention (no calls means no false discoveries, and so on).
struct ConfusionSummary {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  double type1 = 0.0;  // fp / (fp + tn)
  double fdr = 0.0;    // fp / (tp + fp)
  double power = 0.0;  // tp / (tp + fn)
};

struct ErrorRates {
  double type1 = 0.0;
  double fdr = 0.0;
  double power = 0.0;
};

ErrorRates error_rates(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                       std::int64_t fn);
ErrorRates error_rates(const ConfusionSummary& cm);

ConfusionSummary confusion(std::span<const std::uint8_t> significant,
                           std::span<const std::uint8_t> truth);

enum class CurveKind { roc, pr };

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

struct CurveSeries {
  CurveKind kind = CurveKind::roc;
  std::vector<CurvePoint> points;
  double auc = 0.0;
};

// Threshold sweep over the unique p-values ascending (smaller p = stronger
// call; tied values enter together). ROC points are (FPR, TPR) anchored at
// (0,0); AUC is the trapezoid over the points.
CurveSeries roc_curve(std::span<const double> pvals,
                      std::span<const std::uint8_t> truth);

// Same sweep emitting (recall, precision). The trapezoid AUC uses a
// (recall 0, precision 1) anchor that is not part of the emitted points.
CurveSeries pr_curve(std::span<const double> pvals,
                     std::span<const std::uint8_t> truth);

}  // namespace fdrbench
