#pragma once

#include <cmath>
#include <string>

namespace resonance {

// One numeric-versus-predicted comparison.
struct PredictionReport {
  std::string label;
  double numeric = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// Two-sided test |numeric / predicted - 1| <= tolerance.
inline PredictionReport make_ratio_report(std::string label, double numeric, double predicted,
                                          double tolerance, std::string detail = {}) {
  PredictionReport r;
  r.label = std::move(label);
  r.numeric = numeric;
  r.predicted = predicted;
  r.ratio = predicted != 0.0 ? numeric / predicted : std::nan("");
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.ratio) && std::abs(r.ratio - 1.0) <= tolerance;
  r.detail = std::move(detail);
  return r;
}

// One-sided test numeric <= predicted * (1 + tolerance).
inline PredictionReport make_upper_bound_report(std::string label, double numeric,
                                                double bound, double tolerance = 0.0,
                                                std::string detail = {}) {
  PredictionReport r;
  r.label = std::move(label);
  r.numeric = numeric;
  r.predicted = bound;
  r.ratio = bound != 0.0 ? numeric / bound : std::nan("");
  r.tolerance = tolerance;
  r.pass = numeric <= bound * (1.0 + tolerance);
  r.detail = std::move(detail);
  return r;
}

}  // namespace resonance
