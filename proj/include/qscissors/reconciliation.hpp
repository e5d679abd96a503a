// Audit of the published variance expressions against variances computed
// from the amplitudes (the reference). For each expression we report the
// as-published deviation and the best single-term coefficient replacement.

#pragma once

#include "qscissors/closed_form.hpp"
#include "qscissors/observables.hpp"
#include "qscissors/printed_variances.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace qscissors {

enum class ReconciliationStatus { MatchedAsPrinted, MatchedWithCorrection, Irrecoverable };

inline const char* status_name(ReconciliationStatus s) {
  switch (s) {
    case ReconciliationStatus::MatchedAsPrinted:
      return "matched-as-printed";
    case ReconciliationStatus::MatchedWithCorrection:
      return "matched-with-correction";
    case ReconciliationStatus::Irrecoverable:
      return "irrecoverable-as-printed";
  }
  return "?";
}

struct ReconciliationEntry {
  std::string model;
  std::string expression;
  ReconciliationStatus status = ReconciliationStatus::Irrecoverable;
  double max_dev_as_printed = 0.0;
  // Best single-term refit; `term` empty when none was attempted.
  std::string term;
  double printed_coefficient = std::numeric_limits<double>::quiet_NaN();
  double fitted_coefficient = std::numeric_limits<double>::quiet_NaN();
  double max_dev_fitted = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr double kReconciliationTolerance = 1e-9;

/// Compares `expr` with `reference` on `times`. If the published form is off,
/// each top-level term in turn gets the least-squares coefficient against the
/// residual of the others; the refit with the lowest max deviation is kept.
inline ReconciliationEntry reconcile(const std::string& model, const PrintedExpression& expr,
                                     const std::function<double(double)>& reference, const std::vector<double>& times,
                                     double tolerance = kReconciliationTolerance) {
  ReconciliationEntry entry;
  entry.model = model;
  entry.expression = expr.name;

  const std::size_t n = times.size();
  const std::size_t k = expr.terms.size();
  std::vector<double> ref(n);
  std::vector<std::vector<double>> shapes(k, std::vector<double>(n));
  std::vector<double> printed(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    ref[i] = reference(times[i]);
    for (std::size_t j = 0; j < k; ++j) {
      shapes[j][i] = expr.terms[j].shape(times[i]);
      printed[i] += expr.terms[j].coefficient * shapes[j][i];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    entry.max_dev_as_printed = std::max(entry.max_dev_as_printed, std::abs(printed[i] - ref[i]));

  if (entry.max_dev_as_printed <= tolerance) {
    entry.status = ReconciliationStatus::MatchedAsPrinted;
    return entry;
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    const double c = expr.terms[j].coefficient;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double target = ref[i] - (printed[i] - c * shapes[j][i]);
      num += target * shapes[j][i];
      den += shapes[j][i] * shapes[j][i];
    }
    if (den == 0.0) continue;
    const double fit = num / den;
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dev = std::max(dev, std::abs(printed[i] + (fit - c) * shapes[j][i] - ref[i]));
    if (dev < best) {
      best = dev;
      entry.term = expr.terms[j].label;
      entry.printed_coefficient = c;
      entry.fitted_coefficient = fit;
      entry.max_dev_fitted = dev;
    }
  }
  entry.status = best <= tolerance ? ReconciliationStatus::MatchedWithCorrection : ReconciliationStatus::Irrecoverable;
  return entry;
}

/// Full report over the single-pump (alpha1 = eps) and equal two-pump
/// published sets, on `points` evenly spaced times in [0, t_max_s].
inline std::vector<ReconciliationEntry> reconciliation_report(double alpha1, double alpha, double epsilon,
                                                              double t_max_s, std::size_t points = 1000) {
  std::vector<double> times(points);
  for (std::size_t i = 0; i < points; ++i)
    times[i] = points > 1 ? t_max_s * double(i) / double(points - 1) : 0.0;

  std::vector<ReconciliationEntry> out;
  auto run = [&](const std::string& model, const PrintedVarianceSet& set, const AnalyticModel& amplitudes) {
    for (std::size_t e = 0; e < 4; ++e) {
      const std::size_t mode = e % 2;
      const Quadrature q = e < 2 ? Quadrature::X : Quadrature::Y;
      auto reference = [&](double t) { return quadrature_variances(model_state(amplitudes, t)).get(mode, q); };
      out.push_back(reconcile(model, set[e], reference, times));
    }
  };
  run("two-mode-single-pump", printed_single_pump_expressions(alpha1), TwoModeSinglePump{alpha1});
  run("two-mode-two-pump", printed_two_pump_expressions(alpha, epsilon), TwoModeTwoPump{alpha, epsilon});
  run("two-mode-two-pump-corrected-xi", printed_two_pump_expressions(alpha, epsilon, true),
      TwoModeTwoPump{alpha, epsilon});
  return out;
}

}  // namespace qscissors
