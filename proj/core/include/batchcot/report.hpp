#pragma once

#include <optional>
#include <string>
#include <vector>

#include "batchcot/eval.hpp"

namespace batchcot {

/// Overall accuracy and tokens across benchmarks.
struct OverallRow {
  double accuracy = 0.0;  // fraction
  double mean_tokens = 0.0;
  bool available = false;
};

/// Plain mean over benchmarks; every benchmark counts once.
OverallRow overall_mean(const std::vector<EvalAggregate>& aggregates);
/// Weighted by graded samples. Unavailable when no aggregate has samples
/// (e.g. aggregates typed in from a published table).
OverallRow overall_weighted(const std::vector<EvalAggregate>& aggregates);

/// Round half away from zero to 2 decimals.
double round2(double x);

/// Percent change of tokens relative to the baseline, computed on the
/// 2-decimal values as they are displayed.
double token_delta_percent(double baseline_tokens, double tokens);
/// Accuracy change in percentage points on the displayed values.
double accuracy_delta_points(double baseline_accuracy, double accuracy);

/// "+1.74" style; points never carry a unit.
std::string format_accuracy_delta(double points);
/// Token deltas read as reductions: zero renders "-0.00%".
std::string format_token_delta(double percent);

/// Fixed-width table: one row per benchmark (accuracy percent and tokens,
/// both 2 decimals), then overall rows. With a baseline, the overall rows
/// carry signed deltas against the baseline's overall rows.
std::string render_report(const std::vector<EvalAggregate>& aggregates,
                          const std::optional<std::vector<EvalAggregate>>& baseline = std::nullopt);

std::string render_report_csv(const std::vector<EvalAggregate>& aggregates,
                              const std::optional<std::vector<EvalAggregate>>& baseline = std::nullopt);

}  // namespace batchcot
