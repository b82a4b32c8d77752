#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "btrob/robustness.hpp"

namespace btrob {

/// Shortest "%g"-style rendering with up to 6 significant digits.
std::string format_number(double value, int precision = 6);

/// One row per computable metric; metrics with an empty domain are listed in
/// `undefined` instead.
struct MetricReport {
  std::vector<MetricResult> results;
  std::vector<Metric> undefined;
};

MetricReport all_metrics(const Corpus& corpus);

/// CSV with header `metric_id,numerator,denominator,value`.
void write_metrics_csv(std::ostream& out, const MetricReport& report);

/// Markdown table: one row per run label with the six metric columns.
void write_metrics_markdown(std::ostream& out, const std::string& run_label, const MetricReport& report);

/// Markdown table shaped like the change-count report (C->I, I->I, I->C, Const).
void write_counts_markdown(std::ostream& out, const std::string& run_label, const CategoryCounts& counts);

/// Markdown table of before/after conventional metrics with deltas.
void write_standard_markdown(std::ostream& out, const std::string& run_label, const StandardMetrics& metrics);

/// Markdown table of per-label TP/FP/FN/P/R deltas; undefined values print as "n/a".
void write_component_delta_markdown(std::ostream& out, const std::map<std::string, ComponentDelta>& deltas);

}  // namespace btrob
