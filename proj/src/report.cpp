#include "btrob/report.hpp"

#include <cstdio>
#include <ostream>

#include "btrob/csv.hpp"
#include "btrob/error.hpp"

namespace btrob {

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string signed4(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.4f", *v);
  return buf;
}

}  // namespace

MetricReport all_metrics(const Corpus& corpus) {
  MetricReport report;
  for (Metric m : kAllMetrics) {
    try {
      report.results.push_back(robustness_metric(corpus, m));
    } catch (const UndefinedMetricError&) {
      report.undefined.push_back(m);
    }
  }
  return report;
}

void write_metrics_csv(std::ostream& out, const MetricReport& report) {
  write_csv_row(out, {"metric_id", "numerator", "denominator", "value"});
  for (const auto& r : report.results) {
    write_csv_row(out, {std::string(to_string(r.metric)), std::to_string(r.numerator), std::to_string(r.denominator),
                        format_number(r.value(), 10)});
  }
}

void write_metrics_markdown(std::ostream& out, const std::string& run_label, const MetricReport& report) {
  out << "| Run |";
  for (Metric m : kAllMetrics) out << ' ' << to_string(m) << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < kAllMetrics.size(); ++i) out << "---:|";
  out << "\n| " << run_label << " |";
  for (Metric m : kAllMetrics) {
    std::string cell = "undefined";
    for (const auto& r : report.results)
      if (r.metric == m) cell = fixed4(r.value());
    out << ' ' << cell << " |";
  }
  out << '\n';
}

void write_counts_markdown(std::ostream& out, const std::string& run_label, const CategoryCounts& c) {
  out << "| Run | C->I | I->I | I->C | Const |\n"
      << "|---|---:|---:|---:|---:|\n"
      << "| " << run_label << " | " << c.c_to_i << " | " << c.i_to_i << " | " << c.i_to_c << " | " << c.constant
      << " |\n";
}

void write_standard_markdown(std::ostream& out, const std::string& run_label, const StandardMetrics& m) {
  out << "| Run | Metric | before BT | after BT | Delta |\n"
      << "|---|---|---:|---:|---:|\n";
  out << "| " << run_label << " | accuracy | " << fixed4(m.accuracy_before) << " | " << fixed4(m.accuracy_after)
      << " | " << signed4(m.accuracy_delta()) << " |\n";
  if (m.task == Task::slots) {
    const auto cell = [](std::optional<double> v) { return v ? fixed4(*v) : std::string("n/a"); };
    out << "| " << run_label << " | micro F1 | " << cell(m.micro_f1_before) << " | " << cell(m.micro_f1_after)
        << " | " << signed4(m.micro_f1_delta()) << " |\n";
  }
}

void write_component_delta_markdown(std::ostream& out, const std::map<std::string, ComponentDelta>& deltas) {
  out << "| Label | dTP | dFP | dFN | dP | dR |\n"
      << "|---|---:|---:|---:|---:|---:|\n";
  for (const auto& [label, d] : deltas) {
    out << "| " << label << " | " << d.d_tp() << " | " << d.d_fp() << " | " << d.d_fn() << " | "
        << signed4(d.d_precision()) << " | " << signed4(d.d_recall()) << " |\n";
  }
}

}  // namespace btrob
