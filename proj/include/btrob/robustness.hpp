#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "btrob/corpus.hpp"

namespace btrob {

/// How the NLU outcome of a sample moved between r(s) and h(s).
enum class ChangeCategory { CtoI, ItoI, ItoC, Const };

std::string_view to_string(ChangeCategory category);

/// Const when before == after; otherwise CtoI / ItoC / ItoI by whether
/// before or after matches the expected outcome.
/// Throws MetricError when before or after is missing.
ChangeCategory categorize(const Sample& sample);

struct CategoryCounts {
  std::size_t c_to_i = 0;
  std::size_t i_to_i = 0;
  std::size_t i_to_c = 0;
  std::size_t constant = 0;

  std::size_t total() const noexcept { return c_to_i + i_to_i + i_to_c + constant; }
  std::size_t& operator[](ChangeCategory c);
  bool operator==(const CategoryCounts&) const = default;
};

/// Counts every sample, whether or not its text changed. Pass
/// `text_changed_only` to restrict to h(s) != r(s).
CategoryCounts category_counts(const Corpus& corpus, bool text_changed_only = false);

enum class Treatment { negative, irrelevant, positive };

/// Treatment of I->I and I->C samples; C->I is always negative.
struct RobustnessPolicy {
  Treatment i_to_i = Treatment::negative;  // negative | irrelevant
  Treatment i_to_c = Treatment::negative;  // negative | irrelevant | positive

  bool operator==(const RobustnessPolicy&) const = default;
};

enum class Metric { R123, R13, R12, R1, R123plus, R13plus };

inline constexpr std::array<Metric, 6> kAllMetrics = {Metric::R123, Metric::R13,      Metric::R12,
                                                      Metric::R1,   Metric::R123plus, Metric::R13plus};

std::string_view to_string(Metric metric);
/// Accepts "R123", "R13", "R12", "R1", "R123+", "R13+". Throws MetricError.
Metric parse_metric(std::string_view name);

RobustnessPolicy policy_of(Metric metric);
/// Throws MetricError for combinations that name no metric (I->I positive).
Metric metric_of(const RobustnessPolicy& policy);

/// True when the policy counts this category as damaging robustness.
bool is_negative(ChangeCategory category, const RobustnessPolicy& policy);

struct MetricResult {
  Metric metric = Metric::R123;
  std::size_t numerator = 0;
  std::size_t denominator = 0;

  double value() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// Fraction of samples in the metric's domain whose outcome is preserved.
/// The domain always requires h(s) != r(s); an irrelevant I->I drops samples
/// that are wrong both before and after, an irrelevant I->C drops samples
/// fixed by back transcription. A positive I->C also counts a(s) = e(s) as
/// preserved. Throws UndefinedMetricError on an empty domain and
/// MetricError on samples lacking hypothesis or outcomes.
MetricResult robustness_metric(const Corpus& corpus, Metric metric);

// Conventional before/after measures -----------------------------------------

struct StandardMetrics {
  Task task = Task::intent;
  std::size_t samples = 0;
  double accuracy_before = 0;
  double accuracy_after = 0;
  /// Pooled over slot (name, value) pairs; slots task only.
  std::optional<double> micro_f1_before;
  std::optional<double> micro_f1_after;

  double accuracy_delta() const noexcept { return accuracy_after - accuracy_before; }
  std::optional<double> micro_f1_delta() const;
};

/// Exact-match accuracy against e(s) and, for slots, micro-F1. Only samples
/// whose expected outcome has `task` are used. Throws MetricError when no
/// such sample carries both outcomes.
StandardMetrics standard_metrics(const Corpus& corpus, Task task);

struct F1Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Micro-F1 of predicted slot sets against gold slot sets; nullopt when
/// TP + FP + FN = 0.
std::optional<double> micro_f1(const F1Counts& counts);

struct LabelComponents {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;

  std::optional<double> precision() const;
  std::optional<double> recall() const;
};

struct ComponentDelta {
  LabelComponents before;
  LabelComponents after;

  long long d_tp() const noexcept { return after.tp - before.tp; }
  long long d_fp() const noexcept { return after.fp - before.fp; }
  long long d_fn() const noexcept { return after.fn - before.fn; }
  /// nullopt when either side is 0/0.
  std::optional<double> d_precision() const;
  std::optional<double> d_recall() const;
};

/// Per-label TP/FP/FN computed with b(s) and with a(s) as the prediction.
/// Label-valued tasks only; throws MetricError on slot outcomes.
std::map<std::string, ComponentDelta> fscore_component_delta(const Corpus& corpus);

}  // namespace btrob
