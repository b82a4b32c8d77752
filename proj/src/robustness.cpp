#include "btrob/robustness.hpp"

#include <algorithm>
#include <iterator>

#include "btrob/error.hpp"

namespace btrob {

std::string_view to_string(ChangeCategory category) {
  switch (category) {
    case ChangeCategory::CtoI: return "C->I";
    case ChangeCategory::ItoI: return "I->I";
    case ChangeCategory::ItoC: return "I->C";
    case ChangeCategory::Const: return "Const";
  }
  return "?";
}

ChangeCategory categorize(const Sample& s) {
  if (!s.has_outcomes()) throw MetricError("sample '" + s.id + "' lacks before/after outcomes");
  if (outcome_equal(*s.before, *s.after)) return ChangeCategory::Const;
  if (outcome_equal(*s.before, s.expected)) return ChangeCategory::CtoI;
  if (outcome_equal(*s.after, s.expected)) return ChangeCategory::ItoC;
  return ChangeCategory::ItoI;
}

std::size_t& CategoryCounts::operator[](ChangeCategory c) {
  switch (c) {
    case ChangeCategory::CtoI: return c_to_i;
    case ChangeCategory::ItoI: return i_to_i;
    case ChangeCategory::ItoC: return i_to_c;
    case ChangeCategory::Const: break;
  }
  return constant;
}

CategoryCounts category_counts(const Corpus& corpus, bool text_changed_only) {
  CategoryCounts counts;
  for (const auto& s : corpus) {
    if (text_changed_only && !s.text_changed()) continue;
    ++counts[categorize(s)];
  }
  return counts;
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::R123: return "R123";
    case Metric::R13: return "R13";
    case Metric::R12: return "R12";
    case Metric::R1: return "R1";
    case Metric::R123plus: return "R123+";
    case Metric::R13plus: return "R13+";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics)
    if (to_string(m) == name) return m;
  throw MetricError("unknown robustness metric '" + std::string(name) + "' (expected R123, R13, R12, R1, R123+ or R13+)");
}

RobustnessPolicy policy_of(Metric metric) {
  using enum Treatment;
  switch (metric) {
    case Metric::R123: return {negative, negative};
    case Metric::R13: return {irrelevant, negative};
    case Metric::R12: return {negative, irrelevant};
    case Metric::R1: return {irrelevant, irrelevant};
    case Metric::R123plus: return {negative, positive};
    case Metric::R13plus: return {irrelevant, positive};
  }
  return {};
}

Metric metric_of(const RobustnessPolicy& policy) {
  for (Metric m : kAllMetrics)
    if (policy_of(m) == policy) return m;
  throw MetricError("robustness policy names no metric (I->I cannot be positive)");
}

bool is_negative(ChangeCategory category, const RobustnessPolicy& policy) {
  switch (category) {
    case ChangeCategory::CtoI: return true;
    case ChangeCategory::ItoI: return policy.i_to_i == Treatment::negative;
    case ChangeCategory::ItoC: return policy.i_to_c == Treatment::negative;
    case ChangeCategory::Const: return false;
  }
  return false;
}

MetricResult robustness_metric(const Corpus& corpus, Metric metric) {
  const RobustnessPolicy policy = policy_of(metric);
  MetricResult result{metric, 0, 0};
  for (const auto& s : corpus) {
    if (!s.evaluable()) throw MetricError("sample '" + s.id + "' lacks hypothesis or outcomes");
    if (!s.text_changed()) continue;
    const bool before_ok = outcome_equal(*s.before, s.expected);
    const bool after_ok = outcome_equal(*s.after, s.expected);
    const bool kept = outcome_equal(*s.before, *s.after);
    if (policy.i_to_i == Treatment::irrelevant && !before_ok && !after_ok) continue;
    if (policy.i_to_c == Treatment::irrelevant && !before_ok && after_ok) continue;
    ++result.denominator;
    if (kept || (policy.i_to_c == Treatment::positive && after_ok)) ++result.numerator;
  }
  if (result.denominator == 0)
    throw UndefinedMetricError(std::string(to_string(metric)) + " is undefined: its domain is empty");
  return result;
}

// Conventional measures ---------------------------------------------------------

std::optional<double> StandardMetrics::micro_f1_delta() const {
  if (!micro_f1_before || !micro_f1_after) return std::nullopt;
  return *micro_f1_after - *micro_f1_before;
}

std::optional<double> micro_f1(const F1Counts& c) {
  const std::size_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) return std::nullopt;
  return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

namespace {

void accumulate_slots(F1Counts& counts, const std::vector<Slot>& predicted, const std::vector<Slot>& gold) {
  // Both sides are sorted and unique.
  std::vector<Slot> common;
  std::set_intersection(predicted.begin(), predicted.end(), gold.begin(), gold.end(), std::back_inserter(common));
  counts.tp += common.size();
  counts.fp += predicted.size() - common.size();
  counts.fn += gold.size() - common.size();
}

}  // namespace

StandardMetrics standard_metrics(const Corpus& corpus, Task task) {
  StandardMetrics m;
  m.task = task;
  std::size_t correct_before = 0, correct_after = 0;
  F1Counts f1_before, f1_after;
  for (const auto& s : corpus) {
    if (s.expected.task() != task || !s.has_outcomes()) continue;
    ++m.samples;
    if (outcome_equal(*s.before, s.expected)) ++correct_before;
    if (outcome_equal(*s.after, s.expected)) ++correct_after;
    if (task == Task::slots) {
      accumulate_slots(f1_before, s.before->slot_set(), s.expected.slot_set());
      accumulate_slots(f1_after, s.after->slot_set(), s.expected.slot_set());
    }
  }
  if (m.samples == 0)
    throw MetricError("no " + std::string(to_string(task)) + " samples with before/after outcomes");
  m.accuracy_before = static_cast<double>(correct_before) / static_cast<double>(m.samples);
  m.accuracy_after = static_cast<double>(correct_after) / static_cast<double>(m.samples);
  if (task == Task::slots) {
    m.micro_f1_before = micro_f1(f1_before);
    m.micro_f1_after = micro_f1(f1_after);
  }
  return m;
}

std::optional<double> LabelComponents::precision() const {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> LabelComponents::recall() const {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> ComponentDelta::d_precision() const {
  const auto b = before.precision(), a = after.precision();
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

std::optional<double> ComponentDelta::d_recall() const {
  const auto b = before.recall(), a = after.recall();
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

std::map<std::string, ComponentDelta> fscore_component_delta(const Corpus& corpus) {
  std::map<std::string, ComponentDelta> out;
  const auto tally = [&](LabelComponents ComponentDelta::*side, const std::string& predicted, const std::string& gold) {
    if (predicted == gold) {
      ++(out[gold].*side).tp;
    } else {
      ++(out[predicted].*side).fp;
      ++(out[gold].*side).fn;
    }
  };
  for (const auto& s : corpus) {
    if (!s.has_outcomes()) throw MetricError("sample '" + s.id + "' lacks before/after outcomes");
    if (!s.expected.is_label() || !s.before->is_label() || !s.after->is_label())
      throw MetricError("F-measure component analysis needs domain or intent labels");
    tally(&ComponentDelta::before, s.before->label(), s.expected.label());
    tally(&ComponentDelta::after, s.after->label(), s.expected.label());
  }
  return out;
}

}  // namespace btrob
