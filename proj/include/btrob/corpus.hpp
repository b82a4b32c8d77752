#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "btrob/text.hpp"

namespace btrob {

using Json = nlohmann::ordered_json;

enum class Task { domain, intent, slots };

std::string_view to_string(Task task);
/// Throws CorpusError for unknown names.
Task parse_task(std::string_view name);

struct Slot {
  std::string name;
  std::string value;

  auto operator<=>(const Slot&) const = default;
};

/// Semantic result of NLU: a domain label, an intent label, or a set of
/// slot-value pairs. Slot sets are kept sorted and free of duplicates so that
/// structural equality is set equality.
class NluOutcome {
 public:
  /// An empty domain label.
  NluOutcome() = default;
  static NluOutcome domain(std::string label);
  static NluOutcome intent(std::string label);
  static NluOutcome slots(std::vector<Slot> slots);

  Task task() const noexcept { return task_; }
  bool is_label() const noexcept { return task_ != Task::slots; }

  /// Domain or intent label; empty for slot outcomes.
  const std::string& label() const noexcept { return label_; }
  const std::vector<Slot>& slot_set() const noexcept { return slots_; }

  /// Returns a copy with every string passed through normalize_text.
  NluOutcome normalized(const NormalizationPolicy& policy) const;

  bool operator==(const NluOutcome&) const = default;

 private:
  NluOutcome(Task task, std::string label, std::vector<Slot> slots);

  Task task_ = Task::domain;
  std::string label_;
  std::vector<Slot> slots_;
};

/// Exact-match comparison of two outcomes of the same kind. Slot outcomes
/// compare as whole sets; span positions are not represented.
/// Throws CorpusError when the kinds differ.
bool outcome_equal(const NluOutcome& a, const NluOutcome& b);

Json outcome_to_json(const NluOutcome& outcome);
NluOutcome outcome_from_json(const Json& json);

struct Sample {
  std::string id;
  std::string reference;                  // r(s)
  std::optional<std::string> hypothesis;  // h(s)
  NluOutcome expected;                    // e(s)
  std::optional<NluOutcome> before;       // b(s)
  std::optional<NluOutcome> after;        // a(s)
  Json extra = Json::object();            // unknown record fields, carried through

  bool has_outcomes() const noexcept { return before.has_value() && after.has_value(); }
  bool evaluable() const noexcept { return hypothesis.has_value() && has_outcomes(); }
  /// h(s) != r(s) on the stored (normalized) texts. False without a hypothesis.
  bool text_changed() const noexcept { return hypothesis && *hypothesis != reference; }

  bool operator==(const Sample&) const = default;
};

/// Immutable, id-unique collection of samples in insertion order.
class Corpus {
 public:
  Corpus() = default;
  /// Throws CorpusError on duplicate ids or a violated Sample invariant.
  explicit Corpus(std::vector<Sample> samples);

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }
  const std::vector<Sample>& samples() const noexcept { return samples_; }

  const Sample* find(std::string_view id) const;

  /// Samples satisfying `keep`, in order.
  template <typename Pred>
  Corpus filter(Pred keep) const {
    std::vector<Sample> kept;
    for (const auto& s : samples_)
      if (keep(s)) kept.push_back(s);
    Corpus out;
    out.samples_ = std::move(kept);
    out.index_ = build_index(out.samples_);
    return out;
  }

  bool operator==(const Corpus& other) const { return samples_ == other.samples_; }

 private:
  static std::map<std::string, std::size_t, std::less<>> build_index(const std::vector<Sample>& samples);

  std::vector<Sample> samples_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Checks the per-sample invariants; throws CorpusError naming the sample.
void validate_sample(const Sample& sample);

Sample sample_from_json(const Json& json, const NormalizationPolicy& policy = {});
Json sample_to_json(const Sample& sample);

/// Reads native corpus JSONL. Blank lines are skipped; errors report the
/// 1-based line number.
Corpus read_corpus(std::istream& in, const NormalizationPolicy& policy = {});
Corpus load_corpus(const std::string& path, const NormalizationPolicy& policy = {});

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

// MASSIVE import --------------------------------------------------------------

/// Parses MASSIVE bracket markup, e.g. "wake me up at [time : nine am]".
/// Throws CorpusError on unbalanced or malformed brackets.
std::vector<Slot> parse_slot_markup(std::string_view annotated);

struct MassiveImportOptions {
  Task task = Task::intent;
  /// When set, only records whose `partition` equals this value are kept.
  std::optional<std::string> partition;
  NormalizationPolicy policy;
};

Corpus read_massive(std::istream& in, const MassiveImportOptions& options);
Corpus import_massive(const std::string& path, const MassiveImportOptions& options);

/// Record count per `partition` value of a MASSIVE file.
std::map<std::string, std::size_t> massive_partition_counts(const std::string& path);

}  // namespace btrob
