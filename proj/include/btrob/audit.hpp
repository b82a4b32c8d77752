#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "btrob/corpus.hpp"

namespace btrob {

/// Uniform integer in [0, bound) by rejection sampling, so draws are the same
/// on every standard library (std::uniform_int_distribution is not).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

enum class Verdict { option_1, option_2, both };

std::string_view to_string(Verdict verdict);
/// Accepts option_1, option_2, both, 1 and 2 (case-insensitive). Throws AuditError.
Verdict parse_verdict(std::string_view text);

struct AnnotationRow {
  std::size_t row = 0;  // 1-based
  std::string sample_id;
  std::string option_1;
  std::string option_2;
  /// Which option holds the original prompt r(s): 1 or 2. Hidden from annotators.
  int original_position = 1;
  std::string audio;
  std::optional<Verdict> verdict;

  bool operator==(const AnnotationRow&) const = default;
};

struct AnnotationSheet {
  std::vector<AnnotationRow> rows;
};

/// Samples ceil(fraction * |{s : h != r}|) differing samples without
/// replacement and shuffles each row's two options. Rows keep corpus order.
/// Throws AuditError for a fraction outside [0, 1].
AnnotationSheet make_annotation_sheet(const Corpus& corpus, double fraction, std::uint64_t seed);

/// Annotator-facing CSV: row,sample_id,audio,option_1,option_2,verdict.
void write_sheet_csv(std::ostream& out, const AnnotationSheet& sheet);
/// Hidden key CSV: row,sample_id,original_position.
void write_key_csv(std::ostream& out, const AnnotationSheet& sheet);
/// Joins a (possibly filled) sheet with its key by row number.
AnnotationSheet read_annotation_sheet(std::istream& sheet_csv, std::istream& key_csv);

struct ResemblanceResult {
  std::size_t total = 0;
  std::size_t utt = 0;   // closer to the original prompt
  std::size_t aug = 0;   // closer to the back-transcription
  std::size_t both = 0;

  /// (utt + both) / total. Throws AuditError when total is 0.
  double resemblance() const;

  /// Validates utt + both <= total and derives aug.
  static ResemblanceResult from_counts(std::size_t total, std::size_t utt, std::size_t both);
};

/// Maps each verdict back through the hidden key. Throws AuditError listing
/// the rows that lack a verdict.
ResemblanceResult compute_resemblance(const AnnotationSheet& sheet);

}  // namespace btrob
