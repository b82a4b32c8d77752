#include <algorithm>

#include "btrob/btpipe.hpp"
#include "btrob/error.hpp"

namespace btrob {

double WordErrorStats::rate() const {
  if (reference_tokens == 0) throw MetricError("word error rate is undefined for zero reference tokens");
  return static_cast<double>(errors()) / static_cast<double>(reference_tokens);
}

WordErrorStats& WordErrorStats::operator+=(const WordErrorStats& other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  reference_tokens += other.reference_tokens;
  return *this;
}

WordErrorStats word_errors(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: distance between ref[0, i) and hyp[0, j).
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  const auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  WordErrorStats stats;
  stats.reference_tokens = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++stats.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++stats.deletions;
      --i;
    } else {
      ++stats.insertions;
      --j;
    }
  }
  return stats;
}

WordErrorStats corpus_word_errors(const std::vector<std::string>& references,
                                  const std::vector<std::string>& hypotheses) {
  if (references.size() != hypotheses.size()) {
    throw MetricError("WER needs equally many references and hypotheses (" + std::to_string(references.size()) +
                      " vs " + std::to_string(hypotheses.size()) + ")");
  }
  WordErrorStats total;
  for (std::size_t k = 0; k < references.size(); ++k) total += word_errors(tokenize(references[k]), tokenize(hypotheses[k]));
  return total;
}

double word_error_rate(const std::vector<std::string>& references, const std::vector<std::string>& hypotheses) {
  return corpus_word_errors(references, hypotheses).rate();
}

}  // namespace btrob
