#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace btrob {

/// a[start_a, start_a + length) == b[start_b, start_b + length)
struct MatchBlock {
  std::size_t start_a = 0;
  std::size_t start_b = 0;
  std::size_t length = 0;

  bool operator==(const MatchBlock&) const = default;
};

namespace detail {

template <typename T>
MatchBlock longest_common_run(std::span<const T> a, std::span<const T> b, std::size_t alo, std::size_t ahi,
                              std::size_t blo, std::size_t bhi) {
  MatchBlock best{alo, blo, 0};
  // run[j - blo + 1]: length of the common run ending at a[i], b[j].
  std::vector<std::size_t> prev(bhi - blo + 1, 0), run(bhi - blo + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = j - blo + 1;
      run[k] = a[i] == b[j] ? prev[k - 1] + 1 : 0;
      // Scanning in increasing (i, j) makes the first run of a given length
      // the leftmost in a, then in b.
      if (run[k] > best.length) best = {i + 1 - run[k], j + 1 - run[k], run[k]};
    }
    std::swap(prev, run);
  }
  return best;
}

template <typename T>
void ro_recurse(std::span<const T> a, std::span<const T> b, std::size_t alo, std::size_t ahi, std::size_t blo,
                std::size_t bhi, std::vector<MatchBlock>& out) {
  if (alo >= ahi || blo >= bhi) return;
  const MatchBlock m = longest_common_run(a, b, alo, ahi, blo, bhi);
  if (m.length == 0) return;
  ro_recurse(a, b, alo, m.start_a, blo, m.start_b, out);
  out.push_back(m);
  ro_recurse(a, b, m.start_a + m.length, ahi, m.start_b + m.length, bhi, out);
}

}  // namespace detail

/// Ratcliff-Obershelp matching: take the longest common contiguous run
/// (ties: leftmost in a, then leftmost in b), then recurse on the pieces to
/// its left and right. Blocks come back ordered and non-overlapping in both
/// sequences.
template <typename T>
std::vector<MatchBlock> ro_align(std::span<const T> a, std::span<const T> b) {
  std::vector<MatchBlock> blocks;
  detail::ro_recurse(a, b, 0, a.size(), 0, b.size(), blocks);
  return blocks;
}

template <typename Seq>
std::vector<MatchBlock> ro_align(const Seq& a, const Seq& b) {
  using T = typename Seq::value_type;
  return ro_align(std::span<const T>(a.data(), a.size()), std::span<const T>(b.data(), b.size()));
}

/// 2 * matched / (|a| + |b|); 1.0 when both are empty.
double similarity_ratio(const std::vector<MatchBlock>& blocks, std::size_t size_a, std::size_t size_b);

/// Character-level (code point) similarity of two UTF-8 strings.
double similarity_ratio(std::string_view a, std::string_view b);

enum class SpanKind { inserted, missing, replaced };

std::string_view to_string(SpanKind kind);

/// Gap between two token-level match blocks. `inserted` exists only in the
/// hypothesis, `missing` only in the reference.
struct DiffSpan {
  std::size_t ref_begin = 0;
  std::size_t ref_end = 0;
  std::size_t hyp_begin = 0;
  std::size_t hyp_end = 0;
  SpanKind kind = SpanKind::replaced;

  bool operator==(const DiffSpan&) const = default;
};

std::vector<DiffSpan> diff_spans(const std::vector<std::string>& ref_tokens,
                                 const std::vector<std::string>& hyp_tokens);

}  // namespace btrob
