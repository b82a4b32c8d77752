#include "btrob/align.hpp"

#include "btrob/text.hpp"

namespace btrob {

double similarity_ratio(const std::vector<MatchBlock>& blocks, std::size_t size_a, std::size_t size_b) {
  if (size_a + size_b == 0) return 1.0;
  std::size_t matched = 0;
  for (const auto& b : blocks) matched += b.length;
  return 2.0 * static_cast<double>(matched) / static_cast<double>(size_a + size_b);
}

double similarity_ratio(std::string_view a, std::string_view b) {
  const std::u32string ua = utf8_decode(a), ub = utf8_decode(b);
  return similarity_ratio(ro_align(ua, ub), ua.size(), ub.size());
}

std::string_view to_string(SpanKind kind) {
  switch (kind) {
    case SpanKind::inserted: return "inserted";
    case SpanKind::missing: return "missing";
    case SpanKind::replaced: return "replaced";
  }
  return "?";
}

std::vector<DiffSpan> diff_spans(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  std::vector<MatchBlock> blocks = ro_align(ref, hyp);
  blocks.push_back({ref.size(), hyp.size(), 0});

  std::vector<DiffSpan> spans;
  std::size_t r = 0, h = 0;
  for (const auto& b : blocks) {
    if (b.start_a > r || b.start_b > h) {
      const SpanKind kind = b.start_a == r ? SpanKind::inserted : b.start_b == h ? SpanKind::missing : SpanKind::replaced;
      spans.push_back({r, b.start_a, h, b.start_b, kind});
    }
    r = b.start_a + b.length;
    h = b.start_b + b.length;
  }
  return spans;
}

}  // namespace btrob
