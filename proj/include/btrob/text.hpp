#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace btrob {

/// Controls how texts and labels are canonicalized before comparison.
struct NormalizationPolicy {
  bool lowercase = true;
  bool collapse_whitespace = true;
  bool strip_outer_whitespace = true;
  bool strip_terminal_punctuation = false;

  bool operator==(const NormalizationPolicy&) const = default;
};

/// Applies `policy` to `text`. Idempotent. Lowercasing only touches ASCII;
/// other bytes pass through unchanged.
std::string normalize_text(std::string_view text, const NormalizationPolicy& policy = {});

/// Splits on ASCII whitespace; never yields empty tokens.
std::vector<std::string> tokenize(std::string_view text);

std::string join(const std::vector<std::string>& tokens, std::string_view separator = " ");

bool is_space(char c) noexcept;

// UTF-8 helpers. Invalid bytes decode to U+DC80..U+DCFF and encode back to
// the original byte, so decode/encode round-trips arbitrary input.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);

}  // namespace btrob
