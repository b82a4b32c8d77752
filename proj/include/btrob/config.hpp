#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "btrob/adapters.hpp"
#include "btrob/btpipe.hpp"

namespace btrob {

/// `key = value` lines; '#' starts a comment; blank lines ignored.
/// Throws ConfigError on lines without '=' or repeated keys.
std::map<std::string, std::string> parse_key_value(std::istream& in);

/// How one adapter role is backed: an HTTP endpoint or a mock table. With
/// neither, TTS/ASR use an echo mock and NLU is an error.
struct AdapterSpec {
  std::string url;
  std::string api_key;
  std::filesystem::path mock_table;
  std::chrono::seconds timeout{60};
};

struct ToolConfig {
  AdapterSpec tts;
  AdapterSpec asr;
  AdapterSpec nlu;
  RunConfig run;
};

/// Recognized keys: {tts,asr,nlu}.{url,api_key,mock,timeout_seconds},
/// api_key, max_parallel_requests, retry_limit, retry_backoff_ms,
/// cache_directory, audio_directory and
/// normalize.{lowercase,collapse_whitespace,strip_outer_whitespace,strip_terminal_punctuation}.
/// Relative paths resolve against `base_dir`.
ToolConfig tool_config_from(const std::map<std::string, std::string>& values,
                            const std::filesystem::path& base_dir = {});
ToolConfig load_tool_config(const std::filesystem::path& path);

struct AdapterSet {
  std::unique_ptr<TtsAdapter> tts;
  std::unique_ptr<AsrAdapter> asr;
  std::unique_ptr<NluAdapter> nlu;
};

AdapterSet make_adapters(const ToolConfig& config);

}  // namespace btrob
