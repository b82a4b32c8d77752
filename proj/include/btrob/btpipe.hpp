#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "btrob/adapters.hpp"
#include "btrob/corpus.hpp"

namespace btrob {

struct RunConfig {
  std::size_t max_parallel_requests = 1;
  /// Extra attempts after the first failed adapter call.
  std::size_t retry_limit = 2;
  std::chrono::milliseconds retry_backoff{0};
  /// One file per cache key; no caching when unset.
  std::optional<std::filesystem::path> cache_directory;
  /// When set, the synthesized audio of each sample is written here as
  /// `<audio_file_name(id)>`.
  std::optional<std::filesystem::path> audio_directory;
  /// Applied to ASR output before it becomes h(s).
  NormalizationPolicy policy;
};

struct SampleFailure {
  std::string id;
  std::string stage;  // tts, asr, nlu-before, nlu-after
  std::string message;
};

struct AdapterInfo {
  std::string role;
  std::string identity;
  std::string fingerprint;
  bool deterministic = true;
};

struct RunMetadata {
  std::vector<AdapterInfo> adapters;
  std::string config_hash;
  std::string started_at;
  std::string finished_at;
  std::size_t samples = 0;
  std::size_t completed = 0;
  std::size_t adapter_calls = 0;
  std::size_t cache_hits = 0;
  std::vector<SampleFailure> failures;

  Json to_json() const;
};

struct BackTranscription {
  Corpus corpus;
  RunMetadata metadata;
};

/// Runs TTS -> ASR -> NLU for every sample and fills hypothesis, before and
/// after. Samples whose adapter calls still fail after retries are copied
/// through unchanged and listed in `metadata.failures`. The output is keyed
/// by sample id and independent of `max_parallel_requests`.
BackTranscription back_transcribe(const Corpus& corpus, const TtsAdapter& tts, const AsrAdapter& asr,
                                  const NluAdapter& nlu, const RunConfig& config);

/// File name used for exported audio: the id with every byte outside
/// [A-Za-z0-9._-] replaced by '_', plus ".wav".
std::string audio_file_name(std::string_view sample_id);

// Word error rate -------------------------------------------------------------

struct WordErrorStats {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_tokens = 0;

  std::size_t errors() const noexcept { return substitutions + insertions + deletions; }
  /// Throws MetricError when there are no reference tokens.
  double rate() const;

  WordErrorStats& operator+=(const WordErrorStats& other);
};

/// Minimum token edit distance between one pair, split by operation type.
WordErrorStats word_errors(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis);

/// Corpus-level WER: errors summed over pairs divided by total reference
/// tokens. Texts are tokenized on whitespace. Throws MetricError on a length
/// mismatch or zero reference tokens.
double word_error_rate(const std::vector<std::string>& references, const std::vector<std::string>& hypotheses);

WordErrorStats corpus_word_errors(const std::vector<std::string>& references,
                                  const std::vector<std::string>& hypotheses);

}  // namespace btrob
