#include "btrob/btpipe.hpp"

#include <atomic>
#include <ctime>
#include <fstream>
#include <functional>
#include <iterator>
#include <mutex>
#include <thread>

#include "btrob/error.hpp"
#include "btrob/hash.hpp"

namespace btrob {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class DiskCache {
 public:
  explicit DiskCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {
    if (dir_) fs::create_directories(*dir_);
  }

  std::optional<std::string> get(const std::string& key) const {
    if (!dir_) return std::nullopt;
    std::ifstream in(*dir_ / key, std::ios::binary);
    if (!in) return std::nullopt;
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void put(const std::string& key, const std::string& value) const {
    if (!dir_) return;
    // Write-then-rename keeps concurrent readers from seeing partial files.
    const fs::path tmp = *dir_ / (key + ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw AdapterError("cannot write cache file " + tmp.string());
      out.write(value.data(), static_cast<std::streamsize>(value.size()));
    }
    fs::rename(tmp, *dir_ / key);
  }

 private:
  std::optional<fs::path> dir_;
};

std::string cache_key(const Adapter& adapter, std::string_view role, std::string_view input) {
  std::string material;
  material.append(adapter.identity()).push_back('\0');
  material.append(adapter.config_fingerprint()).push_back('\0');
  material.append(role).push_back('\0');
  material.append(input);
  return sha256_hex(material);
}

// Audio is cached as "<format>\n<bytes>".
std::string encode_audio(const Audio& audio) { return audio.format + '\n' + audio.bytes; }

Audio decode_audio(const std::string& blob) {
  const auto nl = blob.find('\n');
  if (nl == std::string::npos) throw AdapterError("corrupt audio cache entry");
  return {blob.substr(nl + 1), blob.substr(0, nl)};
}

struct Counters {
  std::atomic<std::size_t> calls{0};
  std::atomic<std::size_t> hits{0};
};

class StageFailed : public std::runtime_error {
 public:
  StageFailed(std::string stage, const std::string& message)
      : std::runtime_error(message), stage(std::move(stage)) {}
  std::string stage;
};

class Runner {
 public:
  Runner(const TtsAdapter& tts, const AsrAdapter& asr, const NluAdapter& nlu, const RunConfig& config)
      : tts_(tts), asr_(asr), nlu_(nlu), config_(config), cache_(config.cache_directory) {
    if (config_.audio_directory) fs::create_directories(*config_.audio_directory);
  }

  Sample process(const Sample& input) {
    Sample out = input;
    const Task task = input.expected.task();

    const std::string audio_blob = cached(tts_, "tts", "tts", input.reference,
                                          [&] { return encode_audio(tts_.synthesize(input.reference)); });
    const Audio audio = decode_audio(audio_blob);
    if (config_.audio_directory) {
      std::ofstream wav(*config_.audio_directory / audio_file_name(input.id), std::ios::binary | std::ios::trunc);
      wav.write(audio.bytes.data(), static_cast<std::streamsize>(audio.bytes.size()));
    }

    const std::string transcript = cached(asr_, "asr", "asr", audio_blob, [&] { return asr_.transcribe(audio); });
    const std::string hypothesis = normalize_text(transcript, config_.policy);

    const auto understand = [&](const char* stage, const std::string& text) {
      const std::string task_name(to_string(task));
      const std::string json = cached(nlu_, stage, "nlu:" + task_name, text, [&] {
        return outcome_to_json(nlu_.understand(text, task)).dump();
      });
      return outcome_from_json(Json::parse(json)).normalized(config_.policy);
    };
    NluOutcome before = understand("nlu-before", input.reference);
    NluOutcome after = understand("nlu-after", hypothesis);
    if (before.task() != task || after.task() != task) throw StageFailed("nlu", "NLU returned the wrong task");

    out.hypothesis = hypothesis;
    out.before = std::move(before);
    out.after = std::move(after);
    return out;
  }

  const Counters& counters() const { return counters_; }

 private:
  template <typename Call>
  std::string cached(const Adapter& adapter, const char* stage, std::string_view role, std::string_view input,
                     Call&& call) {
    const std::string key = cache_key(adapter, role, input);
    if (auto hit = cache_.get(key)) {
      ++counters_.hits;
      return *hit;
    }
    std::string last_error;
    for (std::size_t attempt = 0; attempt <= config_.retry_limit; ++attempt) {
      if (attempt > 0 && config_.retry_backoff.count() > 0) std::this_thread::sleep_for(config_.retry_backoff * attempt);
      ++counters_.calls;
      try {
        std::string value = call();
        cache_.put(key, value);
        return value;
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    throw StageFailed(stage, last_error + " (after " + std::to_string(config_.retry_limit + 1) + " attempts)");
  }

  const TtsAdapter& tts_;
  const AsrAdapter& asr_;
  const NluAdapter& nlu_;
  const RunConfig& config_;
  DiskCache cache_;
  Counters counters_;
};

std::string config_hash(const std::vector<AdapterInfo>& adapters, const RunConfig& config) {
  Json j = Json::object();
  for (const auto& a : adapters) j["adapters"].push_back({{"role", a.role}, {"identity", a.identity}, {"fingerprint", a.fingerprint}});
  j["retry_limit"] = config.retry_limit;
  j["policy"] = {config.policy.lowercase, config.policy.collapse_whitespace, config.policy.strip_outer_whitespace,
                 config.policy.strip_terminal_punctuation};
  return sha256_hex(j.dump());
}

}  // namespace

std::string audio_file_name(std::string_view sample_id) {
  std::string name;
  for (char c : sample_id) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                      c == '_' || c == '-';
    name.push_back(keep ? c : '_');
  }
  return name + ".wav";
}

Json RunMetadata::to_json() const {
  Json j = Json::object();
  Json a = Json::array();
  for (const auto& info : adapters) {
    a.push_back({{"role", info.role},
                 {"identity", info.identity},
                 {"fingerprint", info.fingerprint},
                 {"deterministic", info.deterministic}});
  }
  j["adapters"] = std::move(a);
  j["config_hash"] = config_hash;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["samples"] = samples;
  j["completed"] = completed;
  j["adapter_calls"] = adapter_calls;
  j["cache_hits"] = cache_hits;
  Json f = Json::array();
  for (const auto& failure : failures)
    f.push_back({{"id", failure.id}, {"stage", failure.stage}, {"message", failure.message}});
  j["failures"] = std::move(f);
  return j;
}

BackTranscription back_transcribe(const Corpus& corpus, const TtsAdapter& tts, const AsrAdapter& asr,
                                  const NluAdapter& nlu, const RunConfig& config) {
  if (config.max_parallel_requests < 1) throw ConfigError("max_parallel_requests must be at least 1");

  RunMetadata meta;
  meta.started_at = utc_now();
  meta.adapters = {
      {"tts", tts.identity(), tts.config_fingerprint(), tts.deterministic()},
      {"asr", asr.identity(), asr.config_fingerprint(), asr.deterministic()},
      {"nlu", nlu.identity(), nlu.config_fingerprint(), nlu.deterministic()},
  };
  meta.config_hash = config_hash(meta.adapters, config);
  meta.samples = corpus.size();

  Runner runner(tts, asr, nlu, config);
  std::vector<std::optional<Sample>> results(corpus.size());
  std::vector<std::optional<SampleFailure>> failures(corpus.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        results[i] = runner.process(corpus[i]);
      } catch (const StageFailed& e) {
        failures[i] = SampleFailure{corpus[i].id, e.stage, e.what()};
      } catch (const std::exception& e) {
        failures[i] = SampleFailure{corpus[i].id, "pipeline", e.what()};
      }
    }
  };

  const std::size_t workers = std::min(config.max_parallel_requests, corpus.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<Sample> samples;
  samples.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (results[i]) {
      samples.push_back(std::move(*results[i]));
      ++meta.completed;
    } else {
      samples.push_back(corpus[i]);
      meta.failures.push_back(std::move(*failures[i]));
    }
  }
  meta.adapter_calls = runner.counters().calls;
  meta.cache_hits = runner.counters().hits;
  meta.finished_at = utc_now();
  return {Corpus(std::move(samples)), std::move(meta)};
}

}  // namespace btrob
