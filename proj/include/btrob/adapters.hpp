#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>

#include "btrob/corpus.hpp"

namespace btrob {

struct Audio {
  std::string bytes;
  std::string format = "wav";

  bool operator==(const Audio&) const = default;
};

/// Common surface of the external TTS/ASR/NLU services. Implementations must
/// be callable from several threads at once.
class Adapter {
 public:
  virtual ~Adapter() = default;

  /// Stable name of the backing service, e.g. "http:http://localhost:8001/tts".
  virtual std::string identity() const = 0;
  /// Digest of any configuration that changes the adapter's outputs.
  virtual std::string config_fingerprint() const { return {}; }
  virtual bool deterministic() const { return true; }
};

class TtsAdapter : public Adapter {
 public:
  virtual Audio synthesize(std::string_view text) const = 0;
};

class AsrAdapter : public Adapter {
 public:
  virtual std::string transcribe(const Audio& audio) const = 0;
};

class NluAdapter : public Adapter {
 public:
  virtual NluOutcome understand(std::string_view text, Task task) const = 0;
};

// HTTP adapters ---------------------------------------------------------------
//
// TTS: POST {"text"} -> {"audio_b64", "format"}
// ASR: POST {"audio_b64", "format"} -> {"text"}
// NLU: POST {"text", "task"} -> OUTCOME

struct HttpEndpoint {
  std::string url;      // scheme://host[:port]/path
  std::string api_key;  // sent as "Authorization: Bearer <key>" when non-empty
  std::chrono::seconds timeout{60};
};

class HttpTtsAdapter final : public TtsAdapter {
 public:
  explicit HttpTtsAdapter(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::string identity() const override { return "http-tts:" + endpoint_.url; }
  Audio synthesize(std::string_view text) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpAsrAdapter final : public AsrAdapter {
 public:
  explicit HttpAsrAdapter(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::string identity() const override { return "http-asr:" + endpoint_.url; }
  std::string transcribe(const Audio& audio) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpNluAdapter final : public NluAdapter {
 public:
  explicit HttpNluAdapter(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::string identity() const override { return "http-nlu:" + endpoint_.url; }
  NluOutcome understand(std::string_view text, Task task) const override;

 private:
  HttpEndpoint endpoint_;
};

/// POSTs a JSON body and returns the parsed JSON response. Throws
/// AdapterError on transport failures and non-200 replies.
Json http_post_json(const HttpEndpoint& endpoint, const Json& body);

// File-backed mocks -----------------------------------------------------------
//
// Table files are JSON objects:
//   {"entries": {key: value, ...}, "fallback": "echo" | "error", "default": OUTCOME}
// TTS maps text -> audio string, ASR maps audio string -> text, NLU maps
// text -> OUTCOME. "echo" passes the input through (TTS/ASR only); NLU falls
// back to "default" when present, otherwise fails.

class MockTable {
 public:
  MockTable() = default;
  explicit MockTable(Json table);
  static MockTable load(const std::string& path);

  const Json* lookup(std::string_view key) const;
  bool echo_fallback() const noexcept { return echo_; }
  const Json* default_value() const;
  const std::string& fingerprint() const noexcept { return fingerprint_; }

 private:
  Json table_ = Json::object();
  bool echo_ = true;
  std::string fingerprint_;
};

class MockTtsAdapter final : public TtsAdapter {
 public:
  explicit MockTtsAdapter(MockTable table = {}) : table_(std::move(table)) {}
  std::string identity() const override { return "mock-tts"; }
  std::string config_fingerprint() const override { return table_.fingerprint(); }
  Audio synthesize(std::string_view text) const override;
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  MockTable table_;
  mutable std::atomic<std::size_t> calls_{0};
};

class MockAsrAdapter final : public AsrAdapter {
 public:
  explicit MockAsrAdapter(MockTable table = {}) : table_(std::move(table)) {}
  std::string identity() const override { return "mock-asr"; }
  std::string config_fingerprint() const override { return table_.fingerprint(); }
  std::string transcribe(const Audio& audio) const override;
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  MockTable table_;
  mutable std::atomic<std::size_t> calls_{0};
};

class MockNluAdapter final : public NluAdapter {
 public:
  explicit MockNluAdapter(MockTable table = {}) : table_(std::move(table)) {}
  std::string identity() const override { return "mock-nlu"; }
  std::string config_fingerprint() const override { return table_.fingerprint(); }
  NluOutcome understand(std::string_view text, Task task) const override;
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  MockTable table_;
  mutable std::atomic<std::size_t> calls_{0};
};

}  // namespace btrob
