#include "btrob/adapters.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "btrob/error.hpp"
#include "btrob/hash.hpp"

namespace btrob {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw AdapterError("endpoint URL needs a scheme: '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

Json http_post_json(const HttpEndpoint& endpoint, const Json& body) {
  const auto [origin, path] = split_url(endpoint.url);
  httplib::Client client(origin);
  client.set_connection_timeout(endpoint.timeout);
  client.set_read_timeout(endpoint.timeout);
  client.set_write_timeout(endpoint.timeout);
  httplib::Headers headers;
  if (!endpoint.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint.api_key);

  const auto result = client.Post(path, headers, body.dump(), "application/json");
  if (!result) throw AdapterError(endpoint.url + ": " + httplib::to_string(result.error()));
  if (result->status != 200) {
    throw AdapterError(endpoint.url + ": HTTP " + std::to_string(result->status) + " " + result->body.substr(0, 200));
  }
  try {
    return Json::parse(result->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw AdapterError(endpoint.url + ": response is not JSON (" + e.what() + ")");
  }
}

namespace {

const std::string& response_string(const Json& response, const char* key, const std::string& url) {
  const auto it = response.find(key);
  if (it == response.end() || !it->is_string())
    throw AdapterError(url + ": response lacks string field '" + key + "'");
  return it->get_ref<const std::string&>();
}

}  // namespace

Audio HttpTtsAdapter::synthesize(std::string_view text) const {
  const Json response = http_post_json(endpoint_, Json{{"text", std::string(text)}});
  Audio audio;
  audio.bytes = base64_decode(response_string(response, "audio_b64", endpoint_.url));
  if (const auto f = response.find("format"); f != response.end() && f->is_string()) audio.format = *f;
  return audio;
}

std::string HttpAsrAdapter::transcribe(const Audio& audio) const {
  const Json response =
      http_post_json(endpoint_, Json{{"audio_b64", base64_encode(audio.bytes)}, {"format", audio.format}});
  return response_string(response, "text", endpoint_.url);
}

NluOutcome HttpNluAdapter::understand(std::string_view text, Task task) const {
  const Json response =
      http_post_json(endpoint_, Json{{"text", std::string(text)}, {"task", std::string(to_string(task))}});
  NluOutcome outcome = [&] {
    try {
      return outcome_from_json(response);
    } catch (const CorpusError& e) {
      throw AdapterError(endpoint_.url + ": " + e.what());
    }
  }();
  if (outcome.task() != task) throw AdapterError(endpoint_.url + ": NLU answered with the wrong task");
  return outcome;
}

// Mocks -------------------------------------------------------------------------

MockTable::MockTable(Json table) : table_(std::move(table)) {
  if (!table_.is_object()) throw AdapterError("mock table must be a JSON object");
  if (const auto e = table_.find("entries"); e != table_.end() && !e->is_object())
    throw AdapterError("mock table 'entries' must be an object");
  if (const auto f = table_.find("fallback"); f != table_.end()) {
    if (*f == "echo") {
      echo_ = true;
    } else if (*f == "error") {
      echo_ = false;
    } else {
      throw AdapterError("mock table 'fallback' must be \"echo\" or \"error\"");
    }
  }
  fingerprint_ = sha256_hex(table_.dump());
}

MockTable MockTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AdapterError("cannot open mock table '" + path + "'");
  try {
    return MockTable(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw AdapterError("mock table '" + path + "' is not valid JSON: " + e.what());
  }
}

const Json* MockTable::lookup(std::string_view key) const {
  const auto entries = table_.find("entries");
  if (entries == table_.end()) return nullptr;
  const auto it = entries->find(std::string(key));
  return it == entries->end() ? nullptr : &*it;
}

const Json* MockTable::default_value() const {
  const auto it = table_.find("default");
  return it == table_.end() || it->is_null() ? nullptr : &*it;
}

Audio MockTtsAdapter::synthesize(std::string_view text) const {
  ++calls_;
  if (const Json* hit = table_.lookup(text)) return {hit->get<std::string>(), "wav"};
  if (table_.echo_fallback()) return {std::string(text), "wav"};
  throw AdapterError("mock TTS has no entry for \"" + std::string(text) + "\"");
}

std::string MockAsrAdapter::transcribe(const Audio& audio) const {
  ++calls_;
  if (const Json* hit = table_.lookup(audio.bytes)) return hit->get<std::string>();
  if (table_.echo_fallback()) return audio.bytes;
  throw AdapterError("mock ASR has no entry for the given audio");
}

NluOutcome MockNluAdapter::understand(std::string_view text, Task task) const {
  ++calls_;
  const Json* hit = table_.lookup(text);
  if (!hit) hit = table_.default_value();
  if (!hit) throw AdapterError("mock NLU has no entry for \"" + std::string(text) + "\"");
  NluOutcome outcome = outcome_from_json(*hit);
  if (outcome.task() != task) throw AdapterError("mock NLU entry for \"" + std::string(text) + "\" has the wrong task");
  return outcome;
}

}  // namespace btrob
