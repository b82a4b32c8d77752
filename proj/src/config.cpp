#include "btrob/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "btrob/error.hpp"

namespace btrob {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::size_t to_size(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("'" + key + "' must be a non-negative integer, got '" + value + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("'" + key + "' must be a boolean, got '" + value + "'");
}

}  // namespace

std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!values.emplace(key, trim(std::string_view(content).substr(eq + 1))).second)
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' given twice");
  }
  return values;
}

ToolConfig tool_config_from(const std::map<std::string, std::string>& values, const std::filesystem::path& base_dir) {
  ToolConfig config;
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  std::string shared_key;
  for (const auto& [key, value] : values) {
    if (key == "api_key") {
      shared_key = value;
      continue;
    }
    if (key == "max_parallel_requests") {
      config.run.max_parallel_requests = to_size(key, value);
      if (config.run.max_parallel_requests < 1) throw ConfigError("max_parallel_requests must be at least 1");
    } else if (key == "retry_limit") {
      config.run.retry_limit = to_size(key, value);
    } else if (key == "retry_backoff_ms") {
      config.run.retry_backoff = std::chrono::milliseconds(to_size(key, value));
    } else if (key == "cache_directory") {
      config.run.cache_directory = resolve(value);
    } else if (key == "audio_directory") {
      config.run.audio_directory = resolve(value);
    } else if (key == "normalize.lowercase") {
      config.run.policy.lowercase = to_bool(key, value);
    } else if (key == "normalize.collapse_whitespace") {
      config.run.policy.collapse_whitespace = to_bool(key, value);
    } else if (key == "normalize.strip_outer_whitespace") {
      config.run.policy.strip_outer_whitespace = to_bool(key, value);
    } else if (key == "normalize.strip_terminal_punctuation") {
      config.run.policy.strip_terminal_punctuation = to_bool(key, value);
    } else {
      const auto dot = key.find('.');
      const std::string role = key.substr(0, dot);
      AdapterSpec* spec = role == "tts" ? &config.tts : role == "asr" ? &config.asr : role == "nlu" ? &config.nlu : nullptr;
      const std::string field = dot == std::string::npos ? "" : key.substr(dot + 1);
      if (!spec) throw ConfigError("unknown config key '" + key + "'");
      if (field == "url") {
        spec->url = value;
      } else if (field == "api_key") {
        spec->api_key = value;
      } else if (field == "mock") {
        spec->mock_table = resolve(value);
      } else if (field == "timeout_seconds") {
        spec->timeout = std::chrono::seconds(to_size(key, value));
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  }
  for (AdapterSpec* spec : {&config.tts, &config.asr, &config.nlu}) {
    if (spec->api_key.empty()) spec->api_key = shared_key;
    if (!spec->url.empty() && !spec->mock_table.empty())
      throw ConfigError("an adapter cannot have both a url and a mock table");
  }
  return config;
}

ToolConfig load_tool_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return tool_config_from(parse_key_value(in), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

AdapterSet make_adapters(const ToolConfig& config) {
  const auto endpoint = [](const AdapterSpec& spec) { return HttpEndpoint{spec.url, spec.api_key, spec.timeout}; };
  const auto table = [](const AdapterSpec& spec) {
    return spec.mock_table.empty() ? MockTable{} : MockTable::load(spec.mock_table.string());
  };
  AdapterSet set;
  if (!config.tts.url.empty()) {
    set.tts = std::make_unique<HttpTtsAdapter>(endpoint(config.tts));
  } else {
    set.tts = std::make_unique<MockTtsAdapter>(table(config.tts));
  }
  if (!config.asr.url.empty()) {
    set.asr = std::make_unique<HttpAsrAdapter>(endpoint(config.asr));
  } else {
    set.asr = std::make_unique<MockAsrAdapter>(table(config.asr));
  }
  if (!config.nlu.url.empty()) {
    set.nlu = std::make_unique<HttpNluAdapter>(endpoint(config.nlu));
  } else if (!config.nlu.mock_table.empty()) {
    set.nlu = std::make_unique<MockNluAdapter>(table(config.nlu));
  } else {
    throw ConfigError("no NLU adapter configured (set nlu.url or nlu.mock)");
  }
  return set;
}

}  // namespace btrob
