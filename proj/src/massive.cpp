#include <fstream>
#include <istream>

#include "btrob/corpus.hpp"
#include "btrob/error.hpp"

namespace btrob {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

const std::string& field(const Json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) throw CorpusError(std::string("missing required field '") + key + "'");
  if (!it->is_string()) throw CorpusError(std::string("field '") + key + "' must be a string");
  return it->get_ref<const std::string&>();
}

}  // namespace

std::vector<Slot> parse_slot_markup(std::string_view annotated) {
  std::vector<Slot> slots;
  std::size_t i = 0;
  while (i < annotated.size()) {
    const char c = annotated[i];
    if (c == ']') throw CorpusError("unbalanced ']' at offset " + std::to_string(i) + " in \"" + std::string(annotated) + "\"");
    if (c != '[') {
      ++i;
      continue;
    }
    const std::size_t close = annotated.find_first_of("[]", i + 1);
    if (close == std::string_view::npos || annotated[close] != ']')
      throw CorpusError("unbalanced '[' at offset " + std::to_string(i) + " in \"" + std::string(annotated) + "\"");
    const std::string_view inner = annotated.substr(i + 1, close - i - 1);
    const std::size_t colon = inner.find(':');
    if (colon == std::string_view::npos)
      throw CorpusError("slot markup without ':' in \"" + std::string(annotated) + "\"");
    std::string name = trim(inner.substr(0, colon));
    if (name.empty()) throw CorpusError("slot markup with empty name in \"" + std::string(annotated) + "\"");
    slots.push_back({std::move(name), trim(inner.substr(colon + 1))});
    i = close + 1;
  }
  return slots;
}

Corpus read_massive(std::istream& in, const MassiveImportOptions& options) {
  std::vector<Sample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (tokenize(line).empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    try {
      Json record;
      try {
        record = Json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw CorpusError(std::string("malformed JSON (") + e.what() + ")");
      }
      if (!record.is_object()) throw CorpusError("record must be a JSON object");
      const std::string& partition = field(record, "partition");
      if (options.partition && partition != *options.partition) continue;

      Sample s;
      // MASSIVE 1.1 stores ids as strings; older dumps used integers.
      const auto id = record.find("id");
      if (id != record.end() && id->is_number_integer()) {
        s.id = std::to_string(id->get<long long>());
      } else {
        s.id = field(record, "id");
      }
      s.reference = normalize_text(field(record, "utt"), options.policy);
      switch (options.task) {
        case Task::domain: s.expected = NluOutcome::domain(field(record, "scenario")); break;
        case Task::intent: s.expected = NluOutcome::intent(field(record, "intent")); break;
        case Task::slots: s.expected = NluOutcome::slots(parse_slot_markup(field(record, "annot_utt"))); break;
      }
      s.expected = s.expected.normalized(options.policy);
      s.extra["partition"] = partition;
      samples.push_back(std::move(s));
    } catch (const CorpusError& e) {
      throw CorpusError(where + e.what());
    }
  }
  return Corpus(std::move(samples));
}

Corpus import_massive(const std::string& path, const MassiveImportOptions& options) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open MASSIVE file '" + path + "'");
  try {
    return read_massive(in, options);
  } catch (const CorpusError& e) {
    throw CorpusError(path + ": " + e.what());
  }
}

std::map<std::string, std::size_t> massive_partition_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open MASSIVE file '" + path + "'");
  std::map<std::string, std::size_t> counts;
  std::string line;
  while (std::getline(in, line)) {
    if (tokenize(line).empty()) continue;
    const Json record = Json::parse(line);
    ++counts[field(record, "partition")];
  }
  return counts;
}

}  // namespace btrob
