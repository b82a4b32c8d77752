#include "btrob/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "btrob/error.hpp"

namespace btrob {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::domain: return "domain";
    case Task::intent: return "intent";
    case Task::slots: return "slots";
  }
  return "?";
}

Task parse_task(std::string_view name) {
  if (name == "domain") return Task::domain;
  if (name == "intent") return Task::intent;
  if (name == "slots") return Task::slots;
  throw CorpusError("unknown task '" + std::string(name) + "' (expected domain, intent or slots)");
}

NluOutcome::NluOutcome(Task task, std::string label, std::vector<Slot> slots)
    : task_(task), label_(std::move(label)), slots_(std::move(slots)) {
  std::sort(slots_.begin(), slots_.end());
  slots_.erase(std::unique(slots_.begin(), slots_.end()), slots_.end());
}

NluOutcome NluOutcome::domain(std::string label) { return {Task::domain, std::move(label), {}}; }
NluOutcome NluOutcome::intent(std::string label) { return {Task::intent, std::move(label), {}}; }
NluOutcome NluOutcome::slots(std::vector<Slot> slots) { return {Task::slots, {}, std::move(slots)}; }

NluOutcome NluOutcome::normalized(const NormalizationPolicy& policy) const {
  std::vector<Slot> slots;
  slots.reserve(slots_.size());
  for (const auto& s : slots_) slots.push_back({normalize_text(s.name, policy), normalize_text(s.value, policy)});
  return {task_, normalize_text(label_, policy), std::move(slots)};
}

bool outcome_equal(const NluOutcome& a, const NluOutcome& b) {
  if (a.task() != b.task()) {
    throw CorpusError("cannot compare a " + std::string(to_string(a.task())) + " outcome with a " +
                      std::string(to_string(b.task())) + " outcome");
  }
  return a.is_label() ? a.label() == b.label() : a.slot_set() == b.slot_set();
}

Json outcome_to_json(const NluOutcome& outcome) {
  Json j = Json::object();
  j["task"] = std::string(to_string(outcome.task()));
  if (outcome.is_label()) {
    j["label"] = outcome.label();
  } else {
    Json slots = Json::array();
    for (const auto& s : outcome.slot_set()) slots.push_back(Json{{"name", s.name}, {"value", s.value}});
    j["slots"] = std::move(slots);
  }
  return j;
}

namespace {

const std::string& require_string(const Json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw CorpusError(std::string(what) + " is missing field '" + key + "'");
  if (!it->is_string()) throw CorpusError(std::string(what) + " field '" + key + "' must be a string");
  return it->get_ref<const std::string&>();
}

}  // namespace

NluOutcome outcome_from_json(const Json& json) {
  if (!json.is_object()) throw CorpusError("outcome must be a JSON object");
  const Task task = parse_task(require_string(json, "task", "outcome"));
  if (task != Task::slots) {
    const std::string& label = require_string(json, "label", "outcome");
    return task == Task::domain ? NluOutcome::domain(label) : NluOutcome::intent(label);
  }
  const auto it = json.find("slots");
  if (it == json.end() || !it->is_array()) throw CorpusError("slot outcome needs a 'slots' array");
  std::vector<Slot> slots;
  for (const auto& s : *it) {
    if (!s.is_object()) throw CorpusError("slot entries must be objects");
    slots.push_back({require_string(s, "name", "slot"), require_string(s, "value", "slot")});
  }
  return NluOutcome::slots(std::move(slots));
}

// Corpus ----------------------------------------------------------------------

std::map<std::string, std::size_t, std::less<>> Corpus::build_index(const std::vector<Sample>& samples) {
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!index.emplace(samples[i].id, i).second) throw CorpusError("duplicate sample id '" + samples[i].id + "'");
  }
  return index;
}

Corpus::Corpus(std::vector<Sample> samples) : samples_(std::move(samples)) {
  for (const auto& s : samples_) validate_sample(s);
  index_ = build_index(samples_);
}

const Sample* Corpus::find(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &samples_[it->second];
}

void validate_sample(const Sample& s) {
  const auto fail = [&](const std::string& why) { throw CorpusError("sample '" + s.id + "': " + why); };
  if (s.id.empty()) throw CorpusError("sample with empty id");
  if (tokenize(s.reference).empty()) fail("reference is empty");
  if (s.after && !s.hypothesis) fail("'after' outcome present without a hypothesis");
  for (const auto* o : {&s.before, &s.after}) {
    if (*o && (*o)->task() != s.expected.task()) fail("outcome kinds disagree with the expected outcome");
  }
}

Sample sample_from_json(const Json& json, const NormalizationPolicy& policy) {
  if (!json.is_object()) throw CorpusError("record must be a JSON object");
  Sample s;
  s.id = require_string(json, "id", "record");
  s.reference = normalize_text(require_string(json, "reference", "record"), policy);
  const auto expected = json.find("expected");
  if (expected == json.end() || expected->is_null()) throw CorpusError("record is missing field 'expected'");
  s.expected = outcome_from_json(*expected).normalized(policy);
  if (const auto h = json.find("hypothesis"); h != json.end() && !h->is_null()) {
    if (!h->is_string()) throw CorpusError("record field 'hypothesis' must be a string or null");
    s.hypothesis = normalize_text(h->get_ref<const std::string&>(), policy);
  }
  if (const auto b = json.find("before"); b != json.end() && !b->is_null())
    s.before = outcome_from_json(*b).normalized(policy);
  if (const auto a = json.find("after"); a != json.end() && !a->is_null())
    s.after = outcome_from_json(*a).normalized(policy);
  for (const auto& [key, value] : json.items()) {
    if (key != "id" && key != "reference" && key != "hypothesis" && key != "expected" && key != "before" &&
        key != "after") {
      s.extra[key] = value;
    }
  }
  validate_sample(s);
  return s;
}

Json sample_to_json(const Sample& s) {
  Json j = Json::object();
  j["id"] = s.id;
  j["reference"] = s.reference;
  j["hypothesis"] = s.hypothesis ? Json(*s.hypothesis) : Json(nullptr);
  j["expected"] = outcome_to_json(s.expected);
  j["before"] = s.before ? outcome_to_json(*s.before) : Json(nullptr);
  j["after"] = s.after ? outcome_to_json(*s.after) : Json(nullptr);
  for (const auto& [key, value] : s.extra.items()) j[key] = value;
  return j;
}

Corpus read_corpus(std::istream& in, const NormalizationPolicy& policy) {
  std::vector<Sample> samples;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (tokenize(line).empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    Json json;
    try {
      json = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorpusError(where + "malformed JSON (" + e.what() + ")");
    }
    try {
      samples.push_back(sample_from_json(json, policy));
    } catch (const CorpusError& e) {
      throw CorpusError(where + e.what());
    }
    const auto [it, fresh] = seen.emplace(samples.back().id, line_no);
    if (!fresh) {
      throw CorpusError(where + "duplicate sample id '" + it->first + "' (first seen on line " +
                        std::to_string(it->second) + ")");
    }
  }
  return Corpus(std::move(samples));
}

Corpus load_corpus(const std::string& path, const NormalizationPolicy& policy) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'");
  try {
    return read_corpus(in, policy);
  } catch (const CorpusError& e) {
    throw CorpusError(path + ": " + e.what());
  }
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& s : corpus) out << sample_to_json(s).dump() << '\n';
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write corpus file '" + path + "'");
  write_corpus(out, corpus);
}

}  // namespace btrob
