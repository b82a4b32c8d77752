#include "btrob/audit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "btrob/btpipe.hpp"
#include "btrob/csv.hpp"
#include "btrob/error.hpp"

namespace btrob {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw AuditError("uniform_below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::option_1: return "option_1";
    case Verdict::option_2: return "option_2";
    case Verdict::both: return "both";
  }
  return "?";
}

Verdict parse_verdict(std::string_view text) {
  std::string v;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) v.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (v == "option_1" || v == "1") return Verdict::option_1;
  if (v == "option_2" || v == "2") return Verdict::option_2;
  if (v == "both") return Verdict::both;
  throw AuditError("unknown verdict '" + std::string(text) + "' (expected option_1, option_2 or both)");
}

AnnotationSheet make_annotation_sheet(const Corpus& corpus, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw AuditError("fraction must lie in [0, 1]");
  std::vector<const Sample*> candidates;
  for (const auto& s : corpus)
    if (s.text_changed()) candidates.push_back(&s);

  // The tiny shrink keeps products like 0.1 * 30 = 3.0000000000000004 at 3.
  const auto wanted = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(candidates.size()) * (1.0 - 1e-12)));

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < wanted; ++i) std::swap(order[i], order[i + uniform_below(rng, order.size() - i)]);
  order.resize(wanted);
  std::sort(order.begin(), order.end());

  AnnotationSheet sheet;
  for (std::size_t idx : order) {
    const Sample& s = *candidates[idx];
    AnnotationRow row;
    row.row = sheet.rows.size() + 1;
    row.sample_id = s.id;
    row.original_position = uniform_below(rng, 2) == 0 ? 1 : 2;
    row.option_1 = row.original_position == 1 ? s.reference : *s.hypothesis;
    row.option_2 = row.original_position == 1 ? *s.hypothesis : s.reference;
    row.audio = audio_file_name(s.id);
    sheet.rows.push_back(std::move(row));
  }
  return sheet;
}

void write_sheet_csv(std::ostream& out, const AnnotationSheet& sheet) {
  write_csv_row(out, {"row", "sample_id", "audio", "option_1", "option_2", "verdict"});
  for (const auto& r : sheet.rows) {
    write_csv_row(out, {std::to_string(r.row), r.sample_id, r.audio, r.option_1, r.option_2,
                        r.verdict ? std::string(to_string(*r.verdict)) : std::string()});
  }
}

void write_key_csv(std::ostream& out, const AnnotationSheet& sheet) {
  write_csv_row(out, {"row", "sample_id", "original_position"});
  for (const auto& r : sheet.rows) write_csv_row(out, {std::to_string(r.row), r.sample_id, std::to_string(r.original_position)});
}

namespace {

// Header name -> column index; throws when a required column is absent.
std::map<std::string, std::size_t> columns(const std::vector<CsvRow>& rows, const std::vector<std::string>& required,
                                           const char* what) {
  if (rows.empty()) throw AuditError(std::string(what) + " is empty");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rows[0].size(); ++i) index[rows[0][i]] = i;
  for (const auto& name : required)
    if (!index.count(name)) throw AuditError(std::string(what) + " lacks column '" + name + "'");
  return index;
}

std::size_t parse_row_number(const std::string& text, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || v == 0) throw AuditError(std::string(what) + ": bad row number '" + text + "'");
  return v;
}

const std::string& cell(const CsvRow& row, std::size_t i) {
  static const std::string empty;
  return i < row.size() ? row[i] : empty;
}

}  // namespace

AnnotationSheet read_annotation_sheet(std::istream& sheet_csv, std::istream& key_csv) {
  const std::vector<CsvRow> sheet_rows = read_csv(sheet_csv), key_rows = read_csv(key_csv);
  const auto sc = columns(sheet_rows, {"row", "sample_id", "audio", "option_1", "option_2", "verdict"}, "sheet");
  const auto kc = columns(key_rows, {"row", "sample_id", "original_position"}, "key file");

  std::map<std::size_t, std::pair<std::string, int>> key;
  for (std::size_t i = 1; i < key_rows.size(); ++i) {
    const CsvRow& r = key_rows[i];
    const std::size_t n = parse_row_number(cell(r, kc.at("row")), "key file");
    const std::string& pos = cell(r, kc.at("original_position"));
    if (pos != "1" && pos != "2") throw AuditError("key file row " + std::to_string(n) + ": original_position must be 1 or 2");
    if (!key.emplace(n, std::pair{cell(r, kc.at("sample_id")), pos == "1" ? 1 : 2}).second)
      throw AuditError("key file repeats row " + std::to_string(n));
  }

  AnnotationSheet sheet;
  for (std::size_t i = 1; i < sheet_rows.size(); ++i) {
    const CsvRow& r = sheet_rows[i];
    AnnotationRow row;
    row.row = parse_row_number(cell(r, sc.at("row")), "sheet");
    row.sample_id = cell(r, sc.at("sample_id"));
    row.audio = cell(r, sc.at("audio"));
    row.option_1 = cell(r, sc.at("option_1"));
    row.option_2 = cell(r, sc.at("option_2"));
    if (const std::string& v = cell(r, sc.at("verdict")); !v.empty()) row.verdict = parse_verdict(v);
    const auto k = key.find(row.row);
    if (k == key.end()) throw AuditError("sheet row " + std::to_string(row.row) + " is missing from the key file");
    if (k->second.first != row.sample_id)
      throw AuditError("sheet row " + std::to_string(row.row) + " names sample '" + row.sample_id +
                       "' but the key file says '" + k->second.first + "'");
    row.original_position = k->second.second;
    key.erase(k);
    sheet.rows.push_back(std::move(row));
  }
  if (!key.empty()) throw AuditError("key file row " + std::to_string(key.begin()->first) + " is missing from the sheet");
  return sheet;
}

double ResemblanceResult::resemblance() const {
  if (total == 0) throw AuditError("resemblance is undefined for an empty sheet");
  return static_cast<double>(utt + both) / static_cast<double>(total);
}

ResemblanceResult ResemblanceResult::from_counts(std::size_t total, std::size_t utt, std::size_t both) {
  if (utt + both > total) throw AuditError("utt + both exceeds total");
  return {total, utt, total - utt - both, both};
}

ResemblanceResult compute_resemblance(const AnnotationSheet& sheet) {
  std::string missing;
  ResemblanceResult r;
  for (const auto& row : sheet.rows) {
    if (!row.verdict) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(row.row);
      continue;
    }
    ++r.total;
    if (*row.verdict == Verdict::both) {
      ++r.both;
    } else if ((*row.verdict == Verdict::option_1) == (row.original_position == 1)) {
      ++r.utt;
    } else {
      ++r.aug;
    }
  }
  if (!missing.empty()) throw AuditError("rows without a verdict: " + missing);
  return r;
}

}  // namespace btrob
