#include "btrob/editops.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "btrob/align.hpp"
#include "btrob/error.hpp"
#include "btrob/text.hpp"

namespace btrob {

std::string_view op_name(OpKind kind) {
  switch (kind) {
    case OpKind::del: return "del";
    case OpKind::replace: return "replace";
    case OpKind::insert_before: return "insert_before";
    case OpKind::insert_after: return "insert_after";
    case OpKind::add_prefix: return "add_prefix";
    case OpKind::add_suffix: return "add_suffix";
    case OpKind::del_suffix: return "del_suffix";
    case OpKind::del_prefix: return "del_prefix";
    case OpKind::replace_suffix: return "replace_suffix";
    case OpKind::sreplace: return "sreplace";
    case OpKind::join: return "join";
    case OpKind::split_after: return "split_after";
    case OpKind::split_on_first: return "split_on_first";
    case OpKind::split_on_last: return "split_on_last";
  }
  return "?";
}

namespace {

struct NamedKind {
  std::string_view name;
  OpKind kind;
};

// Longest names first so that prefix matching prefers "del_suffix" to "del".
const std::vector<NamedKind>& names_by_length() {
  static const std::vector<NamedKind> names = [] {
    std::vector<NamedKind> v;
    for (OpKind k : kAllOpKinds) v.push_back({op_name(k), k});
    v.push_back({"add_before", OpKind::insert_before});
    v.push_back({"add_after", OpKind::insert_after});
    v.push_back({"split_aftert", OpKind::split_after});
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.name.size() > b.name.size(); });
    return v;
  }();
  return names;
}

bool is_count_arg(OpKind kind) {
  return kind == OpKind::del_suffix || kind == OpKind::del_prefix || kind == OpKind::split_after;
}

std::size_t parse_count(const std::string& s) {
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
    throw EditOpError("expected a positive character count, got '" + s + "'");
  return n;
}

void escape_into(std::string& out, std::string_view text, std::string_view special) {
  for (char c : text) {
    if (special.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
}

std::string unescape(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) ++i;
    out.push_back(text[i]);
  }
  return out;
}

void check_args(const EditOp& op) {
  if (op.args.size() != op_arity(op.kind)) {
    throw EditOpError(std::string(op_name(op.kind)) + " takes " + std::to_string(op_arity(op.kind)) +
                      " argument(s), got " + std::to_string(op.args.size()));
  }
  if (is_count_arg(op.kind)) parse_count(op.args[0]);
  if ((op.kind == OpKind::split_on_first || op.kind == OpKind::split_on_last || op.kind == OpKind::sreplace) &&
      op.args[0].empty()) {
    throw EditOpError(std::string(op_name(op.kind)) + " needs a non-empty first argument");
  }
}

}  // namespace

std::optional<OpKind> op_kind_from_name(std::string_view name) {
  for (const auto& n : names_by_length())
    if (n.name == name) return n.kind;
  return std::nullopt;
}

std::size_t op_arity(OpKind kind) {
  switch (kind) {
    case OpKind::del: return 0;
    case OpKind::sreplace: return 2;
    default: return 1;
  }
}

std::string format_editop(const EditOp& op) {
  std::string out;
  if (op.anchor.empty()) {
    out = "\"\"";
  } else {
    escape_into(out, op.anchor, "\\[\"");
  }
  out.push_back('[');
  out.append(op_name(op.kind));
  for (const auto& arg : op.args) {
    out.push_back('_');
    escape_into(out, arg, "\\_");
  }
  out.push_back(']');
  return out;
}

EditOp parse_editop(std::string_view text) {
  const auto fail = [&](const std::string& why) -> EditOpError {
    return EditOpError("malformed edit op '" + std::string(text) + "': " + why);
  };
  if (text.size() < 3 || text.back() != ']') throw fail("must end with ']'");

  std::size_t open = std::string_view::npos;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '\\') {
      ++i;
    } else if (text[i] == '[') {
      open = i;
      break;
    }
  }
  if (open == std::string_view::npos) throw fail("missing '['");

  EditOp op;
  const std::string_view raw_anchor = text.substr(0, open);
  op.anchor = raw_anchor == "\"\"" ? std::string() : unescape(raw_anchor);
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);

  for (const auto& [name, kind] : names_by_length()) {
    if (body.substr(0, name.size()) != name) continue;
    std::vector<std::string> args;
    if (body.size() > name.size()) {
      if (body[name.size()] != '_') continue;
      std::string current;
      const std::string_view rest = body.substr(name.size() + 1);
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '\\' && i + 1 < rest.size()) {
          current.push_back(rest[++i]);
        } else if (rest[i] == '_') {
          args.push_back(std::move(current));
          current.clear();
        } else {
          current.push_back(rest[i]);
        }
      }
      args.push_back(std::move(current));
    }
    if (args.size() != op_arity(kind)) continue;
    op.kind = kind;
    op.args = std::move(args);
    try {
      check_args(op);
    } catch (const EditOpError& e) {
      throw fail(e.what());
    }
    return op;
  }
  throw fail("unknown operation or wrong argument count in '" + std::string(body) + "'");
}

// Extraction ----------------------------------------------------------------------

namespace {

using U32 = std::u32string;

std::size_t common_prefix(const U32& a, const U32& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

std::size_t common_suffix(const U32& a, const U32& b, std::size_t limit) {
  std::size_t n = 0;
  while (n < limit && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
  return n;
}

bool starts_with(const U32& s, const U32& p) { return s.size() >= p.size() && s.compare(0, p.size(), p) == 0; }
bool ends_with(const U32& s, const U32& p) {
  return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

bool is_alnum(char32_t c) { return c >= 0x80 || std::isalnum(static_cast<unsigned char>(c)); }

class Extractor {
 public:
  Extractor(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) : ref_(ref), hyp_(hyp) {}

  std::vector<EditOp> run() {
    for (const auto& span : diff_spans(ref_, hyp_)) {
      switch (span.kind) {
        case SpanKind::inserted:
          for (std::size_t h = span.hyp_begin; h < span.hyp_end; ++h) emit(h, OpKind::del, {});
          break;
        case SpanKind::missing:
          attach_trailing(span.ref_begin, span.ref_end, span.hyp_begin);
          break;
        case SpanKind::replaced:
          replaced(span);
          break;
      }
    }
    std::stable_sort(ops_.begin(), ops_.end(), [](const EditOp& a, const EditOp& b) { return *a.position < *b.position; });
    return std::move(ops_);
  }

 private:
  void emit(std::size_t position, OpKind kind, std::vector<std::string> args) {
    EditOp op;
    op.anchor = position < hyp_.size() ? hyp_[position] : std::string();
    op.kind = kind;
    op.args = std::move(args);
    op.position = position;
    ops_.push_back(std::move(op));
  }

  // Reference tokens [rb, re) that no hypothesis token inside the span covers;
  // `next_hyp` is the first hypothesis index after them.
  void attach_trailing(std::size_t rb, std::size_t re, std::size_t next_hyp) {
    for (std::size_t r = rb; r < re; ++r) {
      if (next_hyp < hyp_.size()) {
        emit(next_hyp, OpKind::insert_before, {ref_[r]});
      } else if (next_hyp > 0) {
        emit(next_hyp - 1, OpKind::insert_after, {ref_[r]});
      } else {
        emit(0, OpKind::insert_before, {ref_[r]});
      }
    }
  }

  void replaced(const DiffSpan& span) {
    const std::size_t nh = span.hyp_end - span.hyp_begin;
    const std::size_t nr = span.ref_end - span.ref_begin;
    if (nh == 2 && nr == 1 && try_join(span.hyp_begin, span.ref_begin)) return;
    if (nh == 1 && nr == 2 && try_split(span.hyp_begin, span.ref_begin)) return;
    if (nh == 1 && nr == 1) {
      token_pair(span.hyp_begin, span.ref_begin);
      return;
    }
    greedy_pairs(span);
  }

  bool try_join(std::size_t h, std::size_t r) {
    const U32 first = utf8_decode(hyp_[h]), second = utf8_decode(hyp_[h + 1]), target = utf8_decode(ref_[r]);
    if (target.size() < first.size() + second.size() || target.size() > first.size() + second.size() + 1) return false;
    if (!starts_with(target, first) || !ends_with(target, second)) return false;
    const U32 joiner = target.substr(first.size(), target.size() - first.size() - second.size());
    emit(h, OpKind::join, {utf8_encode(joiner)});
    return true;
  }

  bool try_split(std::size_t h, std::size_t r) {
    const U32 token = utf8_decode(hyp_[h]), left = utf8_decode(ref_[r]), right = utf8_decode(ref_[r + 1]);
    if (token == left + right) {
      emit(h, OpKind::split_after, {std::to_string(left.size())});
      return true;
    }
    if (token.size() != left.size() + right.size() + 1 || !starts_with(token, left) || !ends_with(token, right))
      return false;
    const char32_t sep = token[left.size()];
    const bool first = token.find(sep) == left.size();
    const bool last = token.rfind(sep) == left.size();
    const std::string arg = utf8_encode(U32(1, sep));
    // A separator occurring once satisfies both; punctuation prefers
    // split_on_first and letters split_on_last.
    if (first && (!last || !is_alnum(sep))) {
      emit(h, OpKind::split_on_first, {arg});
    } else if (last) {
      emit(h, OpKind::split_on_last, {arg});
    } else {
      return false;
    }
    return true;
  }

  void token_pair(std::size_t h, std::size_t r) {
    const U32 t = utf8_decode(hyp_[h]), u = utf8_decode(ref_[r]);
    if (t == u) return;
    const auto enc = [](const U32& s) { return utf8_encode(s); };

    if (u.size() > t.size() && ends_with(u, t)) return emit(h, OpKind::add_prefix, {enc(u.substr(0, u.size() - t.size()))});
    if (u.size() > t.size() && starts_with(u, t)) return emit(h, OpKind::add_suffix, {enc(u.substr(t.size()))});
    if (t.size() > u.size() && ends_with(t, u)) return emit(h, OpKind::del_prefix, {std::to_string(t.size() - u.size())});
    if (t.size() > u.size() && starts_with(t, u)) return emit(h, OpKind::del_suffix, {std::to_string(t.size() - u.size())});

    const std::size_t prefix = common_prefix(t, u);
    if (t.size() == u.size() && prefix >= 1 && t.back() != u.back()) {
      const std::size_t k = t.size() - prefix;
      if (k <= (t.size() + 1) / 2) return emit(h, OpKind::replace_suffix, {enc(u.substr(prefix))});
    }

    // One differing stretch with matching text on both sides. Apply
    // replaces the first occurrence, so widen leftwards until the stretch's
    // first occurrence in t is where it belongs.
    const std::size_t suffix = common_suffix(t, u, std::min(t.size(), u.size()) - prefix);
    if (prefix >= 1 && suffix >= 1 && t.size() > prefix + suffix) {
      for (std::size_t p = prefix; p >= 1; --p) {
        const U32 from = t.substr(p, t.size() - suffix - p);
        if (t.find(from) == p) return emit(h, OpKind::sreplace, {enc(from), enc(u.substr(p, u.size() - suffix - p))});
      }
    }
    emit(h, OpKind::replace, {ref_[r]});
  }

  // Pairs hypothesis and reference tokens of a span left to right, favouring
  // character similarity; unpaired tokens become del / insert ops.
  void greedy_pairs(const DiffSpan& span) {
    std::size_t h = span.hyp_begin, r = span.ref_begin;
    const auto ratio = [&](std::size_t hh, std::size_t rr) { return similarity_ratio(hyp_[hh], ref_[rr]); };
    while (h < span.hyp_end) {
      const std::size_t hyp_left = span.hyp_end - h, ref_left = span.ref_end - r;
      if (ref_left == 0) {
        emit(h++, OpKind::del, {});
        continue;
      }
      if (hyp_left > ref_left) {
        const double here = ratio(h, r);
        bool better_later = false;
        for (std::size_t k = 1; k <= hyp_left - ref_left && !better_later; ++k) better_later = ratio(h + k, r) > here;
        if (better_later) {
          emit(h++, OpKind::del, {});
          continue;
        }
        token_pair(h++, r++);
        continue;
      }
      std::size_t best = r;
      double best_ratio = ratio(h, r);
      for (std::size_t rr = r + 1; rr <= r + (ref_left - hyp_left); ++rr) {
        const double q = ratio(h, rr);
        if (q > best_ratio) {
          best = rr;
          best_ratio = q;
        }
      }
      for (; r < best; ++r) emit(h, OpKind::insert_before, {ref_[r]});
      token_pair(h++, r++);
    }
    attach_trailing(r, span.ref_end, span.hyp_end);
  }

  const std::vector<std::string>& ref_;
  const std::vector<std::string>& hyp_;
  std::vector<EditOp> ops_;
};

// Result of a single-token transform: zero, one or two words.
std::vector<std::string> transform(const EditOp& op, const std::string& token) {
  const U32 t = utf8_decode(token);
  const auto arg = [&](std::size_t i) { return utf8_decode(op.args[i]); };
  const auto fail = [&](const std::string& why) {
    return EditOpError("cannot apply " + format_editop(op) + ": " + why);
  };
  switch (op.kind) {
    case OpKind::del: return {};
    case OpKind::replace: return {op.args[0]};
    case OpKind::add_prefix: return {op.args[0] + token};
    case OpKind::add_suffix: return {token + op.args[0]};
    case OpKind::del_suffix:
    case OpKind::del_prefix: {
      const std::size_t n = parse_count(op.args[0]);
      if (n >= t.size()) throw fail("token is too short");
      return {utf8_encode(op.kind == OpKind::del_suffix ? t.substr(0, t.size() - n) : t.substr(n))};
    }
    case OpKind::replace_suffix: {
      const U32 s = arg(0);
      if (s.size() > t.size()) throw fail("token is too short");
      return {utf8_encode(t.substr(0, t.size() - s.size()) + s)};
    }
    case OpKind::sreplace: {
      const U32 from = arg(0);
      const std::size_t at = t.find(from);
      if (at == U32::npos) throw fail("substring not found");
      return {utf8_encode(t.substr(0, at) + arg(1) + t.substr(at + from.size()))};
    }
    case OpKind::split_after: {
      const std::size_t n = parse_count(op.args[0]);
      if (n >= t.size()) throw fail("token is too short");
      return {utf8_encode(t.substr(0, n)), utf8_encode(t.substr(n))};
    }
    case OpKind::split_on_first:
    case OpKind::split_on_last: {
      const U32 sep = arg(0);
      const std::size_t at = op.kind == OpKind::split_on_first ? t.find(sep) : t.rfind(sep);
      if (at == U32::npos) throw fail("separator not found");
      return {utf8_encode(t.substr(0, at)), utf8_encode(t.substr(at + sep.size()))};
    }
    case OpKind::insert_before:
    case OpKind::insert_after:
    case OpKind::join: break;
  }
  throw fail("not a single-token transform");
}

}  // namespace

std::vector<EditOp> extract_editops(std::string_view reference, std::string_view hypothesis) {
  const std::vector<std::string> ref = tokenize(reference), hyp = tokenize(hypothesis);
  return Extractor(ref, hyp).run();
}

std::string apply_editops(std::string_view hypothesis, const std::vector<EditOp>& ops) {
  const std::vector<std::string> tokens = tokenize(hypothesis);
  const std::size_t n = tokens.size();

  struct Slot {
    std::vector<std::string> before;
    std::vector<std::string> after;
    const EditOp* transform = nullptr;
  };
  std::vector<Slot> slots(n + 1);
  for (const auto& op : ops) {
    check_args(op);
    if (!op.position) throw EditOpError(format_editop(op) + " has no hypothesis position");
    const std::size_t p = *op.position;
    if (p > n) throw EditOpError(format_editop(op) + " points past the hypothesis");
    const std::string& expected = p < n ? tokens[p] : std::string();
    if (op.anchor != expected) {
      throw EditOpError(format_editop(op) + " does not match hypothesis token " + std::to_string(p) + " (\"" +
                        expected + "\")");
    }
    Slot& slot = slots[p];
    if (op.kind == OpKind::insert_before) {
      slot.before.push_back(op.args[0]);
    } else if (op.kind == OpKind::insert_after) {
      slot.after.push_back(op.args[0]);
    } else {
      if (p == n) throw EditOpError(format_editop(op) + " needs a hypothesis token");
      if (slot.transform) throw EditOpError("two transforming ops on hypothesis token " + std::to_string(p));
      slot.transform = &op;
    }
  }

  std::vector<std::string> words;
  const auto push = [&](const std::string& w) {
    if (!w.empty()) words.push_back(w);
  };
  for (std::size_t i = 0; i <= n; ++i) {
    const Slot& slot = slots[i];
    for (const auto& w : slot.before) push(w);
    if (i < n) {
      if (slot.transform && slot.transform->kind == OpKind::join) {
        const Slot& next = i + 1 < n ? slots[i + 1] : slots[n];
        if (i + 1 >= n || !next.before.empty() || !next.after.empty() || next.transform)
          throw EditOpError(format_editop(*slot.transform) + " needs a following token without ops");
        push(tokens[i] + slot.transform->args[0] + tokens[i + 1]);
        for (const auto& w : slot.after) push(w);
        ++i;
        continue;
      }
      if (slot.transform) {
        for (const auto& w : transform(*slot.transform, tokens[i])) push(w);
      } else {
        push(tokens[i]);
      }
    }
    for (const auto& w : slot.after) push(w);
  }
  return join(words);
}

}  // namespace btrob
