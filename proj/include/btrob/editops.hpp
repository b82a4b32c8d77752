#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace btrob {

enum class OpKind {
  del,
  replace,
  insert_before,
  insert_after,
  add_prefix,
  add_suffix,
  del_suffix,
  del_prefix,
  replace_suffix,
  sreplace,
  join,
  split_after,
  split_on_first,
  split_on_last,
};

inline constexpr std::array<OpKind, 14> kAllOpKinds = {
    OpKind::del,        OpKind::replace,        OpKind::insert_before, OpKind::insert_after, OpKind::add_prefix,
    OpKind::add_suffix, OpKind::del_suffix,     OpKind::del_prefix,    OpKind::replace_suffix, OpKind::sreplace,
    OpKind::join,       OpKind::split_after,    OpKind::split_on_first, OpKind::split_on_last,
};

std::string_view op_name(OpKind kind);
/// Canonical names plus the aliases add_before, add_after and split_aftert.
std::optional<OpKind> op_kind_from_name(std::string_view name);
std::size_t op_arity(OpKind kind);

/// A word transformation anchored to one hypothesis token. Applying it to
/// the anchor (and, for join, the following token) yields reference text.
struct EditOp {
  std::string anchor;
  OpKind kind = OpKind::del;
  std::vector<std::string> args;
  /// Index of the anchor in the hypothesis tokens. Equal to the token count
  /// only for the empty-anchor insertions of an empty hypothesis. Not part
  /// of the serialized form.
  std::optional<std::size_t> position;

  bool operator==(const EditOp&) const = default;
};

/// Rendered as `anchor[opname_arg1_arg2]`. An empty anchor prints as `""`.
/// Backslash escapes `\`, `[` and `"` in the anchor and `\`, `_` in args, so
/// parse_editop(format_editop(op)) reproduces op (without position).
std::string format_editop(const EditOp& op);

/// Throws EditOpError on malformed strings, unknown ops and bad arity.
EditOp parse_editop(std::string_view text);

/// Ops that turn `hypothesis` into `reference`, ordered by hypothesis
/// position. Both texts are split on whitespace.
std::vector<EditOp> extract_editops(std::string_view reference, std::string_view hypothesis);

/// Rebuilds the reference from the hypothesis. Every op needs a position.
/// Throws EditOpError when an anchor does not match its token or an op
/// cannot be applied.
std::string apply_editops(std::string_view hypothesis, const std::vector<EditOp>& ops);

}  // namespace btrob
