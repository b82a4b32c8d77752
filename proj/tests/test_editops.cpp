#include <doctest.h>

#include <random>

#include "btrob/editops.hpp"
#include "btrob/error.hpp"

using namespace btrob;

namespace {

std::vector<std::string> rendered(std::string_view reference, std::string_view hypothesis) {
  std::vector<std::string> out;
  for (const auto& op : extract_editops(reference, hypothesis)) out.push_back(format_editop(op));
  return out;
}

using Ops = std::vector<std::string>;

}  // namespace

TEST_CASE("op taxonomy examples") {
  CHECK(rendered("", "a") == Ops{"a[del]"});
  CHECK(rendered("hat", "cat") == Ops{"cat[replace_hat]"});
  CHECK(rendered("a cat", "cat") == Ops{"cat[insert_before_a]"});
  CHECK(rendered("cat that", "cat") == Ops{"cat[insert_after_that]"});
  CHECK(rendered("howl", "owl") == Ops{"owl[add_prefix_h]"});
  CHECK(rendered("hey", "he") == Ops{"he[add_suffix_y]"});
  CHECK(rendered("cat", "cats") == Ops{"cats[del_suffix_1]"});
  CHECK(rendered("owl", "howl") == Ops{"howl[del_prefix_1]"});
  CHECK(rendered("hour", "houl") == Ops{"houl[replace_suffix_r]"});
  CHECK(rendered("my", "may") == Ops{"may[sreplace_a_]"});
  CHECK(rendered("run-in", "run in") == Ops{"run[join_-]"});
  CHECK(rendered("to day", "today") == Ops{"today[split_after_2]"});
  CHECK(rendered("run in", "run-in") == Ops{"run-in[split_on_first_-]"});
  CHECK(rendered("for noon", "forenoon") == Ops{"forenoon[split_on_last_e]"});
}

TEST_CASE("ranked-output style ops") {
  CHECK(rendered("olly", "only") == Ops{"only[sreplace_n_l]"});
  CHECK(rendered("boil", "bowl") == Ops{"bowl[sreplace_w_i]"});
  CHECK(rendered("pondichery", "pondicherry") == Ops{"pondicherry[sreplace_rr_r]"});
  CHECK(rendered("naty", "natie") == Ops{"natie[replace_naty]"});
  CHECK(rendered("am", "9am") == Ops{"9am[del_prefix_1]"});
  CHECK(rendered("same words", "same words").empty());
}

TEST_CASE("empty hypothesis uses the empty anchor") {
  const auto ops = extract_editops("a b", "");
  REQUIRE(ops.size() == 2);
  CHECK(format_editop(ops[0]) == "\"\"[insert_before_a]");
  CHECK(apply_editops("", ops) == "a b");
}

TEST_CASE("multi-token spans pair by similarity") {
  const auto ops = extract_editops("the big cat sat", "a big cat");
  CHECK(apply_editops("a big cat", ops) == "the big cat sat");
  CHECK(rendered("please play my song now", "please play song") ==
        Ops{"song[insert_before_my]", "song[insert_after_now]"});
  CHECK(apply_editops("x y", extract_editops("a b c", "x y")) == "a b c");
}

TEST_CASE("format and parse round trip") {
  const std::vector<EditOp> ops = {
      {"a", OpKind::del, {}, std::nullopt},
      {"snake_case", OpKind::sreplace, {"e_c", "_"}, std::nullopt},
      {"we[ird\\\"", OpKind::replace, {"x\\y"}, std::nullopt},
      {"", OpKind::insert_before, {"hello"}, std::nullopt},
      {"today", OpKind::split_after, {"2"}, std::nullopt},
      {"may", OpKind::sreplace, {"a", ""}, std::nullopt},
  };
  for (const auto& op : ops) CHECK(parse_editop(format_editop(op)) == op);
  CHECK(format_editop(ops[1]) == "snake_case[sreplace_e\\_c_\\_]");
}

TEST_CASE("parse accepts aliases and rejects junk") {
  CHECK(parse_editop("cat[add_before_a]").kind == OpKind::insert_before);
  CHECK(parse_editop("cat[add_after_a]").kind == OpKind::insert_after);
  CHECK(parse_editop("today[split_aftert_2]").kind == OpKind::split_after);
  CHECK(parse_editop("cats[del_suffix_1]").kind == OpKind::del_suffix);
  CHECK(parse_editop("x[del_prefix_2]").args == std::vector<std::string>{"2"});
  CHECK_THROWS_AS(parse_editop("cat[replace_prefix_h]"), EditOpError);
  CHECK_THROWS_AS(parse_editop("cat[del_suffix_0]"), EditOpError);
  CHECK_THROWS_AS(parse_editop("cat[del_suffix_x]"), EditOpError);
  CHECK_THROWS_AS(parse_editop("cat[del"), EditOpError);
  CHECK_THROWS_AS(parse_editop("cat"), EditOpError);
  CHECK_THROWS_AS(parse_editop("cat[sreplace_a]"), EditOpError);
  CHECK(op_kind_from_name("split_aftert") == OpKind::split_after);
  CHECK_FALSE(op_kind_from_name("nope"));
}

TEST_CASE("apply validates anchors and positions") {
  EditOp op{"dog", OpKind::replace, {"cat"}, 0};
  CHECK_THROWS_AS(apply_editops("hat", {op}), EditOpError);
  op.anchor = "hat";
  CHECK(apply_editops("hat", {op}) == "cat");
  op.position.reset();
  CHECK_THROWS_AS(apply_editops("hat", {op}), EditOpError);
  CHECK_THROWS_AS(apply_editops("ab", {{"ab", OpKind::del_suffix, {"5"}, 0}}), EditOpError);
  CHECK_THROWS_AS(apply_editops("a b", {{"a", OpKind::del, {}, 0}, {"a", OpKind::add_suffix, {"x"}, 0}}), EditOpError);
  CHECK_THROWS_AS(apply_editops("a", {{"a", OpKind::join, {"-"}, 0}}), EditOpError);
}

TEST_CASE("round trip on random perturbations") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> words = {"set", "an", "alarm", "for", "nine", "am", "play", "jazz", "run-in", "today"};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> ref;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 6); i < n; ++i) ref.push_back(words[rng() % words.size()]);
    std::string r, h;
    for (const auto& w : ref) r += (r.empty() ? "" : " ") + w;
    for (const auto& w : ref) {
      std::string t = w;
      switch (rng() % 5) {
        case 0: t += "s"; break;
        case 1: t = t.substr(1); break;
        case 2: t = "x" + t; break;
        default: break;
      }
      if (!t.empty()) h += (h.empty() ? "" : " ") + t;
    }
    CHECK(apply_editops(h, extract_editops(r, h)) == r);
  }
}
