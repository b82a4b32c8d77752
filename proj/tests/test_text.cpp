#include <doctest.h>

#include <sstream>

#include "btrob/csv.hpp"
#include "btrob/error.hpp"
#include "btrob/hash.hpp"
#include "btrob/text.hpp"

using namespace btrob;

TEST_CASE("normalize_text default policy") {
  CHECK(normalize_text("  Set  An\tALARM \n") == "set an alarm");
  CHECK(normalize_text("") == "");
  CHECK(normalize_text("Über Café") == "Über café");
}

TEST_CASE("normalize_text is idempotent") {
  NormalizationPolicy p;
  p.strip_terminal_punctuation = true;
  for (const char* s : {"Hello, world!?", "  wait . . . ", "ok", "...", "a  b ! "}) {
    const std::string once = normalize_text(s, p);
    CHECK(normalize_text(once, p) == once);
  }
  CHECK(normalize_text("Hello, world!?", p) == "hello, world");
}

TEST_CASE("normalize_text respects disabled switches") {
  NormalizationPolicy identity{false, false, false, false};
  CHECK(normalize_text(" A  b ", identity) == " A  b ");
}

TEST_CASE("tokenize and join") {
  CHECK(tokenize("  a b\t c  ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize("   ").empty());
  CHECK(join({"a", "b"}) == "a b");
  CHECK(join({}) == "");
}

TEST_CASE("utf8 round trip including invalid bytes") {
  const std::string text = "na\xC3\xAFve \xE2\x82\xAC \xFF\xC3";
  const std::u32string u = utf8_decode(text);
  CHECK(u[2] == U'ï');
  CHECK(utf8_encode(u) == text);
  CHECK(utf8_decode("forenoon").size() == 8);
}

TEST_CASE("sha256 and base64") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(base64_encode("hello") == "aGVsbG8=");
  for (const std::string& s : std::vector<std::string>{"", "a", "ab", "abc", std::string("\0\x01\xff", 3)}) CHECK(base64_decode(base64_encode(s)) == s);
  CHECK_THROWS_AS(base64_decode("a$b="), AdapterError);
}

TEST_CASE("csv quoting round trip") {
  std::ostringstream out;
  write_csv_row(out, {"plain", "with,comma", "with \"quote\"", "multi\nline", ""});
  CHECK(out.str() == "plain,\"with,comma\",\"with \"\"quote\"\"\",\"multi\nline\",\n");
  std::istringstream in(out.str() + "x,y\n");
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == CsvRow{"plain", "with,comma", "with \"quote\"", "multi\nline", ""});
  CHECK(rows[1] == CsvRow{"x", "y"});
  std::istringstream bad("\"open");
  CHECK_THROWS_AS(read_csv(bad), CorpusError);
}
