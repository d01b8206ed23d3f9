#include <doctest.h>

#include "unlgen/lexicon.hpp"

using namespace unlgen;

TEST_CASE("entry lines decode lemma, uw and features") {
  auto parsed = lexicon::parse_dictionary("[ਪਹੁੰਚ] \"arrive\" (V,M7);\n");
  REQUIRE(parsed.lexicon.size() == 1);
  const auto& e = parsed.lexicon.entries()[0];
  CHECK(e.lemma == "ਪਹੁੰਚ");
  CHECK(e.uw == "arrive");
  CHECK(e.features == std::vector<std::string>{"V", "M7"});
  CHECK(parsed.diagnostics.empty());
}

TEST_CASE("pronoun entry with a paradigm tag") {
  auto parsed = lexicon::parse_dictionary("[ਉਹ] \"00\" (R,M2);\n");
  const auto& e = parsed.lexicon.entries()[0];
  CHECK(e.lemma == "ਉਹ");
  CHECK(e.uw == "00");
  CHECK(e.features == std::vector<std::string>{"R", "M2"});
}

TEST_CASE("empty input yields an empty lexicon") {
  auto parsed = lexicon::parse_dictionary("");
  CHECK(parsed.lexicon.size() == 0);
}

TEST_CASE("comments, blank lines and BOM are ignored") {
  std::string text = "\xEF\xBB\xBF// dictionary\n\n[a] \"x\" (N); // noun\n";
  auto parsed = lexicon::parse_dictionary(text);
  REQUIRE(parsed.lexicon.size() == 1);
  CHECK(parsed.lexicon.entries()[0].lemma == "a");
}

TEST_CASE("KEY=VALUE tokens land in keyvals, not features") {
  auto parsed = lexicon::parse_dictionary("[ਪਿਆਰ] \"love\" (V,ATE=INF);\n");
  const auto& e = parsed.lexicon.entries()[0];
  CHECK(e.features == std::vector<std::string>{"V"});
  REQUIRE(e.keyvals.size() == 1);
  CHECK(e.keyvals[0] == std::pair<std::string, std::string>{"ATE", "INF"});
}

TEST_CASE("malformed entries report the line number") {
  try {
    lexicon::parse_dictionary("[ok] \"x\" (N);\n[broken \"y\" (N);\n");
    FAIL("expected MalformedEntry");
  } catch (const ParseError& e) {
    CHECK(e.kind() == "MalformedEntry");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(lexicon::parse_dictionary("[a] \"x\" (N)\n"), ParseError);
  CHECK_THROWS_AS(lexicon::parse_dictionary("[a] \"x\" (@bad);\n"), ParseError);
  CHECK_THROWS_AS(lexicon::parse_dictionary("[] \"x\" (N);\n"), ParseError);
}

TEST_CASE("exact duplicates collapse with a warning") {
  auto parsed =
      lexicon::parse_dictionary("[a] \"x\" (N);\n[a] \"x\" (N);\n[b] \"x\" (V);\n");
  CHECK(parsed.lexicon.size() == 2);
  REQUIRE(parsed.diagnostics.size() == 1);
  CHECK(parsed.diagnostics[0].code == "DuplicateEntry");
  CHECK(parsed.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("lookup preserves declaration order and filters nothing by default") {
  auto parsed =
      lexicon::parse_dictionary("[b] \"x\" (V);\n[a] \"x\" (N);\n[c] \"y\" (N);\n");
  auto hits = parsed.lexicon.lookup("x");
  REQUIRE(hits.size() == 2);
  CHECK(hits[0]->lemma == "b");
  CHECK(hits[1]->lemma == "a");
  for (const auto* e : hits) CHECK(e->uw == "x");
  CHECK(parsed.lexicon.lookup("zzzz").empty());
}

TEST_CASE("lookup is stable across repeated calls") {
  auto parsed = lexicon::parse_dictionary("[b] \"x\" (V);\n[a] \"x\" (N);\n");
  auto first = parsed.lexicon.lookup("x", {"pl"});
  auto second = parsed.lexicon.lookup("x", {"pl"});
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i] == second[i]);
}

TEST_CASE("the attribute-compatibility table filters entries when configured") {
  auto parsed = lexicon::parse_dictionary("[b] \"x\" (V);\n[a] \"x\" (N,PL);\n");
  parsed.lexicon.compat["pl"] = {"PL"};
  auto hits = parsed.lexicon.lookup("x", {"pl"});
  REQUIRE(hits.size() == 1);
  CHECK(hits[0]->lemma == "a");
  // attributes without a table row do not filter
  CHECK(parsed.lexicon.lookup("x", {"present"}).size() == 2);
}

TEST_CASE("parse then serialize reproduces the entry set exactly") {
  std::string text =
      "[ਪਹੁੰਚ] \"arrive\" (V,M7,ATE=INF);\n[ਉਹ] \"00\" (R,M2,POD);\n";
  auto parsed = lexicon::parse_dictionary(text);
  CHECK(lexicon::serialize_dictionary(parsed.lexicon) == text);
  auto reparsed = lexicon::parse_dictionary(
      lexicon::serialize_dictionary(parsed.lexicon));
  CHECK(lexicon::serialize_dictionary(reparsed.lexicon) == text);
}
