#include "unlgen/fixtures.hpp"

#include <algorithm>

#include "unlgen/diagnostics.hpp"
#include "unlgen/text.hpp"

namespace unlgen::fixtures {

namespace fs = std::filesystem;

namespace {

// .trace files hold level-2 firing lines; the rule sequence is read off the
// "#<step> fire r<index>:" prefixes
std::vector<std::size_t> parse_rule_sequence(const std::string& trace_text,
                                             std::vector<std::string>& lines) {
  std::vector<std::size_t> sequence;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= trace_text.size(); ++i) {
    if (i == trace_text.size() || trace_text[i] == '\n') {
      std::string line = trace_text.substr(start, i - start);
      start = i + 1;
      if (line.empty() || line[0] != '#') continue;
      lines.push_back(line);
      std::size_t fire = line.find(" fire r");
      if (fire == std::string::npos)
        throw ParseError("MissingFixture", "malformed trace line: " + line, 0);
      std::size_t idx_start = fire + 7;
      std::size_t idx_end = line.find(':', idx_start);
      if (idx_end == std::string::npos)
        throw ParseError("MissingFixture", "malformed trace line: " + line, 0);
      sequence.push_back(
          std::stoul(line.substr(idx_start, idx_end - idx_start)));
    }
  }
  return sequence;
}

std::string first_line(const std::string& textv) {
  std::size_t eol = textv.find('\n');
  std::string line = eol == std::string::npos ? textv : textv.substr(0, eol);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

FixtureSuite load_fixture_suite(const fs::path& root) {
  FixtureSuite suite;
  suite.dictionary_path = root / "punjabi.dic";
  suite.grammar_path = root / "punjabi.grm";
  if (!fs::exists(suite.dictionary_path))
    throw ParseError("MissingFixture",
                     "dictionary not found: " + suite.dictionary_path.string(), 0);
  if (!fs::exists(suite.grammar_path))
    throw ParseError("MissingFixture",
                     "grammar not found: " + suite.grammar_path.string(), 0);

  fs::path cases_dir = root / "cases";
  if (!fs::exists(cases_dir))
    throw ParseError("MissingFixture",
                     "cases directory not found: " + cases_dir.string(), 0);

  for (const auto& item : fs::directory_iterator(cases_dir)) {
    if (!item.is_regular_file() || item.path().extension() != ".unl") continue;
    GoldenCase gc;
    gc.name = item.path().stem().string();
    gc.unl_text = text::read_text_file(item.path());

    fs::path ref = item.path();
    ref.replace_extension(".ref");
    if (!fs::exists(ref))
      throw ParseError("MissingFixture",
                       "case '" + gc.name + "' has no .ref file", 0);
    gc.expected_output = text::nfc(first_line(text::read_text_file(ref)));

    fs::path trace = item.path();
    trace.replace_extension(".trace");
    if (fs::exists(trace)) {
      gc.has_trace = true;
      gc.expected_rule_sequence = parse_rule_sequence(
          text::read_text_file(trace), gc.expected_trace_lines);
    }
    suite.cases.push_back(std::move(gc));
  }

  if (suite.cases.empty())
    throw ParseError("MissingFixture", "no cases under " + cases_dir.string(), 0);
  std::sort(suite.cases.begin(), suite.cases.end(),
            [](const GoldenCase& a, const GoldenCase& b) { return a.name < b.name; });
  return suite;
}

}  // namespace unlgen::fixtures
