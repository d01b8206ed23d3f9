#ifndef UNLGEN_FIXTURES_HPP
#define UNLGEN_FIXTURES_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace unlgen::fixtures {

/// One end-to-end generation case: a network, its expected surface sentence,
/// and (when a .trace file is present) the expected rule-firing sequence.
struct GoldenCase {
  std::string name;                              // case file stem
  std::string unl_text;
  std::string expected_output;                   // NFC, exact
  std::vector<std::size_t> expected_rule_sequence;
  std::vector<std::string> expected_trace_lines; // level-2 firing lines
  bool has_trace = false;
};

struct FixtureSuite {
  std::filesystem::path dictionary_path;
  std::filesystem::path grammar_path;
  std::vector<GoldenCase> cases;                 // sorted by name
};

/// Loads fixtures/{punjabi.dic, punjabi.grm, cases/*.unl|.ref|.trace} under
/// `root`. Every .unl must have a .ref; throws ParseError("MissingFixture")
/// otherwise.
FixtureSuite load_fixture_suite(const std::filesystem::path& root);

}  // namespace unlgen::fixtures

#endif
