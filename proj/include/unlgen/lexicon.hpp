#ifndef UNLGEN_LEXICON_HPP
#define UNLGEN_LEXICON_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "unlgen/diagnostics.hpp"

namespace unlgen::lexicon {

/// One dictionary line: `[lemma] "uw" (F1,F2,...);`
/// Plain tokens in the feature list become features; tokens of the form
/// KEY=VALUE become key-value assignments carried onto the generation node.
struct Entry {
  std::string lemma;
  std::string uw;
  std::vector<std::string> features;                            // ordered, no '@'/'='
  std::vector<std::pair<std::string, std::string>> keyvals;     // declaration order
  int line = 0;

  bool has_feature(std::string_view f) const;
};

/// Maps an attribute name to features an entry must carry to be returned for
/// a node bearing that attribute. Empty by default: lookup does not filter
/// and the grammar disambiguates.
using AttrCompatTable = std::map<std::string, std::vector<std::string>>;

class Lexicon {
 public:
  void add(Entry entry);

  /// All entries for `uw` that pass the attribute-compatibility table, in
  /// declaration order. Unknown uw yields an empty list.
  std::vector<const Entry*> lookup(std::string_view uw,
                                   const std::vector<std::string>& attrs) const;
  std::vector<const Entry*> lookup(std::string_view uw) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  AttrCompatTable compat;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_uw_;
};

struct DictionaryParse {
  Lexicon lexicon;
  std::vector<Diagnostic> diagnostics;   // DuplicateEntry warnings etc.
};

/// Parses dictionary text. Blank lines and "//" comments are ignored; exact
/// duplicates collapse with a warning. Throws ParseError("MalformedEntry")
/// with the offending line.
DictionaryParse parse_dictionary(std::string_view text);

/// Canonical text form; parse . serialize reproduces the entry set exactly.
std::string serialize_dictionary(const Lexicon& lex);

}  // namespace unlgen::lexicon

#endif
