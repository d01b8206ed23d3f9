#ifndef UNLGEN_UNL_HPP
#define UNLGEN_UNL_HPP

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unlgen/diagnostics.hpp"

namespace unlgen::unl {

/// One node of the semantic network: a headword ("universal word"), an
/// opaque instance id, and an ordered attribute set. Instance ids are
/// compared textually and never interpreted as numbers.
struct Node {
  std::string uw;
  std::string id;                   // may be empty when the input omits ":id"
  std::vector<std::string> attrs;   // ordered set, "@" stripped, duplicates collapsed
  bool attr_conflict = false;       // a later occurrence listed a different attr set

  bool has_attr(std::string_view name) const;
  void add_attr(std::string_view name);
};

/// Labeled directed edge between two nodes, stored as indices into
/// Document::nodes.
struct Relation {
  std::string label;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// A parsed semantic network. Relations keep file order; nodes appear in
/// first-occurrence order and are unique by (uw, id).
struct Document {
  std::vector<Node> nodes;
  std::vector<Relation> relations;

  const Node& source_of(const Relation& r) const { return nodes[r.source]; }
  const Node& target_of(const Relation& r) const { return nodes[r.target]; }
  bool empty() const { return relations.empty() && nodes.empty(); }
};

/// Parses a text holding zero or one "{unl} ... {/unl}" block, one relation
/// per line. Throws ParseError with kinds UnbalancedBlock, MalformedRelation,
/// EmptyUW.
Document parse_document(std::string_view text);

/// Parses a whole .unl file: each "{unl}" block is one sentence, in file
/// order. Line numbers in errors are absolute within the file.
std::vector<Document> parse_file(std::string_view text);

/// Canonical text form: "{unl}\n" + one relation per line + "{/unl}\n".
std::string serialize(const Document& doc);

/// The relation-label inventory used by validate(). Loaded from a data file
/// (one label per line, "#" comments) or taken from the built-in default.
std::set<std::string> default_relation_labels();
std::set<std::string> load_relation_labels(const std::filesystem::path& path);

/// Non-fatal well-formedness checks: unknown relation labels, self-loops,
/// duplicate (uw,id) occurrences with conflicting attributes.
std::vector<Diagnostic> validate(const Document& doc,
                                 const std::set<std::string>& known_labels);
std::vector<Diagnostic> validate(const Document& doc);

}  // namespace unlgen::unl

#endif
