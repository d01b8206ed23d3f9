#ifndef UNLGEN_ENGINE_HPP
#define UNLGEN_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unlgen/diagnostics.hpp"
#include "unlgen/grammar.hpp"
#include "unlgen/lexicon.hpp"
#include "unlgen/unl.hpp"

namespace unlgen::engine {

// ---------------------------------------------------------------------------
// Runtime state
// ---------------------------------------------------------------------------

/// A surface node under generation. Nodes created from the input network
/// carry their (uw, id) origin; literal nodes inserted by rules have no
/// origin and a fresh id.
struct GenNode {
  std::optional<std::pair<std::string, std::string>> origin;   // (uw, id)
  std::string id;
  std::string surface;
  std::vector<std::string> features;              // ordered set
  std::vector<std::string> attrs;                 // ordered set
  std::map<std::string, std::string> kv;
  std::optional<grammar::FlxSpec> pending_flx;
  bool inflected = false;                         // implies !pending_flx

  bool has_feature(std::string_view f) const;
  bool has_attr(std::string_view a) const;
  /// Token test used by patterns and FLX conditions: bare feature present,
  /// or some key's value equals the token.
  bool satisfies_token(std::string_view tok) const;

  void add_feature(std::string_view f);
  void remove_feature(std::string_view f);
  void add_attr(std::string_view a);
  void remove_attr(std::string_view a);

  bool operator==(const GenNode&) const = default;
};

/// Node arena plus the rewrite structure over it: pending relations and the
/// ordered, disjoint surface segments. A node index is live iff it appears
/// in exactly one segment.
struct GenState {
  std::vector<GenNode> nodes;
  std::vector<std::tuple<std::string, std::size_t, std::size_t>> relations;
  std::vector<std::vector<std::size_t>> segments;   // creation order

  std::vector<std::size_t> scan_order() const;      // nodes in segment order
  std::optional<std::size_t> segment_of(std::size_t node) const;
  bool node_in_relation(std::size_t node) const;
  std::string fresh_literal_id() const;

  /// Canonical rendering of the live structure; two states are interchangeable
  /// iff these strings are equal.
  std::string render() const;
  std::uint64_t structural_hash() const;
  bool same_structure(const GenState& other) const;
};

// ---------------------------------------------------------------------------
// Tracing
// ---------------------------------------------------------------------------

/// What a single !FLX execution did to one node.
struct InflectionRecord {
  std::string node_id;
  std::optional<std::size_t> matched_case;
  std::string before;
  std::string after;
};

struct TraceEvent {
  std::size_t step = 0;            // 1-based firing ordinal
  std::size_t rule_index = 0;
  std::string rule_text;           // canonical one-line form
  std::string site;
  std::string before;              // site-local state, level 3
  std::string after;
  std::uint64_t before_hash = 0;
  std::uint64_t after_hash = 0;
  std::vector<InflectionRecord> inflections;
};

/// Trace levels: 0 output only, 1 + phase summary, 2 + rule firings,
/// 3 + before/after node states and paradigm outcomes, 4 + failed matches.
struct EngineCaps {
  int max_firings = 1000;
  int trace_level = 0;
  bool collapse_spaces = true;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Tokenization: one GenNode per network node, each in its own singleton
/// segment. The first dictionary entry for the uw supplies surface, features
/// and key-values; an unknown uw falls back to the raw uw text with an
/// UnknownUW warning.
GenState init_state(const unl::Document& doc, const lexicon::Lexicon& lex,
                    std::vector<Diagnostic>& diagnostics);

bool match_node(const grammar::NodeSpec& spec, const GenNode& node);

/// A candidate application site: a relation index or a live node index.
struct Site {
  bool is_relation = false;
  std::size_t index = 0;
};

/// Tries `rule` at `site`. Returns the event and mutates `state` when the
/// pattern matches and the application changes the state; an application that
/// would leave the state identical reports no-match.
std::optional<TraceEvent> apply_rule(GenState& state, const grammar::TRule& rule,
                                     Site site);

struct RunOutcome {
  GenState state;
  std::vector<TraceEvent> events;
  std::vector<std::string> failed_attempts;   // collected at trace level 4
  std::size_t firing_count = 0;
  bool cap_exceeded = false;
  std::vector<Diagnostic> diagnostics;
};

/// Deterministic fixpoint loop: scan rules in file order, sites ordered
/// relations-first then nodes in segment order; fire the first match and
/// restart; stop at fixpoint or when max_firings is reached with work left.
RunOutcome run(GenState state, const grammar::Grammar& g, const EngineCaps& caps);

/// Concatenates node surfaces in segment order. Warns when relations remain.
std::string linearize(const GenState& state, bool collapse,
                      std::vector<Diagnostic>* diagnostics);

struct GenerateResult {
  std::string text;
  std::vector<std::string> trace;   // rendered per EngineCaps::trace_level
  std::vector<TraceEvent> events;
  std::size_t firing_count = 0;
  bool cap_exceeded = false;
  bool unresolved_relations = false;
  std::vector<Diagnostic> diagnostics;
};

/// init_state + run + linearize, composed.
GenerateResult generate(const unl::Document& doc, const lexicon::Lexicon& lex,
                        const grammar::Grammar& g, const EngineCaps& caps = {});

/// Renders the trace lines for an already-computed outcome; used by
/// generate() and exposed for level-comparison tests. Level-2 firing lines
/// have the fixed form "#<step> fire r<index>: <rule text> @ <site>".
std::vector<std::string> render_trace(const RunOutcome& outcome,
                                      const GenState& initial, int level,
                                      std::string_view final_text);

}  // namespace unlgen::engine

#endif
