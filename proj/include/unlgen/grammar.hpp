#ifndef UNLGEN_GRAMMAR_HPP
#define UNLGEN_GRAMMAR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unlgen/diagnostics.hpp"
#include "unlgen/lexicon.hpp"

namespace unlgen::grammar {

// ---------------------------------------------------------------------------
// Inflection paradigms (FLX)
// ---------------------------------------------------------------------------

/// Right-edge affix operation: drop `strip` scalar values, then append.
struct AffixOp {
  int strip = 0;
  std::string append;

  bool operator==(const AffixOp&) const = default;
};

/// One conjunct of an FLX condition. A positive term holds when the node
/// carries the token as a bare feature or as the value of any key; "^"
/// negates that.
struct CondTerm {
  std::string token;
  bool negated = false;

  bool operator==(const CondTerm&) const = default;
};

struct FlxCase {
  std::vector<CondTerm> condition;   // conjunction, nonempty
  AffixOp op;

  bool operator==(const FlxCase&) const = default;
};

/// Ordered inflection cases; the first case whose condition holds wins.
struct FlxSpec {
  std::vector<FlxCase> cases;

  bool operator==(const FlxSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Node patterns
// ---------------------------------------------------------------------------

enum class ConstraintKind {
  Feature,        // TOK        — bare feature or any key's value equals TOK
  Attribute,      // @tok
  KeyValue,       // KEY=VALUE
  Disjunction,    // {A B C}    — at least one alternative satisfied
  NegFeature,     // ^TOK
  NegAttribute,   // ^@tok
  Variable        // %x         — binds the node, always matches
};

struct Constraint {
  ConstraintKind kind = ConstraintKind::Feature;
  std::string token;                        // feature/attr/key/variable name
  std::string value;                        // KeyValue only
  std::vector<std::string> alternatives;    // Disjunction only

  bool operator==(const Constraint&) const = default;
};

struct NodeSpec {
  std::vector<Constraint> constraints;   // declaration order
  std::string var;                       // "" when the spec binds nothing

  bool operator==(const NodeSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class EditKind {
  AddFeature,       // +TOK or bare TOK
  RemoveFeature,    // -TOK
  AddAttribute,     // +@tok or bare @tok
  RemoveAttribute,  // -@tok
  SetKey,           // KEY=VALUE or +KEY=VALUE (overwrites)
  ClearKey,         // -KEY=
  AttachFlx,        // +FLX(...) — sets the pending paradigm and the FLX marker
  ExecuteFlx        // !FLX      — runs the pending paradigm
};

struct Edit {
  EditKind kind = EditKind::AddFeature;
  std::string token;
  std::string value;              // SetKey only
  std::optional<FlxSpec> flx;     // AttachFlx only

  bool operator==(const Edit&) const = default;
};

/// One "(...)" item of a sequence action: either a literal text node or a
/// bound variable with edits. `var_pos` preserves where the variable sat
/// among the edits, for faithful round-trip printing.
struct SeqItem {
  bool is_literal = false;
  std::string literal;
  std::string var;
  std::vector<Edit> edits;
  std::size_t var_pos = 0;

  bool operator==(const SeqItem&) const = default;
};

struct RelationPattern {
  std::string label;
  NodeSpec a;
  NodeSpec b;

  bool operator==(const RelationPattern&) const = default;
};

struct NodeSeqPattern {
  NodeSpec spec;

  bool operator==(const NodeSeqPattern&) const = default;
};

/// Keeps the relation (possibly relabeled) and edits its endpoints in place.
/// A side may restate its variable; edits resolve to the node bound under
/// that name, or positionally when no variable is given.
struct RelationAction {
  std::string label;
  std::string var_a;
  std::vector<Edit> edits_a;
  std::size_t var_pos_a = 0;
  std::string var_b;
  std::vector<Edit> edits_b;
  std::size_t var_pos_b = 0;

  bool operator==(const RelationAction&) const = default;
};

struct SequenceAction {
  std::vector<SeqItem> items;   // nonempty

  bool operator==(const SequenceAction&) const = default;
};

struct TRule {
  std::size_t index = 0;   // dense position in file order
  std::variant<RelationPattern, NodeSeqPattern> pattern;
  std::variant<RelationAction, SequenceAction> action;
  int line = 0;

  bool is_relation_pattern() const {
    return std::holds_alternative<RelationPattern>(pattern);
  }
  bool operator==(const TRule&) const = default;
};

struct Grammar {
  std::vector<TRule> trules;
  std::vector<std::string> drules;   // stored verbatim, never executed

  bool operator==(const Grammar&) const = default;
};

struct GrammarParse {
  Grammar grammar;
  std::vector<Diagnostic> diagnostics;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parses transformation-rule text. Rules end with ";", "//" starts a line
/// comment, whitespace between tokens is insignificant, quoted strings keep
/// their contents byte-exact. Blocks of the form `drules { ... }` are stored
/// verbatim with a NotExecuted warning. Throws ParseError with kinds
/// SyntaxError, UnboundVariable, DuplicateVariable, EmptyRule.
GrammarParse parse_grammar(std::string_view text);

/// Parses a bare inflection paradigm body, cases separated by ";". Braces
/// around a condition are equivalent to none. Throws ParseError with kinds
/// SyntaxError, EmptyCondition.
FlxSpec parse_flx_spec(std::string_view text);

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

/// One-line canonical form; parsing it yields a structurally equal rule.
std::string canonical(const TRule& rule);
std::string canonical(const NodeSpec& spec);
std::string canonical(const FlxSpec& spec);
std::string canonical(const Edit& edit);

/// Canonical form of every rule, one per line, prefixed "r<index>: ".
std::string dump_ast(const Grammar& g);

// ---------------------------------------------------------------------------
// Lint
// ---------------------------------------------------------------------------

/// Static findings over a grammar (optionally against a dictionary):
///  - UnusedParadigmTag: dictionary paradigm tag (M<digits>) no node rule matches
///  - NoOpRule: action provably identical to the pattern
///  - ShadowedCase: FLX case unreachable behind an identical earlier condition
///  - UnusedVariable: bound in the pattern, unused in the action
std::vector<Diagnostic> lint(const Grammar& g, const lexicon::Lexicon& lex);
std::vector<Diagnostic> lint(const Grammar& g);

}  // namespace unlgen::grammar

#endif
