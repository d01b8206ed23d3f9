#include "unlgen/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace unlgen::grammar {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End, Ident, String,
  LParen, RParen, LBrace, RBrace,
  Comma, Semi, ColonEq, Amp, Caret,
  Plus, Minus, Percent, At, Bang, Gt, Eq
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
  std::size_t offset = 0;   // byte position of the token start
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;   // identifiers may be non-ASCII
}

class Lexer {
 public:
  explicit Lexer(std::string_view src, int start_line = 1)
      : src_(src), line_(start_line) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  // raw slice reader used for opaque drule blocks
  std::string_view raw() const { return src_; }
  std::size_t offset() const { return pos_; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("SyntaxError",
                     "expected " + expected + ", found " + describe(current_),
                     current_.line, current_.col);
  }

 private:
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Ident: return "'" + t.text + "'";
      case Tok::String: return "string literal";
      default: return "'" + t.text + "'";
    }
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_;
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_space_and_comments();
    current_ = Token{};
    current_.line = line_;
    current_.col = col_;
    current_.offset = pos_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    const auto single = [&](Tok kind) {
      current_.kind = kind;
      current_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '{': single(Tok::LBrace); return;
      case '}': single(Tok::RBrace); return;
      case ',': single(Tok::Comma); return;
      case ';': single(Tok::Semi); return;
      case '&': single(Tok::Amp); return;
      case '^': single(Tok::Caret); return;
      case '+': single(Tok::Plus); return;
      case '-': single(Tok::Minus); return;
      case '%': single(Tok::Percent); return;
      case '@': single(Tok::At); return;
      case '!': single(Tok::Bang); return;
      case '>': single(Tok::Gt); return;
      case '=': single(Tok::Eq); return;
      case ':':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
          current_.kind = Tok::ColonEq;
          current_.text = ":=";
          pos_ += 2;
          col_ += 2;
          return;
        }
        throw ParseError("SyntaxError", "stray ':'", line_, col_);
      case '"': {
        current_.kind = Tok::String;
        ++pos_;
        ++col_;
        std::string value;
        while (pos_ < src_.size() && src_[pos_] != '"') {
          char d = src_[pos_];
          if (d == '\\' && pos_ + 1 < src_.size() &&
              (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\')) {
            value.push_back(src_[pos_ + 1]);
            pos_ += 2;
            col_ += 2;
            continue;
          }
          if (d == '\n') {
            ++line_;
            col_ = 1;
          } else {
            ++col_;
          }
          value.push_back(d);
          ++pos_;
        }
        if (pos_ >= src_.size())
          throw ParseError("SyntaxError", "unterminated string literal",
                           current_.line, current_.col);
        ++pos_;  // closing quote
        ++col_;
        current_.text = std::move(value);
        return;
      }
      default:
        break;
    }
    if (is_ident_char(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
        ++pos_;
        ++col_;
      }
      current_.kind = Tok::Ident;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    throw ParseError("SyntaxError",
                     "unexpected character '" + std::string(1, c) + "'", line_, col_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  GrammarParse parse_all() {
    GrammarParse out;
    while (lex_.peek().kind != Tok::End) {
      if (lex_.peek().kind == Tok::Semi) {   // stray separators are harmless
        lex_.next();
        continue;
      }
      if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "drules") {
        Token kw = lex_.next();
        out.grammar.drules.push_back(read_drule_block());
        out.diagnostics.push_back({Severity::Warning, "NotExecuted",
                                   "drules block stored but never executed",
                                   kw.line});
        continue;
      }
      TRule rule = parse_rule(out.grammar.trules.size());
      out.grammar.trules.push_back(std::move(rule));
    }
    return out;
  }

  FlxSpec parse_flx_standalone() {
    FlxSpec spec = parse_flx_cases(Tok::End);
    if (spec.cases.empty())
      throw ParseError("EmptyCondition", "paradigm has no cases", 1);
    return spec;
  }

 private:
  Lexer lex_;

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) lex_.fail(what);
    return lex_.next();
  }

  // drules blocks are opaque: capture everything between balanced braces,
  // skipping braces inside string literals
  std::string read_drule_block() {
    if (lex_.peek().kind != Tok::LBrace) lex_.fail("'{' after drules");
    Token open = lex_.next();
    // the lexer is one token ahead; walk the raw text from just after '{'
    std::string_view src = lex_.raw();
    std::size_t i = open.offset + 1;
    std::size_t start = i;
    int depth = 1;
    bool in_string = false;
    while (i < src.size() && depth > 0) {
      char c = src[i];
      if (in_string) {
        if (c == '\\' && i + 1 < src.size()) ++i;
        else if (c == '"') in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        --depth;
      }
      ++i;
    }
    if (depth > 0)
      throw ParseError("SyntaxError", "unterminated drules block", open.line, open.col);
    std::string body(src.substr(start, i - start - 1));
    // restart lexing after the block, keeping the line count honest
    int line = open.line;
    for (char c : body)
      if (c == '\n') ++line;
    lex_ = Lexer(src.substr(i), line);
    return body;
  }

  TRule parse_rule(std::size_t index) {
    TRule rule;
    rule.index = index;
    Token first = lex_.peek();
    rule.line = first.line;

    if (first.kind == Tok::Ident) {
      RelationPattern pat;
      pat.label = lex_.next().text;
      expect(Tok::LParen, "'(' after relation label");
      pat.a = parse_node_spec(Tok::Semi);
      expect(Tok::Semi, "';' between relation node specs");
      pat.b = parse_node_spec(Tok::RParen);
      expect(Tok::RParen, "')' closing relation pattern");
      rule.pattern = std::move(pat);
    } else if (first.kind == Tok::LParen) {
      lex_.next();
      NodeSeqPattern pat;
      pat.spec = parse_node_spec(Tok::RParen);
      expect(Tok::RParen, "')' closing node pattern");
      if (pat.spec.constraints.empty())
        throw ParseError("EmptyRule", "pattern matches nothing", first.line, first.col);
      rule.pattern = std::move(pat);
    } else {
      lex_.fail("a rule pattern");
    }

    expect(Tok::ColonEq, "':=' between pattern and action");

    if (lex_.peek().kind == Tok::Ident) {
      RelationAction action;
      action.label = lex_.next().text;
      expect(Tok::LParen, "'(' after relation action label");
      parse_edit_side(action.var_a, action.edits_a, action.var_pos_a, Tok::Semi);
      expect(Tok::Semi, "';' between relation action sides");
      parse_edit_side(action.var_b, action.edits_b, action.var_pos_b, Tok::RParen);
      expect(Tok::RParen, "')' closing relation action");
      if (!rule.is_relation_pattern())
        throw ParseError("SyntaxError",
                         "relation action requires a relation pattern", rule.line);
      rule.action = std::move(action);
    } else if (lex_.peek().kind == Tok::LParen) {
      SequenceAction action;
      while (lex_.peek().kind == Tok::LParen) action.items.push_back(parse_seq_item());
      rule.action = std::move(action);
    } else {
      throw ParseError("EmptyRule", "rule has no action", first.line, first.col);
    }

    expect(Tok::Semi, "';' terminating rule");
    validate_rule(rule);
    return rule;
  }

  NodeSpec parse_node_spec(Tok stop) {
    NodeSpec spec;
    while (true) {
      spec.constraints.push_back(parse_constraint());
      const Constraint& c = spec.constraints.back();
      if (c.kind == ConstraintKind::Variable) {
        if (!spec.var.empty())
          throw ParseError("DuplicateVariable",
                           "node spec binds more than one variable",
                           lex_.peek().line, lex_.peek().col);
        spec.var = c.token;
      }
      if (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        continue;
      }
      if (lex_.peek().kind == stop || lex_.peek().kind == Tok::RParen) break;
      lex_.fail("',' or end of node spec");
    }
    return spec;
  }

  Constraint parse_constraint() {
    Constraint c;
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::Percent:
        c.kind = ConstraintKind::Variable;
        c.token = expect(Tok::Ident, "variable name after '%'").text;
        return c;
      case Tok::At:
        c.kind = ConstraintKind::Attribute;
        c.token = expect(Tok::Ident, "attribute name after '@'").text;
        return c;
      case Tok::Caret:
        if (lex_.peek().kind == Tok::At) {
          lex_.next();
          c.kind = ConstraintKind::NegAttribute;
          c.token = expect(Tok::Ident, "attribute name after '^@'").text;
        } else {
          c.kind = ConstraintKind::NegFeature;
          c.token = expect(Tok::Ident, "feature name after '^'").text;
        }
        return c;
      case Tok::LBrace:
        c.kind = ConstraintKind::Disjunction;
        while (lex_.peek().kind == Tok::Ident)
          c.alternatives.push_back(lex_.next().text);
        expect(Tok::RBrace, "'}' closing disjunction");
        if (c.alternatives.size() < 2)
          throw ParseError("SyntaxError",
                           "disjunction needs at least two alternatives",
                           t.line, t.col);
        return c;
      case Tok::Ident:
        if (lex_.peek().kind == Tok::Eq) {
          lex_.next();
          c.kind = ConstraintKind::KeyValue;
          c.token = t.text;
          c.value = expect(Tok::Ident, "value after '='").text;
        } else {
          c.kind = ConstraintKind::Feature;
          c.token = t.text;
        }
        return c;
      default:
        throw ParseError("SyntaxError", "expected a constraint",
                         t.line, t.col);
    }
  }

  // one side of a relation action: optional %var plus edits, any order
  void parse_edit_side(std::string& var, std::vector<Edit>& edits,
                       std::size_t& var_pos, Tok stop) {
    while (true) {
      if (lex_.peek().kind == Tok::Percent) {
        Token t = lex_.next();
        if (!var.empty())
          throw ParseError("DuplicateVariable",
                           "action side names more than one variable", t.line, t.col);
        var = expect(Tok::Ident, "variable name after '%'").text;
        var_pos = edits.size();
      } else {
        edits.push_back(parse_edit());
      }
      if (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        continue;
      }
      if (lex_.peek().kind == stop || lex_.peek().kind == Tok::RParen) return;
      lex_.fail("',' or end of action side");
    }
  }

  SeqItem parse_seq_item() {
    Token open = expect(Tok::LParen, "'(' opening action item");
    SeqItem item;
    if (lex_.peek().kind == Tok::String) {
      item.is_literal = true;
      item.literal = lex_.next().text;
      expect(Tok::RParen, "')' after literal item");
      return item;
    }
    bool have_var = false;
    while (true) {
      if (lex_.peek().kind == Tok::Percent) {
        Token t = lex_.next();
        if (have_var)
          throw ParseError("DuplicateVariable",
                           "action item names more than one variable", t.line, t.col);
        have_var = true;
        item.var = expect(Tok::Ident, "variable name after '%'").text;
        item.var_pos = item.edits.size();
      } else {
        item.edits.push_back(parse_edit());
      }
      if (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        continue;
      }
      break;
    }
    expect(Tok::RParen, "')' closing action item");
    if (!have_var)
      throw ParseError("SyntaxError",
                       "action item applies edits to no variable",
                       open.line, open.col);
    return item;
  }

  Edit parse_edit() {
    Edit e;
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::Plus:
        if (lex_.peek().kind == Tok::At) {
          lex_.next();
          e.kind = EditKind::AddAttribute;
          e.token = expect(Tok::Ident, "attribute name after '+@'").text;
          return e;
        }
        e.token = expect(Tok::Ident, "name after '+'").text;
        if (e.token == "FLX" && lex_.peek().kind == Tok::LParen) {
          lex_.next();
          e.kind = EditKind::AttachFlx;
          e.flx = parse_flx_cases(Tok::RParen);
          expect(Tok::RParen, "')' closing paradigm");
          if (e.flx->cases.empty())
            throw ParseError("EmptyCondition", "paradigm has no cases", t.line, t.col);
          return e;
        }
        if (lex_.peek().kind == Tok::Eq) {
          lex_.next();
          e.kind = EditKind::SetKey;
          e.value = expect(Tok::Ident, "value after '='").text;
          return e;
        }
        e.kind = EditKind::AddFeature;
        return e;
      case Tok::Minus:
        if (lex_.peek().kind == Tok::At) {
          lex_.next();
          e.kind = EditKind::RemoveAttribute;
          e.token = expect(Tok::Ident, "attribute name after '-@'").text;
          return e;
        }
        e.token = expect(Tok::Ident, "name after '-'").text;
        if (lex_.peek().kind == Tok::Eq) {
          lex_.next();
          e.kind = EditKind::ClearKey;
          return e;
        }
        e.kind = EditKind::RemoveFeature;
        return e;
      case Tok::Bang: {
        Token name = expect(Tok::Ident, "'FLX' after '!'");
        if (name.text != "FLX")
          throw ParseError("SyntaxError", "only '!FLX' is executable",
                           name.line, name.col);
        e.kind = EditKind::ExecuteFlx;
        e.token = "FLX";
        return e;
      }
      case Tok::At:
        e.kind = EditKind::AddAttribute;
        e.token = expect(Tok::Ident, "attribute name after '@'").text;
        return e;
      case Tok::Ident:
        e.token = t.text;
        if (lex_.peek().kind == Tok::Eq) {
          lex_.next();
          e.kind = EditKind::SetKey;
          e.value = expect(Tok::Ident, "value after '='").text;
          return e;
        }
        e.kind = EditKind::AddFeature;
        return e;
      default:
        throw ParseError("SyntaxError", "expected an edit", t.line, t.col);
    }
  }

  FlxSpec parse_flx_cases(Tok stop) {
    FlxSpec spec;
    while (lex_.peek().kind != stop && lex_.peek().kind != Tok::End) {
      spec.cases.push_back(parse_flx_case());
      if (lex_.peek().kind == Tok::Semi) {
        lex_.next();
        continue;
      }
      break;
    }
    return spec;
  }

  FlxCase parse_flx_case() {
    FlxCase fc;
    bool braced = false;
    Token first = lex_.peek();
    if (first.kind == Tok::LBrace) {
      lex_.next();
      braced = true;
    }
    while (true) {
      CondTerm term;
      if (lex_.peek().kind == Tok::Caret) {
        lex_.next();
        term.negated = true;
      }
      term.token = expect(Tok::Ident, "condition token").text;
      fc.condition.push_back(std::move(term));
      if (lex_.peek().kind == Tok::Amp) {
        lex_.next();
        continue;
      }
      break;
    }
    if (braced) expect(Tok::RBrace, "'}' closing condition");
    if (fc.condition.empty())
      throw ParseError("EmptyCondition", "inflection case has no condition",
                       first.line, first.col);
    expect(Tok::ColonEq, "':=' in inflection case");
    Token strip = expect(Tok::Ident, "strip count");
    if (strip.text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("SyntaxError", "strip count must be an integer",
                       strip.line, strip.col);
    fc.op.strip = std::stoi(strip.text);
    expect(Tok::Gt, "'>' after strip count");
    fc.op.append = expect(Tok::String, "affix string").text;
    return fc;
  }

  void validate_rule(const TRule& rule) {
    std::set<std::string> bound;
    const auto bind = [&](const NodeSpec& spec) {
      if (!spec.var.empty()) {
        if (bound.contains(spec.var))
          throw ParseError("DuplicateVariable",
                           "variable %" + spec.var + " bound twice", rule.line);
        bound.insert(spec.var);
      }
    };
    if (rule.is_relation_pattern()) {
      const auto& pat = std::get<RelationPattern>(rule.pattern);
      bind(pat.a);
      bind(pat.b);
    } else {
      bind(std::get<NodeSeqPattern>(rule.pattern).spec);
    }
    const auto check_use = [&](const std::string& var) {
      if (!var.empty() && !bound.contains(var))
        throw ParseError("UnboundVariable",
                         "rule " + std::to_string(rule.index) + " uses %" + var +
                             " which the pattern does not bind",
                         rule.line);
    };
    if (std::holds_alternative<RelationAction>(rule.action)) {
      const auto& act = std::get<RelationAction>(rule.action);
      check_use(act.var_a);
      check_use(act.var_b);
      if (!act.var_a.empty() && act.var_a == act.var_b)
        throw ParseError("DuplicateVariable",
                         "both action sides name %" + act.var_a, rule.line);
    } else {
      const auto& act = std::get<SequenceAction>(rule.action);
      std::set<std::string> used;
      for (const auto& item : act.items) {
        if (item.is_literal) continue;
        check_use(item.var);
        if (!used.insert(item.var).second)
          throw ParseError("DuplicateVariable",
                           "action uses %" + item.var + " twice", rule.line);
      }
    }
  }
};

}  // namespace

GrammarParse parse_grammar(std::string_view text) {
  Parser parser(text);
  return parser.parse_all();
}

FlxSpec parse_flx_spec(std::string_view text) {
  Parser parser(text);
  return parser.parse_flx_standalone();
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void print_constraint(std::ostringstream& out, const Constraint& c) {
  switch (c.kind) {
    case ConstraintKind::Feature: out << c.token; break;
    case ConstraintKind::Attribute: out << "@" << c.token; break;
    case ConstraintKind::KeyValue: out << c.token << "=" << c.value; break;
    case ConstraintKind::NegFeature: out << "^" << c.token; break;
    case ConstraintKind::NegAttribute: out << "^@" << c.token; break;
    case ConstraintKind::Variable: out << "%" << c.token; break;
    case ConstraintKind::Disjunction: {
      out << "{";
      for (std::size_t i = 0; i < c.alternatives.size(); ++i) {
        if (i) out << " ";
        out << c.alternatives[i];
      }
      out << "}";
      break;
    }
  }
}

void print_flx(std::ostringstream& out, const FlxSpec& spec) {
  for (std::size_t i = 0; i < spec.cases.size(); ++i) {
    if (i) out << ";";
    const FlxCase& fc = spec.cases[i];
    for (std::size_t k = 0; k < fc.condition.size(); ++k) {
      if (k) out << "&";
      if (fc.condition[k].negated) out << "^";
      out << fc.condition[k].token;
    }
    out << ":=" << fc.op.strip << ">" << quote(fc.op.append);
  }
}

void print_edit(std::ostringstream& out, const Edit& e) {
  switch (e.kind) {
    case EditKind::AddFeature: out << "+" << e.token; break;
    case EditKind::RemoveFeature: out << "-" << e.token; break;
    case EditKind::AddAttribute: out << "+@" << e.token; break;
    case EditKind::RemoveAttribute: out << "-@" << e.token; break;
    case EditKind::SetKey: out << "+" << e.token << "=" << e.value; break;
    case EditKind::ClearKey: out << "-" << e.token << "="; break;
    case EditKind::ExecuteFlx: out << "!FLX"; break;
    case EditKind::AttachFlx:
      out << "+FLX(";
      print_flx(out, *e.flx);
      out << ")";
      break;
  }
}

void print_edit_side(std::ostringstream& out, const std::string& var,
                     const std::vector<Edit>& edits, std::size_t var_pos) {
  bool first = true;
  const auto sep = [&] {
    if (!first) out << ",";
    first = false;
  };
  for (std::size_t i = 0; i <= edits.size(); ++i) {
    if (!var.empty() && i == var_pos) {
      sep();
      out << "%" << var;
    }
    if (i == edits.size()) break;
    sep();
    print_edit(out, edits[i]);
  }
}

}  // namespace

std::string canonical(const NodeSpec& spec) {
  std::ostringstream out;
  for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
    if (i) out << ",";
    print_constraint(out, spec.constraints[i]);
  }
  return out.str();
}

std::string canonical(const FlxSpec& spec) {
  std::ostringstream out;
  print_flx(out, spec);
  return out.str();
}

std::string canonical(const Edit& edit) {
  std::ostringstream out;
  print_edit(out, edit);
  return out.str();
}

std::string canonical(const TRule& rule) {
  std::ostringstream out;
  if (rule.is_relation_pattern()) {
    const auto& pat = std::get<RelationPattern>(rule.pattern);
    out << pat.label << "(" << canonical(pat.a) << ";" << canonical(pat.b) << ")";
  } else {
    out << "(" << canonical(std::get<NodeSeqPattern>(rule.pattern).spec) << ")";
  }
  out << ":=";
  if (std::holds_alternative<RelationAction>(rule.action)) {
    const auto& act = std::get<RelationAction>(rule.action);
    out << act.label << "(";
    print_edit_side(out, act.var_a, act.edits_a, act.var_pos_a);
    out << ";";
    print_edit_side(out, act.var_b, act.edits_b, act.var_pos_b);
    out << ")";
  } else {
    for (const auto& item : std::get<SequenceAction>(rule.action).items) {
      out << "(";
      if (item.is_literal) {
        out << quote(item.literal);
      } else {
        print_edit_side(out, item.var, item.edits, item.var_pos);
      }
      out << ")";
    }
  }
  out << ";";
  return out.str();
}

std::string dump_ast(const Grammar& g) {
  std::ostringstream out;
  for (const TRule& r : g.trules) out << "r" << r.index << ": " << canonical(r) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Lint
// ---------------------------------------------------------------------------

namespace {

bool is_paradigm_tag(const std::string& f) {
  if (f.size() < 2 || f[0] != 'M') return false;
  return f.find_first_not_of("0123456789", 1) == std::string::npos;
}

bool node_rule_mentions_feature(const TRule& rule, const std::string& tag) {
  if (rule.is_relation_pattern()) return false;
  for (const auto& c : std::get<NodeSeqPattern>(rule.pattern).spec.constraints) {
    if (c.kind == ConstraintKind::Feature && c.token == tag) return true;
    if (c.kind == ConstraintKind::Disjunction &&
        std::find(c.alternatives.begin(), c.alternatives.end(), tag) !=
            c.alternatives.end())
      return true;
  }
  return false;
}

std::set<std::pair<std::string, bool>> condition_key(const FlxCase& fc) {
  std::set<std::pair<std::string, bool>> key;
  for (const auto& t : fc.condition) key.emplace(t.token, t.negated);
  return key;
}

void lint_flx(const FlxSpec& spec, std::size_t rule_index,
              std::vector<Diagnostic>& out) {
  for (std::size_t j = 1; j < spec.cases.size(); ++j) {
    auto key_j = condition_key(spec.cases[j]);
    for (std::size_t i = 0; i < j; ++i) {
      if (condition_key(spec.cases[i]) == key_j) {
        out.push_back({Severity::Warning, "ShadowedCase",
                       "rule " + std::to_string(rule_index) + ": paradigm case " +
                           std::to_string(j) + " is unreachable behind case " +
                           std::to_string(i)});
        break;
      }
    }
  }
}

bool side_is_noop(const std::vector<Edit>& edits) { return edits.empty(); }

void collect_used_vars(const TRule& rule, std::set<std::string>& used) {
  if (std::holds_alternative<RelationAction>(rule.action)) {
    const auto& act = std::get<RelationAction>(rule.action);
    // a side without a restated variable still edits positionally
    if (!act.var_a.empty()) used.insert(act.var_a);
    if (!act.var_b.empty()) used.insert(act.var_b);
    if (rule.is_relation_pattern()) {
      const auto& pat = std::get<RelationPattern>(rule.pattern);
      if (act.var_a.empty() && !act.edits_a.empty() && !pat.a.var.empty())
        used.insert(pat.a.var);
      if (act.var_b.empty() && !act.edits_b.empty() && !pat.b.var.empty())
        used.insert(pat.b.var);
    }
  } else {
    for (const auto& item : std::get<SequenceAction>(rule.action).items)
      if (!item.is_literal) used.insert(item.var);
  }
}

}  // namespace

std::vector<Diagnostic> lint(const Grammar& g, const lexicon::Lexicon& lex) {
  std::vector<Diagnostic> out = lint(g);

  std::set<std::string> tags;
  for (const auto& entry : lex.entries())
    for (const auto& f : entry.features)
      if (is_paradigm_tag(f)) tags.insert(f);
  for (const auto& tag : tags) {
    bool matched = false;
    for (const TRule& rule : g.trules)
      if (node_rule_mentions_feature(rule, tag)) {
        matched = true;
        break;
      }
    if (!matched)
      out.push_back({Severity::Warning, "UnusedParadigmTag",
                     "paradigm tag '" + tag +
                         "' appears in the dictionary but no node rule matches it"});
  }
  return out;
}

std::vector<Diagnostic> lint(const Grammar& g) {
  std::vector<Diagnostic> out;
  for (const TRule& rule : g.trules) {
    // provable no-ops
    if (std::holds_alternative<RelationAction>(rule.action)) {
      const auto& act = std::get<RelationAction>(rule.action);
      const auto& pat = std::get<RelationPattern>(rule.pattern);
      if (act.label == pat.label && side_is_noop(act.edits_a) &&
          side_is_noop(act.edits_b))
        out.push_back({Severity::Warning, "NoOpRule",
                       "rule " + std::to_string(rule.index) +
                           " rewrites the relation to itself"});
    } else if (!rule.is_relation_pattern()) {
      const auto& act = std::get<SequenceAction>(rule.action);
      const auto& pat = std::get<NodeSeqPattern>(rule.pattern);
      if (act.items.size() == 1 && !act.items[0].is_literal &&
          act.items[0].var == pat.spec.var && act.items[0].edits.empty())
        out.push_back({Severity::Warning, "NoOpRule",
                       "rule " + std::to_string(rule.index) +
                           " rewrites the node to itself"});
    }

    // shadowed paradigm cases
    const auto scan_edits = [&](const std::vector<Edit>& edits) {
      for (const auto& e : edits)
        if (e.kind == EditKind::AttachFlx) lint_flx(*e.flx, rule.index, out);
    };
    if (std::holds_alternative<RelationAction>(rule.action)) {
      const auto& act = std::get<RelationAction>(rule.action);
      scan_edits(act.edits_a);
      scan_edits(act.edits_b);
    } else {
      for (const auto& item : std::get<SequenceAction>(rule.action).items)
        if (!item.is_literal) scan_edits(item.edits);
    }

    // bound but unused variables
    std::set<std::string> used;
    collect_used_vars(rule, used);
    const auto check_unused = [&](const NodeSpec& spec) {
      if (!spec.var.empty() && !used.contains(spec.var))
        out.push_back({Severity::Warning, "UnusedVariable",
                       "rule " + std::to_string(rule.index) + " binds %" +
                           spec.var + " but never uses it"});
    };
    if (rule.is_relation_pattern()) {
      const auto& pat = std::get<RelationPattern>(rule.pattern);
      check_unused(pat.a);
      check_unused(pat.b);
    } else {
      check_unused(std::get<NodeSeqPattern>(rule.pattern).spec);
    }
  }
  return out;
}

}  // namespace unlgen::grammar
