#include "unlgen/lexicon.hpp"

#include <algorithm>
#include <sstream>

#include "unlgen/text.hpp"

namespace unlgen::lexicon {

bool Entry::has_feature(std::string_view f) const {
  return std::find(features.begin(), features.end(), f) != features.end();
}

void Lexicon::add(Entry entry) {
  entries_.push_back(std::move(entry));
  by_uw_[entries_.back().uw].push_back(entries_.size() - 1);
}

std::vector<const Entry*> Lexicon::lookup(std::string_view uw,
                                          const std::vector<std::string>& attrs) const {
  std::vector<const Entry*> out;
  auto it = by_uw_.find(std::string(uw));
  if (it == by_uw_.end()) return out;
  for (std::size_t idx : it->second) {
    const Entry& e = entries_[idx];
    bool compatible = true;
    for (const auto& attr : attrs) {
      auto req = compat.find(attr);
      if (req == compat.end()) continue;
      for (const auto& feature : req->second) {
        if (!e.has_feature(feature)) {
          compatible = false;
          break;
        }
      }
      if (!compatible) break;
    }
    if (compatible) out.push_back(&e);
  }
  return out;
}

std::vector<const Entry*> Lexicon::lookup(std::string_view uw) const {
  return lookup(uw, {});
}

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

bool same_entry(const Entry& a, const Entry& b) {
  return a.lemma == b.lemma && a.uw == b.uw && a.features == b.features &&
         a.keyvals == b.keyvals;
}

// Strips a "//" comment, ignoring occurrences inside [..] or "..".
std::string_view strip_comment(std::string_view line) {
  bool in_bracket = false, in_quote = false;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    char c = line[i];
    if (in_quote) {
      if (c == '"') in_quote = false;
    } else if (in_bracket) {
      if (c == ']') in_bracket = false;
    } else if (c == '"') {
      in_quote = true;
    } else if (c == '[') {
      in_bracket = true;
    } else if (c == '/' && line[i + 1] == '/') {
      return line.substr(0, i);
    }
  }
  return line;
}

// `[lemma] "uw" (F1,F2,...);`
Entry parse_entry_line(std::string_view line, int line_no) {
  const auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("MalformedEntry", what + ": '" + std::string(line) + "'", line_no);
  };
  Entry entry;
  entry.line = line_no;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  };

  skip_ws();
  if (i >= line.size() || line[i] != '[') throw fail("expected '[lemma]'");
  std::size_t close = line.find(']', i);
  if (close == std::string_view::npos) throw fail("unterminated '[lemma]'");
  entry.lemma = std::string(line.substr(i + 1, close - i - 1));
  if (entry.lemma.empty()) throw fail("empty lemma");
  i = close + 1;

  skip_ws();
  if (i >= line.size() || line[i] != '"') throw fail("expected '\"uw\"'");
  std::size_t uw_end = line.find('"', i + 1);
  if (uw_end == std::string_view::npos) throw fail("unterminated '\"uw\"'");
  entry.uw = std::string(line.substr(i + 1, uw_end - i - 1));
  if (entry.uw.empty()) throw fail("empty universal word");
  i = uw_end + 1;

  skip_ws();
  if (i >= line.size() || line[i] != '(') throw fail("expected feature list");
  std::size_t paren_end = line.find(')', i);
  if (paren_end == std::string_view::npos) throw fail("unterminated feature list");
  std::string_view feats = line.substr(i + 1, paren_end - i - 1);
  i = paren_end + 1;

  std::size_t start = 0;
  while (start <= feats.size()) {
    std::size_t comma = feats.find(',', start);
    std::string_view tok =
        trim(feats.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                 : comma - start));
    if (!tok.empty()) {
      if (tok.find('@') != std::string_view::npos)
        throw fail("'@' is not allowed in features");
      std::size_t eq = tok.find('=');
      if (eq != std::string_view::npos) {
        std::string key(trim(tok.substr(0, eq)));
        std::string value(trim(tok.substr(eq + 1)));
        if (key.empty() || value.empty()) throw fail("malformed KEY=VALUE feature");
        entry.keyvals.emplace_back(std::move(key), std::move(value));
      } else {
        if (!entry.has_feature(tok)) entry.features.emplace_back(tok);
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }

  skip_ws();
  if (i >= line.size() || line[i] != ';') throw fail("expected trailing ';'");
  ++i;
  skip_ws();
  if (i < line.size()) throw fail("trailing text after ';'");
  return entry;
}

}  // namespace

DictionaryParse parse_dictionary(std::string_view input) {
  DictionaryParse result;
  std::string_view body = text::strip_bom(input);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t eol = body.find('\n', pos);
    std::string_view raw =
        body.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    std::string_view line = trim(raw);
    if (!line.empty() && !line.starts_with("//")) {
      line = trim(strip_comment(line));
      if (!line.empty()) {
        Entry entry = parse_entry_line(line, line_no);
        bool duplicate = false;
        for (const Entry& seen : result.lexicon.entries()) {
          if (same_entry(seen, entry)) {
            duplicate = true;
            result.diagnostics.push_back(
                {Severity::Warning, "DuplicateEntry",
                 "entry [" + entry.lemma + "] \"" + entry.uw +
                     "\" repeats line " + std::to_string(seen.line),
                 line_no});
            break;
          }
        }
        if (!duplicate) result.lexicon.add(std::move(entry));
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return result;
}

std::string serialize_dictionary(const Lexicon& lex) {
  std::ostringstream out;
  for (const Entry& e : lex.entries()) {
    out << "[" << e.lemma << "] \"" << e.uw << "\" (";
    bool first = true;
    for (const auto& f : e.features) {
      if (!first) out << ",";
      out << f;
      first = false;
    }
    for (const auto& [k, v] : e.keyvals) {
      if (!first) out << ",";
      out << k << "=" << v;
      first = false;
    }
    out << ");\n";
  }
  return out.str();
}

}  // namespace unlgen::lexicon
