#include "unlgen/unl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "unlgen/text.hpp"

namespace unlgen::unl {

bool Node::has_attr(std::string_view name) const {
  return std::find(attrs.begin(), attrs.end(), name) != attrs.end();
}

void Node::add_attr(std::string_view name) {
  if (!has_attr(name)) attrs.emplace_back(name);
}

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

// Splits the argument list of a relation at the top-level comma. UWs may
// themselves contain parenthesized restrictions, so nesting is respected.
std::vector<std::string_view> split_args(std::string_view args) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    char c = args[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 0) {
      out.push_back(args.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(args.substr(start));
  return out;
}

// Node text: uw[:id][.@attr]* with an optional trailing ".", whitespace
// around separators ignored.
struct ParsedNode {
  std::string uw;
  std::string id;
  std::vector<std::string> attrs;
};

ParsedNode parse_node_text(std::string_view raw, int line) {
  ParsedNode node;
  std::string_view s = trim(raw);

  // attributes start at the first ".@"
  std::size_t attr_start = s.size();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == '.' && s[i + 1] == '@') {
      attr_start = i;
      break;
    }
  }
  std::string_view head = trim(s.substr(0, attr_start));
  std::string_view tail = s.substr(attr_start);

  std::size_t colon = head.find(':');
  if (colon == std::string_view::npos) {
    node.uw = std::string(trim(head));
  } else {
    node.uw = std::string(trim(head.substr(0, colon)));
    node.id = std::string(trim(head.substr(colon + 1)));
  }
  if (node.uw.empty())
    throw ParseError("EmptyUW", "node has no universal word: '" + std::string(raw) + "'", line);

  // tail is a sequence of ".@name", tolerating a trailing "."
  std::size_t i = 0;
  while (i < tail.size()) {
    if (tail[i] == ' ' || tail[i] == '\t') {
      ++i;
      continue;
    }
    if (tail[i] != '.')
      throw ParseError("MalformedRelation", "unexpected text after attributes", line);
    ++i;
    while (i < tail.size() && (tail[i] == ' ' || tail[i] == '\t')) ++i;
    if (i >= tail.size()) break;  // trailing "." tolerated
    if (tail[i] != '@')
      throw ParseError("MalformedRelation", "expected '@' after '.'", line);
    ++i;
    std::size_t start = i;
    while (i < tail.size() && tail[i] != '.' && tail[i] != ' ' && tail[i] != '\t') ++i;
    std::string name(tail.substr(start, i - start));
    if (name.empty())
      throw ParseError("MalformedRelation", "empty attribute name", line);
    if (std::find(node.attrs.begin(), node.attrs.end(), name) == node.attrs.end())
      node.attrs.push_back(name);
  }
  return node;
}

struct Builder {
  Document doc;
  std::map<std::pair<std::string, std::string>, std::size_t> index;

  std::size_t intern(const ParsedNode& p) {
    auto key = std::make_pair(p.uw, p.id);
    auto it = index.find(key);
    if (it == index.end()) {
      Node n;
      n.uw = p.uw;
      n.id = p.id;
      n.attrs = p.attrs;
      doc.nodes.push_back(std::move(n));
      index.emplace(key, doc.nodes.size() - 1);
      return doc.nodes.size() - 1;
    }
    Node& existing = doc.nodes[it->second];
    // a repeated occurrence must list the same attribute set; otherwise the
    // union is kept and the conflict flagged for validate()
    bool same = existing.attrs.size() == p.attrs.size();
    if (same)
      for (const auto& a : p.attrs)
        if (!existing.has_attr(a)) { same = false; break; }
    if (!same) existing.attr_conflict = true;
    for (const auto& a : p.attrs) existing.add_attr(a);
    return it->second;
  }

  void add_relation(std::string_view line_text, int line) {
    std::string_view s = trim(line_text);
    std::size_t open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
      throw ParseError("MalformedRelation",
                       "expected label(node, node): '" + std::string(s) + "'", line);
    std::string label(trim(s.substr(0, open)));
    if (label.empty())
      throw ParseError("MalformedRelation", "relation has no label", line);
    std::string_view args = s.substr(open + 1, s.size() - open - 2);
    auto parts = split_args(args);
    if (parts.size() != 2)
      throw ParseError("MalformedRelation",
                       "expected exactly two comma-separated nodes", line);
    Relation rel;
    rel.label = label;
    rel.source = intern(parse_node_text(parts[0], line));
    rel.target = intern(parse_node_text(parts[1], line));
    doc.relations.push_back(rel);
  }
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return lines;
}

}  // namespace

std::vector<Document> parse_file(std::string_view text) {
  text = text::strip_bom(text);
  std::vector<Document> docs;
  auto lines = split_lines(text);
  Builder* current = nullptr;
  Builder builder;
  int block_open_line = 0;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = trim(lines[ln]);
    int line_no = static_cast<int>(ln + 1);
    if (line.empty()) continue;
    if (line == "{unl}") {
      if (current != nullptr)
        throw ParseError("UnbalancedBlock", "nested {unl} block", line_no);
      builder = Builder{};
      current = &builder;
      block_open_line = line_no;
      continue;
    }
    if (line == "{/unl}") {
      if (current == nullptr)
        throw ParseError("UnbalancedBlock", "{/unl} without {unl}", line_no);
      docs.push_back(std::move(builder.doc));
      current = nullptr;
      continue;
    }
    if (current == nullptr) {
      // text outside blocks is ignored (headers, comments)
      continue;
    }
    current->add_relation(line, line_no);
  }
  if (current != nullptr)
    throw ParseError("UnbalancedBlock", "missing {/unl}", block_open_line);
  return docs;
}

Document parse_document(std::string_view text) {
  auto docs = parse_file(text);
  if (docs.empty()) return Document{};
  if (docs.size() > 1)
    throw ParseError("UnbalancedBlock", "expected at most one {unl} block", 1);
  return std::move(docs.front());
}

namespace {
void render_node(std::ostringstream& out, const Node& n) {
  out << n.uw;
  if (!n.id.empty()) out << ":" << n.id;
  for (const auto& a : n.attrs) out << ".@" << a;
}
}  // namespace

std::string serialize(const Document& doc) {
  std::ostringstream out;
  out << "{unl}\n";
  for (const auto& rel : doc.relations) {
    out << rel.label << "(";
    render_node(out, doc.nodes[rel.source]);
    out << ", ";
    render_node(out, doc.nodes[rel.target]);
    out << ")\n";
  }
  out << "{/unl}\n";
  return out.str();
}

std::set<std::string> default_relation_labels() {
  // the standard relation inventory; override with a data file when a
  // grammar defines its own
  return {
      "agt", "and", "ant", "aoj", "bas", "ben", "cag", "cao", "cnt", "cob",
      "con", "coo", "dur", "equ", "fmt", "frm", "gol", "icl", "ins", "int",
      "iof", "man", "met", "mod", "nam", "obj", "opl", "or",  "per", "plc",
      "plf", "plt", "pof", "pos", "ptn", "pur", "qua", "rsn", "scn", "seq",
      "sho", "src", "tim", "tmf", "tmt", "to",  "via"};
}

std::set<std::string> load_relation_labels(const std::filesystem::path& path) {
  std::set<std::string> labels;
  std::string content = text::read_text_file(path);
  for (auto raw : split_lines(content)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    labels.emplace(line);
  }
  return labels;
}

std::vector<Diagnostic> validate(const Document& doc,
                                 const std::set<std::string>& known_labels) {
  std::vector<Diagnostic> diags;
  for (const auto& rel : doc.relations) {
    if (!known_labels.contains(rel.label))
      diags.push_back({Severity::Warning, "UnknownRelationLabel",
                       "relation label '" + rel.label + "' is not in the standard set"});
    if (rel.source == rel.target) {
      std::ostringstream msg;
      msg << "relation '" << rel.label << "' links node "
          << doc.nodes[rel.source].uw;
      if (!doc.nodes[rel.source].id.empty()) msg << ":" << doc.nodes[rel.source].id;
      msg << " to itself";
      diags.push_back({Severity::Warning, "SelfLoop", msg.str()});
    }
  }
  for (const auto& node : doc.nodes) {
    if (node.attr_conflict)
      diags.push_back({Severity::Warning, "ConflictingAttributes",
                       "node " + node.uw + (node.id.empty() ? "" : ":" + node.id) +
                           " occurs with conflicting attribute sets"});
  }
  return diags;
}

std::vector<Diagnostic> validate(const Document& doc) {
  return validate(doc, default_relation_labels());
}

}  // namespace unlgen::unl
