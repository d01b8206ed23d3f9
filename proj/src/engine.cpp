#include "unlgen/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <sstream>

#include "unlgen/morphology.hpp"
#include "unlgen/text.hpp"

namespace unlgen::engine {

// ---------------------------------------------------------------------------
// GenNode
// ---------------------------------------------------------------------------

bool GenNode::has_feature(std::string_view f) const {
  return std::find(features.begin(), features.end(), f) != features.end();
}

bool GenNode::has_attr(std::string_view a) const {
  return std::find(attrs.begin(), attrs.end(), a) != attrs.end();
}

bool GenNode::satisfies_token(std::string_view tok) const {
  if (has_feature(tok)) return true;
  for (const auto& [key, value] : kv)
    if (value == tok) return true;
  return false;
}

void GenNode::add_feature(std::string_view f) {
  if (!has_feature(f)) features.emplace_back(f);
}

void GenNode::remove_feature(std::string_view f) {
  features.erase(std::remove(features.begin(), features.end(), f), features.end());
}

void GenNode::add_attr(std::string_view a) {
  if (!has_attr(a)) attrs.emplace_back(a);
}

void GenNode::remove_attr(std::string_view a) {
  attrs.erase(std::remove(attrs.begin(), attrs.end(), a), attrs.end());
}

// ---------------------------------------------------------------------------
// GenState
// ---------------------------------------------------------------------------

std::vector<std::size_t> GenState::scan_order() const {
  std::vector<std::size_t> order;
  for (const auto& seg : segments)
    for (std::size_t idx : seg) order.push_back(idx);
  return order;
}

std::optional<std::size_t> GenState::segment_of(std::size_t node) const {
  for (std::size_t s = 0; s < segments.size(); ++s)
    for (std::size_t idx : segments[s])
      if (idx == node) return s;
  return std::nullopt;
}

bool GenState::node_in_relation(std::size_t node) const {
  for (const auto& [label, a, b] : relations)
    if (a == node || b == node) return true;
  return false;
}

std::string GenState::fresh_literal_id() const {
  for (std::size_t n = 1;; ++n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02zu", n);
    std::string candidate(buf);
    bool used = false;
    for (const auto& node : nodes)
      if (node.id == candidate) {
        used = true;
        break;
      }
    if (!used) return candidate;
  }
}

namespace {

bool whitespace_only(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

void render_node_full(std::ostringstream& out, const GenNode& n) {
  out << "\"" << n.surface << "\":" << (n.id.empty() ? "-" : n.id);
  if (n.origin) out << "<" << n.origin->first << ">";
  out << "{";
  for (std::size_t i = 0; i < n.features.size(); ++i) {
    if (i) out << ",";
    out << n.features[i];
  }
  out << "}(";
  for (std::size_t i = 0; i < n.attrs.size(); ++i) {
    if (i) out << ",";
    out << "@" << n.attrs[i];
  }
  out << ")[";
  bool first = true;
  for (const auto& [k, v] : n.kv) {
    if (!first) out << ",";
    out << k << "=" << v;
    first = false;
  }
  out << "]";
  if (n.pending_flx) out << " flx=" << grammar::canonical(*n.pending_flx);
  if (n.inflected) out << " inflected";
}

}  // namespace

std::string GenState::render() const {
  std::ostringstream out;
  for (const auto& seg : segments) {
    out << "#L(";
    bool first = true;
    for (std::size_t idx : seg) {
      if (!first) out << "; ";
      render_node_full(out, nodes[idx]);
      first = false;
    }
    out << ")\n";
  }
  for (const auto& [label, a, b] : relations) {
    out << label << "(";
    render_node_full(out, nodes[a]);
    out << ", ";
    render_node_full(out, nodes[b]);
    out << ")\n";
  }
  return out.str();
}

std::uint64_t GenState::structural_hash() const {
  // FNV-1a over the canonical rendering
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : render()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool GenState::same_structure(const GenState& other) const {
  return render() == other.render();
}

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

GenState init_state(const unl::Document& doc, const lexicon::Lexicon& lex,
                    std::vector<Diagnostic>& diagnostics) {
  GenState state;
  for (const auto& unl_node : doc.nodes) {
    GenNode node;
    node.origin = std::make_pair(unl_node.uw, unl_node.id);
    node.id = unl_node.id;
    node.attrs = unl_node.attrs;
    auto entries = lex.lookup(unl_node.uw, unl_node.attrs);
    if (entries.empty()) {
      node.surface = unl_node.uw;
      diagnostics.push_back({Severity::Warning, "UnknownUW",
                             "no dictionary entry for '" + unl_node.uw +
                                 "'; using the raw universal word"});
    } else {
      const lexicon::Entry& entry = *entries.front();
      node.surface = entry.lemma;
      node.features = entry.features;
      for (const auto& [k, v] : entry.keyvals) node.kv[k] = v;
    }
    state.nodes.push_back(std::move(node));
    state.segments.push_back({state.nodes.size() - 1});
  }
  for (const auto& rel : doc.relations)
    state.relations.emplace_back(rel.label, rel.source, rel.target);
  return state;
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

bool match_node(const grammar::NodeSpec& spec, const GenNode& node) {
  using grammar::ConstraintKind;
  for (const auto& c : spec.constraints) {
    switch (c.kind) {
      case ConstraintKind::Variable:
        break;
      case ConstraintKind::Feature:
        if (!node.satisfies_token(c.token)) return false;
        break;
      case ConstraintKind::NegFeature:
        if (node.satisfies_token(c.token)) return false;
        break;
      case ConstraintKind::Attribute:
        if (!node.has_attr(c.token)) return false;
        break;
      case ConstraintKind::NegAttribute:
        if (node.has_attr(c.token)) return false;
        break;
      case ConstraintKind::KeyValue: {
        auto it = node.kv.find(c.token);
        if (it == node.kv.end() || it->second != c.value) return false;
        break;
      }
      case ConstraintKind::Disjunction: {
        bool any = false;
        for (const auto& alt : c.alternatives)
          if (node.satisfies_token(alt)) {
            any = true;
            break;
          }
        if (!any) return false;
        break;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rule application
// ---------------------------------------------------------------------------

namespace {

// origin-less whitespace literals print as "-", echoing the node-list
// notation "#L(00:01.@3,-:02)"
std::string site_node_label(const GenNode& n) {
  std::string id = n.id.empty() ? "-" : n.id;
  std::string surface =
      (!n.origin && whitespace_only(n.surface)) ? "-" : n.surface;
  return "[" + surface + ":" + id + "]";
}

std::string site_relation_label(const GenState& st, std::size_t rel) {
  const auto& [label, a, b] = st.relations[rel];
  const auto name = [&](const GenNode& n) {
    std::string base = n.origin ? n.origin->first : n.surface;
    return n.id.empty() ? base : base + ":" + n.id;
  };
  return label + "(" + name(st.nodes[a]) + ", " + name(st.nodes[b]) + ")";
}

std::string render_nodes_inline(const GenState& st,
                                const std::vector<std::size_t>& idxs) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i : idxs) {
    if (!first) out << " ";
    render_node_full(out, st.nodes[i]);
    first = false;
  }
  return out.str();
}

void apply_edits(GenState& st, std::size_t node_idx,
                 const std::vector<grammar::Edit>& edits, TraceEvent& ev) {
  using grammar::EditKind;
  GenNode& node = st.nodes[node_idx];
  for (const auto& e : edits) {
    switch (e.kind) {
      case EditKind::AddFeature:
        node.add_feature(e.token);
        break;
      case EditKind::RemoveFeature:
        node.remove_feature(e.token);
        break;
      case EditKind::AddAttribute:
        node.add_attr(e.token);
        break;
      case EditKind::RemoveAttribute:
        node.remove_attr(e.token);
        break;
      case EditKind::SetKey:
        node.kv[e.token] = e.value;
        break;
      case EditKind::ClearKey:
        node.kv.erase(e.token);
        break;
      case EditKind::AttachFlx:
        // re-attaching a paradigm to an already-inflected node is meaningless
        if (!node.inflected) {
          node.pending_flx = *e.flx;
          node.add_feature("FLX");
        }
        break;
      case EditKind::ExecuteFlx: {
        auto outcome = morphology::inflect(node);
        ev.inflections.push_back({node.id, outcome.matched_case,
                                  outcome.surface_before, outcome.surface_after});
        break;
      }
    }
  }
}

std::size_t make_literal(GenState& st, const std::string& textv) {
  GenNode node;
  node.id = st.fresh_literal_id();
  node.surface = textv;
  st.nodes.push_back(std::move(node));
  return st.nodes.size() - 1;
}

// Applies `rule` at `site` on `st`, assuming the pattern already matched.
// Returns false when the action is structurally impossible here (endpoints
// sharing a segment, removal of a related node).
bool apply_action(GenState& st, const grammar::TRule& rule, Site site,
                  TraceEvent& ev) {
  using grammar::RelationAction;
  using grammar::SequenceAction;

  if (site.is_relation) {
    auto [label, a_idx, b_idx] = st.relations[site.index];
    if (std::holds_alternative<RelationAction>(rule.action)) {
      const auto& act = std::get<RelationAction>(rule.action);
      const auto& pat = std::get<grammar::RelationPattern>(rule.pattern);
      // sides resolve by restated variable name, else positionally
      const auto resolve = [&](const std::string& var, bool side_a) {
        if (var.empty()) return side_a ? a_idx : b_idx;
        if (var == pat.a.var) return a_idx;
        return b_idx;
      };
      std::get<0>(st.relations[site.index]) = act.label;
      apply_edits(st, resolve(act.var_a, true), act.edits_a, ev);
      apply_edits(st, resolve(act.var_b, false), act.edits_b, ev);
      return true;
    }

    const auto& act = std::get<SequenceAction>(rule.action);
    const auto& pat = std::get<grammar::RelationPattern>(rule.pattern);
    auto seg_a = st.segment_of(a_idx);
    auto seg_b = st.segment_of(b_idx);
    if (!seg_a || !seg_b || *seg_a == *seg_b) return false;

    std::vector<std::size_t> merged;
    for (const auto& item : act.items) {
      if (item.is_literal) {
        merged.push_back(make_literal(st, item.literal));
        continue;
      }
      std::size_t bound = (item.var == pat.a.var) ? a_idx : b_idx;
      apply_edits(st, bound, item.edits, ev);
      const auto& seg = st.segments[st.segment_of(bound).value()];
      merged.insert(merged.end(), seg.begin(), seg.end());
    }
    std::size_t lo = std::min(*seg_a, *seg_b);
    std::size_t hi = std::max(*seg_a, *seg_b);
    st.segments.erase(st.segments.begin() + static_cast<std::ptrdiff_t>(hi));
    st.segments[lo] = std::move(merged);
    st.relations.erase(st.relations.begin() + static_cast<std::ptrdiff_t>(site.index));
    return true;
  }

  // node site: the node's position in its segment is replaced by the items
  const auto& act = std::get<SequenceAction>(rule.action);
  std::size_t node_idx = site.index;
  bool keeps_node = false;
  for (const auto& item : act.items)
    if (!item.is_literal) keeps_node = true;
  if (!keeps_node && st.node_in_relation(node_idx))
    return false;   // cannot delete a node a pending relation still needs

  std::vector<std::size_t> replacement;
  for (const auto& item : act.items) {
    if (item.is_literal) {
      replacement.push_back(make_literal(st, item.literal));
    } else {
      apply_edits(st, node_idx, item.edits, ev);
      replacement.push_back(node_idx);
    }
  }
  std::size_t seg_idx = st.segment_of(node_idx).value();
  auto& seg = st.segments[seg_idx];
  auto pos = std::find(seg.begin(), seg.end(), node_idx);
  std::size_t at = static_cast<std::size_t>(pos - seg.begin());
  seg.erase(pos);
  seg.insert(seg.begin() + static_cast<std::ptrdiff_t>(at), replacement.begin(),
             replacement.end());
  return true;
}

bool pattern_matches(const GenState& st, const grammar::TRule& rule, Site site) {
  if (rule.is_relation_pattern() != site.is_relation) return false;
  if (site.is_relation) {
    const auto& pat = std::get<grammar::RelationPattern>(rule.pattern);
    const auto& [label, a, b] = st.relations[site.index];
    return label == pat.label && match_node(pat.a, st.nodes[a]) &&
           match_node(pat.b, st.nodes[b]);
  }
  const auto& pat = std::get<grammar::NodeSeqPattern>(rule.pattern);
  return match_node(pat.spec, st.nodes[site.index]);
}

}  // namespace

std::optional<TraceEvent> apply_rule(GenState& state, const grammar::TRule& rule,
                                     Site site) {
  if (!pattern_matches(state, rule, site)) return std::nullopt;

  TraceEvent ev;
  ev.rule_index = rule.index;
  ev.rule_text = grammar::canonical(rule);
  std::vector<std::size_t> site_nodes;
  if (site.is_relation) {
    ev.site = site_relation_label(state, site.index);
    site_nodes = {std::get<1>(state.relations[site.index]),
                  std::get<2>(state.relations[site.index])};
  } else {
    ev.site = site_node_label(state.nodes[site.index]);
    site_nodes = {site.index};
  }
  ev.before = render_nodes_inline(state, site_nodes);
  ev.before_hash = state.structural_hash();

  GenState candidate = state;
  if (!apply_action(candidate, rule, site, ev)) return std::nullopt;
  if (candidate.same_structure(state)) return std::nullopt;   // no-op firing

  ev.after = render_nodes_inline(candidate, site_nodes);
  ev.after_hash = candidate.structural_hash();
  state = std::move(candidate);
  return ev;
}

// ---------------------------------------------------------------------------
// Fixpoint loop
// ---------------------------------------------------------------------------

namespace {

// one scan in priority order; returns the fired event or nullopt at fixpoint
std::optional<TraceEvent> scan_once(GenState& state, const grammar::Grammar& g,
                                    const EngineCaps& caps,
                                    std::vector<std::string>* failed) {
  for (const auto& rule : g.trules) {
    if (rule.is_relation_pattern()) {
      for (std::size_t r = 0; r < state.relations.size(); ++r) {
        auto ev = apply_rule(state, rule, Site{true, r});
        if (ev) return ev;
        if (failed && caps.trace_level >= 4)
          failed->push_back("  try r" + std::to_string(rule.index) + " @ " +
                            site_relation_label(state, r) + ": no match");
      }
    } else {
      for (std::size_t n : state.scan_order()) {
        auto ev = apply_rule(state, rule, Site{false, n});
        if (ev) return ev;
        if (failed && caps.trace_level >= 4)
          failed->push_back("  try r" + std::to_string(rule.index) + " @ " +
                            site_node_label(state.nodes[n]) + ": no match");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

RunOutcome run(GenState state, const grammar::Grammar& g, const EngineCaps& caps) {
  RunOutcome outcome;
  outcome.firing_count = 0;

  while (true) {
    if (outcome.firing_count >= static_cast<std::size_t>(caps.max_firings)) {
      // cap reached: peek whether more work was pending
      GenState probe = state;
      if (scan_once(probe, g, EngineCaps{caps.max_firings, 0, caps.collapse_spaces},
                    nullptr)) {
        outcome.cap_exceeded = true;
        outcome.diagnostics.push_back(
            {Severity::Error, "FiringCapExceeded",
             "stopped after " + std::to_string(outcome.firing_count) +
                 " firings; the grammar does not reach a fixpoint"});
      }
      break;
    }
    auto ev = scan_once(state, g, caps, &outcome.failed_attempts);
    if (!ev) break;
    ev->step = outcome.firing_count + 1;
    assert(ev->before_hash != ev->after_hash || ev->before != ev->after);
    outcome.events.push_back(std::move(*ev));
    ++outcome.firing_count;
  }

  if (!state.relations.empty())
    outcome.diagnostics.push_back(
        {Severity::Warning, "UnresolvedRelations",
         std::to_string(state.relations.size()) +
             " relation(s) remain at fixpoint; segments are concatenated in "
             "creation order"});
  outcome.state = std::move(state);
  return outcome;
}

// ---------------------------------------------------------------------------
// Linearization
// ---------------------------------------------------------------------------

std::string linearize(const GenState& state, bool collapse,
                      std::vector<Diagnostic>* diagnostics) {
  if (!state.relations.empty() && diagnostics)
    diagnostics->push_back({Severity::Warning, "UnresolvedRelations",
                            "linearizing with relations still pending"});
  std::string out;
  for (const auto& seg : state.segments)
    for (std::size_t idx : seg) out += state.nodes[idx].surface;
  if (collapse) out = text::collapse_spaces(out);
  return out;
}

// ---------------------------------------------------------------------------
// Tracing
// ---------------------------------------------------------------------------

std::vector<std::string> render_trace(const RunOutcome& outcome,
                                      const GenState& initial, int level,
                                      std::string_view final_text) {
  std::vector<std::string> lines;
  if (level <= 0) return lines;

  lines.push_back("-- input: " + std::to_string(initial.scan_order().size()) +
                  " node(s), " + std::to_string(initial.relations.size()) +
                  " relation(s)");
  if (level >= 2) {
    for (const auto& ev : outcome.events) {
      lines.push_back("#" + std::to_string(ev.step) + " fire r" +
                      std::to_string(ev.rule_index) + ": " + ev.rule_text +
                      " @ " + ev.site);
      if (level >= 3) {
        lines.push_back("    before: " + ev.before);
        lines.push_back("    after:  " + ev.after);
        for (const auto& rec : ev.inflections) {
          if (rec.matched_case)
            lines.push_back("    flx: case " + std::to_string(*rec.matched_case) +
                            " matched, \"" + rec.before + "\" -> \"" + rec.after +
                            "\"");
          else
            lines.push_back("    flx: no case matched; surface unchanged (\"" +
                            rec.before + "\")");
        }
      }
    }
    if (level >= 4)
      for (const auto& attempt : outcome.failed_attempts) lines.push_back(attempt);
  }
  lines.push_back("-- fixpoint: " + std::to_string(outcome.firing_count) +
                  " firing(s), " + std::to_string(outcome.state.relations.size()) +
                  " relation(s) remaining" +
                  (outcome.cap_exceeded ? " [firing cap exceeded]" : ""));
  lines.push_back("-- output: \"" + std::string(final_text) + "\"");
  return lines;
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

GenerateResult generate(const unl::Document& doc, const lexicon::Lexicon& lex,
                        const grammar::Grammar& g, const EngineCaps& caps) {
  GenerateResult result;
  GenState initial = init_state(doc, lex, result.diagnostics);
  GenState working = initial;

  RunOutcome outcome = run(std::move(working), g, caps);
  result.firing_count = outcome.firing_count;
  result.cap_exceeded = outcome.cap_exceeded;
  result.unresolved_relations = !outcome.state.relations.empty();
  for (auto& d : outcome.diagnostics) result.diagnostics.push_back(std::move(d));

  result.text = linearize(outcome.state, caps.collapse_spaces, nullptr);
  result.events = outcome.events;
  result.trace = render_trace(outcome, initial, caps.trace_level, result.text);
  return result;
}

}  // namespace unlgen::engine
