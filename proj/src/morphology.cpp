#include "unlgen/morphology.hpp"

#include "unlgen/text.hpp"

namespace unlgen::morphology {

bool eval_condition(const std::vector<grammar::CondTerm>& condition,
                    const engine::GenNode& node) {
  for (const auto& term : condition) {
    bool satisfied = node.satisfies_token(term.token);
    if (satisfied == term.negated) return false;
  }
  return true;
}

std::string apply_affix(std::string_view surface, const grammar::AffixOp& op) {
  std::u32string scalars = text::decode_utf8(surface);
  if (op.strip < 0 || static_cast<std::size_t>(op.strip) > scalars.size())
    throw ParseError("StripTooLong",
                     "cannot strip " + std::to_string(op.strip) +
                         " characters from '" + std::string(surface) + "'",
                     0);
  std::size_t keep = scalars.size() - static_cast<std::size_t>(op.strip);
  return text::encode_utf8(std::u32string_view(scalars).substr(0, keep)) + op.append;
}

InflectionOutcome inflect(engine::GenNode& node) {
  InflectionOutcome outcome;
  outcome.surface_before = node.surface;
  outcome.surface_after = node.surface;
  if (!node.pending_flx.has_value() || node.inflected) return outcome;

  const grammar::FlxSpec spec = std::move(*node.pending_flx);
  node.pending_flx.reset();
  node.inflected = true;

  for (std::size_t i = 0; i < spec.cases.size(); ++i) {
    if (eval_condition(spec.cases[i].condition, node)) {
      outcome.matched_case = i;
      outcome.surface_after = apply_affix(node.surface, spec.cases[i].op);
      node.surface = outcome.surface_after;
      break;
    }
  }
  return outcome;
}

}  // namespace unlgen::morphology
