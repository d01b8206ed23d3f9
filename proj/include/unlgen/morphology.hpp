#ifndef UNLGEN_MORPHOLOGY_HPP
#define UNLGEN_MORPHOLOGY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unlgen/engine.hpp"
#include "unlgen/grammar.hpp"

namespace unlgen::morphology {

struct InflectionOutcome {
  std::optional<std::size_t> matched_case;   // absent: surface unchanged
  std::string surface_before;
  std::string surface_after;
};

/// True iff every positive term is satisfied (bare feature present or some
/// key's value equals the token) and every negated term is not.
bool eval_condition(const std::vector<grammar::CondTerm>& condition,
                    const engine::GenNode& node);

/// Removes `op.strip` scalar values from the right edge, then appends.
/// Throws ParseError("StripTooLong") when strip exceeds the surface length.
std::string apply_affix(std::string_view surface, const grammar::AffixOp& op);

/// Applies the node's pending paradigm: the first case (declaration order)
/// whose condition holds rewrites the surface; with no match the surface is
/// kept. Either way the pending paradigm is cleared and the node marked
/// inflected.
InflectionOutcome inflect(engine::GenNode& node);

}  // namespace unlgen::morphology

#endif
