#pragma once

#include <optional>
#include <vector>

#include "ctlab/satclass.hpp"

namespace ctlab::detail {

// Direct subformula occurrences; existential witnesses range over [0, w].
std::vector<Occurrence> child_occurrences(const Occurrence& o, std::uint64_t w);

// The eta clause for occurrences of a quantified layer of eta_b.
std::optional<bool> eta_forced(const Occurrence& o, const ConstraintSet& gamma);

// All valuations of vars over [0, w].
std::vector<Valuation> all_valuations(const std::vector<VarIndex>& vars, std::uint64_t w);

}  // namespace ctlab::detail
