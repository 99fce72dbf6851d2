#pragma once

#include "vilenkin/verdict.hpp"

#include <string>
#include <vector>

namespace vilenkin {

/// Stable machine-readable verdict: keys {command, prime, verdict,
/// conditions[], witnesses[], measures{}, depth, decisions[]} in fixed
/// order; rationals as "num/den" strings. Byte-identical for identical
/// inputs and flags.
std::string render_json(const std::string& command, int prime, const Verdict& v, int depth,
                        const std::vector<std::string>& decisions);

} // namespace vilenkin
