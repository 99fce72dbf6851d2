#pragma once

// Brute-force region model used as the independent oracle: G* restricted to
// B^R U* at resolution K is p^{K+R} atomic cells, and every check is done by
// exhaustive per-atom bookkeeping (no cylinder algebra involved).

#include "vilenkin/cylinder_set.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

struct RegionModel {
    int p, K, R;
    std::size_t atom_count() const;

    // Membership mask of a finite cylinder set (must fit inside B^R U* with
    // resolutions <= K).
    std::vector<char> atoms(const vilenkin::CylinderSet& s) const;

    vilenkin::Rational measure(const std::vector<char>& atoms) const;

    // rho restricted to the set is a bijection onto U* (fold counts all 1).
    bool congruent(const std::vector<char>& atoms) const;

    // {B^n s} tiles G*: projections of all annulus parts cover D_0 exactly
    // once; an atom at theta fails outright.
    bool tiles(const std::vector<std::vector<char>>& sets) const;

    struct GssVerdict {
        bool measure_ok, nested, absorbs, eta_identity;
        bool all() const { return measure_ok && nested && absorbs && eta_identity; }
    };
    GssVerdict gss(const std::vector<char>& atoms) const;

    // eta fold per fractional atom.
    std::vector<std::int64_t> eta(const std::vector<char>& atoms) const;
};

} // namespace oracle
