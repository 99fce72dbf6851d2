#pragma once

#include "vilenkin/piece_stream.hpp"
#include "vilenkin/verdict.hpp"

#include <vector>

namespace vilenkin {

/// Is rho restricted to s a bijection onto U* (modulo null sets)?
/// Pass requires exactly disjoint rho-images covering U* with measure 1;
/// streams get a certificate when the deficit stays within the tail bound.
Verdict check_translation_congruence(const CylinderSet& s);
Verdict check_translation_congruence(const PieceStream& s, int depth);

/// One piece of {B^{-k}(s cap D_k)}, all subsets of D_0.
struct ProjectedPiece {
    Cylinder cell;
    std::size_t source;  // index of the originating set
    int annulus;         // k of the originating annulus
};

struct DilationProjection {
    std::vector<ProjectedPiece> pieces;
    CylinderSet theta_part;  // nonempty means the dilates nest: automatic Fail
};

/// The dilates {B^n s} tile G* iff these pieces tile D_0 disjointly.
DilationProjection dilation_projection(const CylinderSet& s, std::size_t source = 0);

Verdict check_dilation_tiling(const std::vector<CylinderSet>& sets);
Verdict check_dilation_tiling(const std::vector<PieceStream>& sets, int depth);

/// Conditions (a) dilation tiling and (b) translation congruence, jointly.
Verdict check_wavelet_set(const CylinderSet& s);
Verdict check_wavelet_set(const PieceStream& s, int depth);

/// p-1 sets tiling jointly, each congruent to U*. A count other than p-1
/// is reported as a warning note, not an error.
Verdict check_multiwavelet_set(const std::vector<CylinderSet>& sets);
Verdict check_multiwavelet_set(const std::vector<PieceStream>& sets, int depth);

/// Translate-count function f = sum_h 1_S(. - h) on U* at the given
/// resolution (refined automatically if pieces are finer): reports min f,
/// max f and the measure, and asserts the packing/tiling dichotomy
/// (min f >= 1 implies: max f = 1 iff measure = 1) on this instance.
Verdict packing_tiling_check(const CylinderSet& s, int resolution);
Verdict packing_tiling_check(const PieceStream& s, int resolution, int depth);

} // namespace vilenkin
