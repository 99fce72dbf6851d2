#pragma once

#include "vilenkin/cylinder_set.hpp"
#include "vilenkin/exec.hpp"
#include "vilenkin/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace vilenkin {

/// The lattice-translate count eta(omega) = sum_{h} 1_S(omega + h) as a step
/// function on the p^resolution cells of U*. Cells met by pieces finer than
/// the table (or reachable by an unenumerated stream tail) carry an exact
/// fractional occupancy instead of a certain integer and are marked
/// unresolved.
struct EtaFunction {
    int prime = 2;
    int resolution = 0;
    std::vector<std::int64_t> counts;
    std::map<std::size_t, Rational> partial;  // extra occupancy on unresolved cells
    std::vector<char> resolved;
    Rational tail_uncertainty = 0;

    std::size_t cells() const { return counts.size(); }
    bool is_resolved(std::size_t cell) const { return resolved[cell] != 0; }
    Rational value(std::size_t cell) const;
    bool all_resolved() const;
};

/// Cell index at `resolution` of the cell containing the fractional part of
/// x; digits at positions 1..resolution, most significant first.
std::size_t cell_index(const Point& x, int resolution);

/// Folds the rho-images of the pieces (resolutions >= 0) into per-cell
/// translate counts. Pieces finer than the table drop into `partial`.
EtaFunction fold_rho(Prime p, const std::vector<Cylinder>& pieces, int resolution,
                     ExecMode mode = ExecMode::parallel);

/// Largest resolution whose table still fits in about a million cells.
int resolution_cap(int p);

class PieceStream;

/// Marks the cells an unenumerated stream tail could still touch: tail
/// families fold into a neighbourhood of theta, generator tails anywhere.
/// Also records the tail bound as the table's uncertainty.
void mark_stream_tail(EtaFunction& table, const PieceStream& s, int depth, const Rational& tail_bound);

} // namespace vilenkin
