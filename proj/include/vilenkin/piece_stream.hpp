#pragma once

#include "vilenkin/cylinder_set.hpp"
#include "vilenkin/verdict.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace vilenkin {

/// The canonical infinite-description shape: the disjoint union over
/// j >= start of B^{-j*ratio}(body) + anchor, with anchor in the lattice
/// (digits at positions <= 0 only). Exact total measure
/// mu(body) * p^{-start*ratio} / (1 - p^{-ratio}).
struct TailFamily {
    int ratio;
    Point anchor;
    CylinderSet body;
    int start;

    TailFamily(int ratio, Point anchor, CylinderSet body, int start);

    int prime() const { return body.prime(); }
    CylinderSet piece(int j) const;
    Rational total_measure() const;
    /// Measure of all pieces with index > j.
    Rational tail_after(int j) const;
    /// Pieces with index > j lie inside this single cylinder around the anchor.
    Cylinder tail_region(int j) const;
    /// Exact check that the pieces are pairwise disjoint (all j, not just a prefix).
    Verdict validate_self_disjoint() const;
};

/// A measurable set given as finitely many disjoint pieces plus optional
/// tail families or a generator procedure; carries an exact total measure
/// and yields certified finite enumerations.
class PieceStream {
public:
    static PieceStream finite(CylinderSet s);
    static PieceStream with_tails(CylinderSet finite_part, std::vector<TailFamily> tails);
    static PieceStream generated(Prime p, Rational total,
                                 std::function<std::optional<CylinderSet>(int)> gen);

    int prime() const { return p_; }
    bool is_finite() const { return tails_.empty() && !gen_; }
    bool is_generated() const { return bool(gen_); }
    const CylinderSet& finite_part() const { return finite_; }
    const std::vector<TailFamily>& tails() const { return tails_; }

    Rational total_measure() const;

    struct Enumeration {
        std::vector<CylinderSet> pieces;  // deterministic order: finite part, then per family by index
        Rational tail_bound;              // exact measure of everything not enumerated
    };
    /// Pieces with index <= depth. Deterministic and re-entrant.
    Enumeration enumerate(int depth) const;

    /// Pairwise disjointness of all pieces. Exact for finite and tail-family
    /// sources; generator sources are checked on the enumerated prefix only
    /// (Undecided when a tail remains).
    Verdict validate_disjoint(int depth) const;

    /// True when every tail family is anchored at theta.
    bool theta_anchored() const;
    /// B^k applied to the whole stream. Requires k >= 0 or theta-anchored
    /// families (a lattice anchor dilated downward can leave the lattice).
    PieceStream dilate(int k) const;

private:
    explicit PieceStream(Prime p) : p_(p.value()), finite_(p) {}
    int p_;
    CylinderSet finite_;
    std::vector<TailFamily> tails_;
    std::function<std::optional<CylinderSet>(int)> gen_;
    Rational gen_total_ = 0;
};

/// Exact subset test a <= b (modulo null sets). Decidable for finite and
/// theta-anchored tail-family streams: each annulus D_k holds a finite part
/// of both sides, and deep annuli repeat with period lcm(ratios). Returns
/// nullopt for generator sources or families anchored away from theta.
std::optional<bool> stream_subset(const PieceStream& a, const PieceStream& b);

} // namespace vilenkin
