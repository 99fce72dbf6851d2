#pragma once

#include "vilenkin/point.hpp"
#include "vilenkin/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vilenkin {

/// The clopen cell {omega : omega_j = anchor_j for all j <= resolution}.
/// Its measure is p^{-resolution} and its lambda*-image is the interval
/// [lambda*(anchor), lambda*(anchor) + p^{-resolution}).
struct Cylinder {
    Point anchor;
    int resolution;

    Cylinder(Point a, int n);

    int prime() const { return anchor.prime(); }
    Rational measure() const { return rational_pow(prime(), -resolution); }
    Rational lambda_lo() const { return lambda_value(anchor); }
    Rational lambda_hi() const { return lambda_lo() + measure(); }
    bool contains_zero() const { return anchor.is_zero(); }
    /// Index k of the annulus D_k = B^k U* \ B^{k-1} U* holding the whole
    /// cell; requires a nonzero anchor.
    int annulus() const;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

bool cylinder_contains(const Cylinder& outer, const Cylinder& inner);
bool cylinders_overlap(const Cylinder& a, const Cylinder& b);
/// "D.F" token; F is padded with zeros out to the resolution.
std::string format_cylinder(const Cylinder& c);

/// Finite disjoint union of cylinders in canonical form: maximal cells
/// (no cell contained in another, no complete family of p siblings left
/// unmerged), sorted by lambda* anchor. Set equality is structural
/// equality of the canonical form. Values are immutable.
class CylinderSet {
public:
    explicit CylinderSet(Prime p) : p_(p.value()) {}
    /// Union of the given cylinders (overlaps are merged, not rejected).
    static CylinderSet of(Prime p, const std::vector<Cylinder>& cylinders);
    static CylinderSet of(const Cylinder& c);
    /// U*, or its dilate B^k U* = cylinder(theta, -k).
    static CylinderSet unit(Prime p, int k = 0);
    /// Annulus D_k, the p-1 cells with a nonzero digit at position 1-k.
    static CylinderSet annulus(Prime p, int k);

    int prime() const { return p_; }
    bool empty() const { return cylinders_.empty(); }
    std::size_t size() const { return cylinders_.size(); }
    const std::vector<Cylinder>& cylinders() const { return cylinders_; }
    Rational measure() const;

    CylinderSet translate(const Point& t) const;
    /// B^k applied to the set; scales measure by p^k.
    CylinderSet dilate(int k) const;

    /// The same set as cylinders of resolution >= minres (coarse cells split).
    std::vector<Cylinder> refined(int minres) const;

    bool contains(const CylinderSet& other) const;
    bool contains(const Cylinder& c) const;
    bool disjoint_with(const CylinderSet& other) const;

    friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

private:
    int p_;
    std::vector<Cylinder> cylinders_;
};

CylinderSet set_union(const CylinderSet& a, const CylinderSet& b);
CylinderSet set_intersect(const CylinderSet& a, const CylinderSet& b);
CylinderSet set_subtract(const CylinderSet& a, const CylinderSet& b);

/// s split along the annuli D_k. A component containing theta (all-zero
/// anchor) meets infinitely many annuli and is returned separately.
struct AnnulusSplit {
    std::map<int, CylinderSet> parts;  // k -> s intersect D_k
    CylinderSet theta_part;            // union of all-zero-anchor cells (may be empty)
};
AnnulusSplit annulus_split(const CylinderSet& s);

/// First pair of overlapping cylinders in the given order, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_overlap(const std::vector<Cylinder>& cs);

/// Accumulates cylinders that must stay pairwise disjoint; insert reports
/// an overlap (and leaves the state unchanged) instead of merging.
class DisjointAccumulator {
public:
    explicit DisjointAccumulator(Prime p);
    DisjointAccumulator(DisjointAccumulator&&) noexcept;
    DisjointAccumulator& operator=(DisjointAccumulator&&) noexcept;
    ~DisjointAccumulator();

    bool insert(const Cylinder& c);
    /// Index of an earlier inserted cylinder overlapping c (valid after a
    /// failed insert).
    std::size_t last_overlap_index() const;
    const std::vector<Cylinder>& inserted() const;
    CylinderSet result() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace vilenkin
