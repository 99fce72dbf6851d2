#include "vilenkin/piece_stream.hpp"

#include <doctest.h>

using namespace vilenkin;

namespace {

Point pt(int p, std::vector<Digit> d) { return Point(Prime(p), std::move(d)); }

CylinderSet interval_1_2(int p) {
    return CylinderSet::of(Prime(p), {Cylinder(pt(p, {{0, 1}}), 0)});
}

} // namespace

TEST_CASE("tail family measures: geometric series") {
    // p=3, body [1,2), r=1, from 1: total = sum 3^{-j} = 1/2.
    TailFamily t(1, theta(Prime(3)), interval_1_2(3), 1);
    CHECK(t.total_measure() == Rational(1, 2));
    CHECK(t.tail_after(4) == Rational(1, 2) * rational_pow(3, -4) * 2 * Rational(1, 2) * 2);
    CHECK(t.tail_after(4) == rational_pow(3, -4) / 2);
    CHECK(t.piece(2) == interval_1_2(3).dilate(-2));
}

TEST_CASE("stream enumeration and tail bounds") {
    PieceStream fin = PieceStream::finite(interval_1_2(2));
    auto e0 = fin.enumerate(5);
    CHECK(e0.pieces.size() == 1);
    CHECK(e0.tail_bound == Rational(0));

    PieceStream s2 = PieceStream::with_tails(CylinderSet(Prime(2)),
                                             {TailFamily(1, theta(Prime(2)), interval_1_2(2), 1)});
    auto e2 = s2.enumerate(3);
    CHECK(e2.pieces.size() == 3);
    CylinderSet un(Prime(2));
    for (auto& piece : e2.pieces) un = set_union(un, piece);
    // Pieces j=1..3 cover [1/8, 1).
    CHECK(un.measure() == Rational(7, 8));
    CHECK(e2.tail_bound == Rational(1, 8));

    PieceStream s3 = PieceStream::with_tails(CylinderSet(Prime(3)),
                                             {TailFamily(1, theta(Prime(3)), interval_1_2(3), 1)});
    auto e3 = s3.enumerate(4);
    Rational enumerated = 0;
    for (auto& piece : e3.pieces) enumerated += piece.measure();
    CHECK(enumerated == (Rational(1) - rational_pow(3, -4)) / 2);
    CHECK(e3.tail_bound == rational_pow(3, -4) / 2);
    CHECK(enumerated + e3.tail_bound == s3.total_measure());
}

TEST_CASE("generator streams enumerate deterministically") {
    const Prime p2(2);
    auto gen = [](int j) -> std::optional<CylinderSet> {
        if (j > 6) return std::nullopt;
        Prime p(2);
        std::vector<Digit> digits{{j, 1}};
        return CylinderSet::of(p, {Cylinder(Point(p, std::move(digits)), j)});
    };
    PieceStream s = PieceStream::generated(p2, Rational(1), gen);
    auto a = s.enumerate(4), b = s.enumerate(4);
    CHECK(a.pieces.size() == b.pieces.size());
    for (std::size_t i = 0; i < a.pieces.size(); ++i) CHECK(a.pieces[i] == b.pieces[i]);
    CHECK(a.tail_bound == Rational(1) - Rational(15, 16));
}

TEST_CASE("self disjointness of a tail family") {
    // Body [1,2) is fine; body [1,2) U [1/2,1) spans two annuli and its
    // first dilate overlaps.
    TailFamily good(1, theta(Prime(2)), interval_1_2(2), 1);
    CHECK(good.validate_self_disjoint().status == Status::pass);

    CylinderSet bad_body = set_union(interval_1_2(2),
                                     CylinderSet::of(Prime(2), {Cylinder(pt(2, {{1, 1}}), 1)}));
    TailFamily bad(1, theta(Prime(2)), bad_body, 1);
    Verdict v = bad.validate_self_disjoint();
    CHECK(v.status == Status::fail);
    REQUIRE(v.witness);

    TailFamily theta_body(1, theta(Prime(2)), CylinderSet::unit(Prime(2)), 1);
    CHECK(theta_body.validate_self_disjoint().status == Status::fail);

    // Structural check agrees with explicit enumeration to depth 3*span.
    auto [kmin, kmax] = std::pair<int, int>{0, 1};
    PieceStream bs = PieceStream::with_tails(CylinderSet(Prime(2)), {bad});
    CHECK(bs.validate_disjoint(3 * (kmax - kmin)).status == Status::fail);
}

TEST_CASE("cross-source disjointness") {
    const Prime p2(2);
    // Two aligned families partitioning (0,1): bodies [1,3/2) and [3/2,2).
    CylinderSet b1 = CylinderSet::of(p2, {Cylinder(pt(2, {{0, 1}}), 1)});
    CylinderSet b2 = CylinderSet::of(p2, {Cylinder(pt(2, {{0, 1}, {1, 1}}), 1)});
    PieceStream ok = PieceStream::with_tails(CylinderSet(p2), {TailFamily(1, theta(p2), b1, 1),
                                                              TailFamily(1, theta(p2), b2, 1)});
    CHECK(ok.validate_disjoint(6).status == Status::pass);

    // Same-anchor families that collide at a dilation offset.
    PieceStream clash = PieceStream::with_tails(
        CylinderSet(p2),
        {TailFamily(1, theta(p2), interval_1_2(2), 1), TailFamily(2, theta(p2), interval_1_2(2), 1)});
    CHECK(clash.validate_disjoint(6).status == Status::fail);

    // Finite part swallowing the deep tail.
    PieceStream swallowed = PieceStream::with_tails(
        CylinderSet::unit(p2), {TailFamily(1, theta(p2), interval_1_2(2), 1)});
    CHECK(swallowed.validate_disjoint(6).status == Status::fail);

    // Tail anchored away from theta, finite part elsewhere.
    PieceStream apart = PieceStream::with_tails(
        interval_1_2(2), {TailFamily(1, h_of_index(p2, 2), interval_1_2(2), 1)});
    CHECK(apart.validate_disjoint(6).status == Status::pass);
}

TEST_CASE("stream subset decisions") {
    const Prime p2(2);
    PieceStream s = PieceStream::with_tails(CylinderSet(p2),
                                            {TailFamily(1, theta(p2), interval_1_2(2), 1)});
    // The union of B^{-j}[1,2) is (0,1) up to null sets: deep theta cells
    // are covered, [1,2) itself is not.
    auto deep = stream_subset(PieceStream::finite(CylinderSet::unit(p2, -8)), s);
    REQUIRE(deep.has_value());
    CHECK(*deep);
    auto outside = stream_subset(PieceStream::finite(interval_1_2(2)), s);
    REQUIRE(outside.has_value());
    CHECK(!*outside);

    // B^{-1}S inside S, but not conversely.
    auto forward = stream_subset(s.dilate(-1), s);
    REQUIRE(forward.has_value());
    CHECK(*forward);
    auto backward = stream_subset(s, s.dilate(-1));
    REQUIRE(backward.has_value());
    CHECK(!*backward);

    // U* = [0,1/2) plus the family tail; containment of U* holds.
    PieceStream mixed = PieceStream::with_tails(
        CylinderSet::of(p2, {Cylinder(theta(p2), 1)}),
        {TailFamily(1, theta(p2), interval_1_2(2), 2)});
    auto unit_in = stream_subset(PieceStream::finite(CylinderSet::unit(p2)), mixed);
    REQUIRE(unit_in.has_value());
    CHECK(!*unit_in);  // piece j=1 ([1/2,1)) is missing: start is 2
    PieceStream full = PieceStream::with_tails(
        CylinderSet::of(p2, {Cylinder(theta(p2), 1)}),
        {TailFamily(1, theta(p2), interval_1_2(2), 1)});
    auto unit_in2 = stream_subset(PieceStream::finite(CylinderSet::unit(p2)), full);
    REQUIRE(unit_in2.has_value());
    CHECK(!*unit_in2);  // [1/2,1) covered by j=1, but [0,?) theta cells need all j
    // Actually every annulus D_{-k} is covered by piece j=k+1, so U* should
    // be contained up to the theta point itself: check the deep cell.
    auto deep2 = stream_subset(PieceStream::finite(CylinderSet::unit(p2, -3)), full);
    REQUIRE(deep2.has_value());
    CHECK(*deep2);

    PieceStream gen = PieceStream::generated(p2, Rational(1), [](int) { return std::nullopt; });
    CHECK(!stream_subset(gen, s).has_value());
}

TEST_CASE("stream dilation scales measure") {
    const Prime p3(3);
    PieceStream s = PieceStream::with_tails(interval_1_2(3),
                                            {TailFamily(1, theta(p3), interval_1_2(3), 1)});
    CHECK(s.total_measure() == Rational(3, 2));
    CHECK(s.dilate(1).total_measure() == Rational(9, 2));
    CHECK(s.dilate(-2).total_measure() == Rational(1, 6));
}
