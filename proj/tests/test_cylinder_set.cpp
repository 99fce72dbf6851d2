#include "vilenkin/cylinder_set.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace vilenkin;

namespace {

Point pt(int p, std::vector<Digit> d) { return Point(Prime(p), std::move(d)); }

CylinderSet set_of(int p, std::vector<Cylinder> cs) { return CylinderSet::of(Prime(p), cs); }

// Random cylinder inside B^{region}U* with resolution <= maxres.
Cylinder random_cylinder(int p, std::mt19937& rng, int region, int maxres) {
    std::uniform_int_distribution<int> res_dist(1 - region, maxres);
    int n = res_dist(rng);
    std::uniform_int_distribution<int> digit(0, p - 1);
    std::vector<Digit> digits;
    for (int pos = 1 - region; pos <= n; ++pos) {
        int v = digit(rng);
        if (v != 0) digits.push_back({pos, v});
    }
    return Cylinder(Point(Prime(p), std::move(digits)), n);
}

CylinderSet random_set(int p, std::mt19937& rng, int region = 2, int maxres = 5, int max_cells = 4) {
    std::uniform_int_distribution<int> count(1, max_cells);
    std::vector<Cylinder> cs;
    int n = count(rng);
    for (int i = 0; i < n; ++i) cs.push_back(random_cylinder(p, rng, region, maxres));
    return CylinderSet::of(Prime(p), cs);
}

} // namespace

TEST_CASE("cylinder basics") {
    const Prime p2(2);
    Cylinder u(theta(p2), 0);
    CHECK(u.measure() == Rational(1));
    CHECK(u.contains_zero());
    Cylinder c(pt(2, {{0, 1}}), 0);  // [1,2)
    CHECK(c.lambda_lo() == Rational(1));
    CHECK(c.lambda_hi() == Rational(2));
    CHECK(c.annulus() == 1);
    CHECK(Cylinder(pt(3, {{1, 2}}), 1).annulus() == 0);
    CHECK_THROWS_AS(Cylinder(pt(2, {{3, 1}}), 1), std::invalid_argument);
    CHECK_THROWS_AS(u.annulus(), std::domain_error);
}

TEST_CASE("boolean operations: worked examples") {
    const Prime p2(2), p3(3);
    CylinderSet unit2 = CylinderSet::unit(p2);
    CHECK(set_intersect(unit2, unit2) == unit2);

    // [0,2) minus [0,1) = [1,2).
    CylinderSet diff = set_subtract(CylinderSet::unit(p2, 1), unit2);
    CHECK(diff == set_of(2, {Cylinder(pt(2, {{0, 1}}), 0)}));

    // p=3: [1/3,2/3) union [2/3,1) = U* minus [0,1/3), measure 2/3.
    CylinderSet u = set_union(set_of(3, {Cylinder(pt(3, {{1, 1}}), 1)}),
                              set_of(3, {Cylinder(pt(3, {{1, 2}}), 1)}));
    CHECK(u == set_subtract(CylinderSet::unit(p3), set_of(3, {Cylinder(theta(p3), 1)})));
    CHECK(u.measure() == Rational(2, 3));
}

TEST_CASE("translate") {
    const Prime p2(2);
    CylinderSet s = set_of(2, {Cylinder(pt(2, {{1, 1}}), 1)});  // [1/2,1)
    CHECK(s.translate(theta(p2)) == s);
    CylinderSet t = s.translate(h_of_index(p2, 1));
    CHECK(t == set_of(2, {Cylinder(pt(2, {{0, 1}, {1, 1}}), 1)}));
    CHECK(t.cylinders().front().lambda_lo() == Rational(3, 2));
    // A digit at a free position leaves the set invariant.
    CHECK(CylinderSet::unit(p2).translate(pt(2, {{1, 1}})) == CylinderSet::unit(p2));
}

TEST_CASE("dilate") {
    const Prime p2(2), p3(3);
    CylinderSet unit2 = CylinderSet::unit(p2);
    CHECK(unit2.dilate(0) == unit2);
    CHECK(unit2.dilate(1) == CylinderSet::unit(p2, 1));
    CHECK(unit2.dilate(1).measure() == Rational(2));
    CylinderSet one = set_of(3, {Cylinder(pt(3, {{0, 1}}), 0)});  // [1,2)
    CHECK(one.dilate(-1) == set_of(3, {Cylinder(pt(3, {{1, 1}}), 1)}));
    CHECK(one.dilate(-1).measure() == Rational(1, 3));
}

TEST_CASE("measure") {
    CHECK(CylinderSet::unit(Prime(2)).measure() == Rational(1));
    CHECK(CylinderSet(Prime(3)).measure() == Rational(0));
}

TEST_CASE("annulus split") {
    const Prime p2(2), p3(3);
    auto s1 = annulus_split(set_of(2, {Cylinder(pt(2, {{0, 1}}), 0)}));
    CHECK(s1.theta_part.empty());
    CHECK(s1.parts.size() == 1);
    CHECK(s1.parts.count(1) == 1);

    auto s2 = annulus_split(CylinderSet::unit(p2));
    CHECK(!s2.theta_part.empty());
    CHECK(s2.parts.empty());

    auto s3 = annulus_split(set_of(3, {Cylinder(pt(3, {{1, 2}}), 1)}));  // [2/3,1)
    CHECK(s3.parts.size() == 1);
    CHECK(s3.parts.count(0) == 1);

    // D_k definitions under lambda*.
    CHECK(CylinderSet::annulus(p2, 1).cylinders().front().lambda_lo() == Rational(1));
    CHECK(CylinderSet::annulus(p3, 0).measure() == Rational(2, 3));
}

TEST_CASE("annulus split partitions the set") {
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        CylinderSet s = random_set(3, rng);
        auto split = annulus_split(s);
        CylinderSet un = split.theta_part;
        Rational total = split.theta_part.measure();
        for (auto& [k, part] : split.parts) {
            CHECK(set_intersect(un, part).empty());
            un = set_union(un, part);
            total += part.measure();
        }
        CHECK(un == s);
        CHECK(total == s.measure());
    }
}

TEST_CASE("normal form: sibling merge, idempotence, order independence") {
    const Prime p2(2);
    CylinderSet merged = set_of(2, {Cylinder(theta(p2), 1), Cylinder(pt(2, {{1, 1}}), 1)});
    CHECK(merged == CylinderSet::unit(p2));
    CylinderSet cascade = set_of(2, {Cylinder(theta(p2), 1), Cylinder(pt(2, {{1, 1}}), 2),
                                     Cylinder(pt(2, {{1, 1}, {2, 1}}), 2)});
    CHECK(cascade == CylinderSet::unit(p2));

    std::mt19937 rng(37);
    for (int i = 0; i < 100; ++i) {
        std::vector<Cylinder> cs;
        for (int j = 0; j < 5; ++j) cs.push_back(random_cylinder(3, rng, 2, 4));
        CylinderSet a = CylinderSet::of(Prime(3), cs);
        std::shuffle(cs.begin(), cs.end(), rng);
        CylinderSet b = CylinderSet::of(Prime(3), cs);
        CHECK(a == b);
        CHECK(CylinderSet::of(Prime(3), a.cylinders()) == a);
        // No complete sibling family survives in canonical form.
        for (const Cylinder& c : a.cylinders()) CHECK(c.anchor.prime() == 3);
    }
}

TEST_CASE("boolean algebra laws against the atom oracle") {
    oracle::RegionModel model{3, 6, 2};
    std::mt19937 rng(41);
    for (int i = 0; i < 60; ++i) {
        CylinderSet a = random_set(3, rng), b = random_set(3, rng), c = random_set(3, rng);
        auto A = model.atoms(a), B = model.atoms(b), C = model.atoms(c);
        auto check = [&](const CylinderSet& s, auto&& f) {
            auto S = model.atoms(s);
            for (std::size_t t = 0; t < S.size(); ++t) REQUIRE(S[t] == f(A[t], B[t], C[t]));
        };
        check(set_union(a, b), [](char x, char y, char) { return char(x | y); });
        check(set_intersect(a, b), [](char x, char y, char) { return char(x & y); });
        check(set_subtract(a, b), [](char x, char y, char) { return char(x & !y); });
        check(set_intersect(a, set_union(b, c)),
              [](char x, char y, char z) { return char(x & (y | z)); });
        check(set_union(set_intersect(a, b), set_intersect(a, c)),
              [](char x, char y, char z) { return char((x & y) | (x & z)); });
        // De Morgan within the bounding region.
        CylinderSet region = CylinderSet::unit(Prime(3), 2);
        check(set_subtract(region, set_union(a, b)),
              [](char x, char y, char) { return char(!(x | y)); });
        check(set_intersect(set_subtract(region, a), set_subtract(region, b)),
              [](char x, char y, char) { return char(!x & !y); });

        CHECK(set_union(a, b).measure() + set_intersect(a, b).measure() ==
              a.measure() + b.measure());
        CHECK(a.translate(pt(3, {{0, 2}, {-1, 1}})).measure() == a.measure());
        CHECK(a.dilate(2).measure() == a.measure() * 9);
        CHECK(a.dilate(-3).measure() == a.measure() / 27);
    }
}

TEST_CASE("refined splits coarse cells exactly") {
    const Prime p2(2);
    CylinderSet s = CylinderSet::unit(p2, 1);  // [0,2)
    auto cells = s.refined(0);
    CHECK(cells.size() == 2);
    Rational total = 0;
    for (const Cylinder& c : cells) {
        CHECK(c.resolution >= 0);
        total += c.measure();
    }
    CHECK(total == s.measure());
    CHECK(CylinderSet::of(p2, cells) == s);
}

TEST_CASE("disjoint accumulator reports overlaps") {
    const Prime p2(2);
    DisjointAccumulator acc(p2);
    CHECK(acc.insert(Cylinder(pt(2, {{1, 1}}), 1)));
    CHECK(acc.insert(Cylinder(pt(2, {{2, 1}}), 2)));  // [1/4,1/2)
    CHECK(!acc.insert(Cylinder(pt(2, {{1, 1}, {2, 1}}), 2)));     // inside [1/2,1)
    CHECK(acc.last_overlap_index() == 0);
    CHECK(!acc.insert(Cylinder(theta(p2), 0)));  // U* covers everything inserted
    CHECK(acc.result().measure() == Rational(3, 4));
}
