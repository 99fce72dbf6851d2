#include "vilenkin/point.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace vilenkin;

namespace {

Point pt(int p, std::vector<Digit> d) { return Point(Prime(p), std::move(d)); }

Point random_point(int p, std::mt19937& rng, int lo = -4, int hi = 8) {
    std::uniform_int_distribution<int> digit(0, p - 1);
    std::uniform_int_distribution<int> keep(0, 2);
    std::vector<Digit> digits;
    for (int pos = lo; pos <= hi; ++pos) {
        if (keep(rng) != 0) continue;
        int v = digit(rng);
        if (v != 0) digits.push_back({pos, v});
    }
    return Point(Prime(p), std::move(digits));
}

Point random_unit_point(int p, std::mt19937& rng, int hi = 10) {
    std::uniform_int_distribution<int> digit(0, p - 1);
    std::uniform_int_distribution<int> keep(0, 2);
    std::vector<Digit> digits;
    for (int pos = 1; pos <= hi; ++pos) {
        if (keep(rng) != 0) continue;
        int v = digit(rng);
        if (v != 0) digits.push_back({pos, v});
    }
    return Point(Prime(p), std::move(digits));
}

// Independent digit-map oracle for coordinatewise addition mod p.
Point add_oracle(const Point& x, const Point& y) {
    std::map<int, int> m;
    for (const Digit& d : x.digits()) m[d.pos] += d.val;
    for (const Digit& d : y.digits()) m[d.pos] += d.val;
    std::vector<Digit> out;
    for (auto& [pos, v] : m)
        if (v % x.prime() != 0) out.push_back({pos, v % x.prime()});
    return Point(Prime(x.prime()), std::move(out));
}

} // namespace

TEST_CASE("add: digit-wise mod p, no carries") {
    CHECK(add(pt(2, {{0, 1}}), pt(2, {{0, 1}})) == theta(Prime(2)));
    CHECK(add(pt(3, {{0, 2}}), pt(3, {{0, 2}})) == pt(3, {{0, 1}}));
    // Disjoint supports add lambda values exactly.
    Point sum = add(pt(2, {{0, 1}}), pt(2, {{1, 1}}));
    CHECK(sum == pt(2, {{0, 1}, {1, 1}}));
    CHECK(lambda_value(sum) == Rational(3, 2));
    CHECK_THROWS_AS(add(pt(2, {{0, 1}}), pt(3, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("negate: digit-wise complement") {
    CHECK(negate(theta(Prime(5))) == theta(Prime(5)));
    CHECK(negate(pt(3, {{0, 1}})) == pt(3, {{0, 2}}));
    CHECK(negate(pt(5, {{0, 2}, {1, 3}})) == pt(5, {{0, 3}, {1, 2}}));
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
        Point x = random_point(5, rng);
        CHECK(add(x, negate(x)) == theta(Prime(5)));
    }
}

TEST_CASE("lambda_value") {
    CHECK(lambda_value(pt(2, {{0, 1}, {-2, 1}})) == Rational(5));
    CHECK(lambda_value(pt(3, {{1, 2}})) == Rational(2, 3));
    CHECK(lambda_value(theta(Prime(7))) == Rational(0));
}

TEST_CASE("h_of_index: base-p digits at positions <= 0") {
    CHECK(h_of_index(Prime(3), 0) == theta(Prime(3)));
    CHECK(h_of_index(Prime(2), 3) == pt(2, {{0, 1}, {-1, 1}}));
    CHECK(h_of_index(Prime(3), 5) == pt(3, {{0, 2}, {-1, 1}}));
    for (int p : {2, 3}) {
        std::uint64_t limit = 1;
        for (int i = 0; i < 8; ++i) limit *= std::uint64_t(p);
        for (std::uint64_t a = 0; a < limit; ++a)
            REQUIRE(lambda_value(h_of_index(Prime(p), a)) == Rational(Integer(a)));
    }
}

TEST_CASE("shift: digit positions move, lambda scales by p^k") {
    CHECK(shift(theta(Prime(2)), 5) == theta(Prime(2)));
    CHECK(shift(pt(2, {{1, 1}}), 1) == pt(2, {{0, 1}}));
    CHECK(lambda_value(shift(pt(2, {{1, 1}}), 1)) == Rational(1));
    CHECK(shift(pt(3, {{0, 1}}), -2) == pt(3, {{2, 1}}));
    CHECK(lambda_value(shift(pt(3, {{0, 1}}), -2)) == Rational(1, 9));
    std::mt19937 rng(1);
    for (int i = 0; i < 200; ++i) {
        Point x = random_point(3, rng), y = random_point(3, rng);
        int k = int(rng() % 7) - 3;
        CHECK(shift(add(x, y), k) == add(shift(x, k), shift(y, k)));
        CHECK(lambda_value(shift(x, k)) == rational_pow(3, k) * lambda_value(x));
    }
}

TEST_CASE("group laws on random points") {
    std::mt19937 rng(7);
    for (int p : {2, 3, 5}) {
        for (int i = 0; i < 100; ++i) {
            Point x = random_point(p, rng), y = random_point(p, rng), z = random_point(p, rng);
            CHECK(add(x, y) == add(y, x));
            CHECK(add(add(x, y), z) == add(x, add(y, z)));
            CHECK(add(x, theta(Prime(p))) == x);
            Point acc = theta(Prime(p));
            for (int j = 0; j < p; ++j) acc = add(acc, x);
            CHECK(acc == theta(Prime(p)));
            CHECK(add(x, y) == add_oracle(x, y));
        }
    }
}

TEST_CASE("no carries: disjoint supports add lambda values") {
    std::mt19937 rng(9);
    for (int i = 0; i < 100; ++i) {
        Point x = random_point(3, rng, -4, 2);
        Point y = random_point(3, rng, 3, 8);
        CHECK(lambda_value(add(x, y)) == lambda_value(x) + lambda_value(y));
    }
}

TEST_CASE("character pairing") {
    const Prime p2(2);
    Point omega1 = h_of_index(p2, 1);  // digit at position 0
    CHECK(character(theta(p2), omega1) == 0);
    CHECK(character(h_of_index(p2, 1), omega1) == 0);  // x_0 pairs with omega_1 = 0
    CHECK(character(h_of_index(p2, 1), pt(2, {{1, 1}})) == 1);

    std::mt19937 rng(11);
    for (int p : {2, 3, 5}) {
        for (int i = 0; i < 100; ++i) {
            Point x = random_point(p, rng), y = random_point(p, rng), w = random_point(p, rng);
            CHECK(character(add(x, y), w) == (character(x, w) + character(y, w)) % p);
            CHECK(character(shift(x, 1), w) == character(x, shift(w, 1)));
        }
    }
}

TEST_CASE("walsh functions") {
    const Prime p2(2);
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) CHECK(walsh_dual(0, random_point(2, rng)) == 0);
    CHECK(walsh_dual(3, pt(2, {{1, 1}, {2, 1}})) == 0);  // exponent 1+1 mod 2
    CHECK(walsh_dual(1, pt(2, {{1, 1}})) == 1);
    // W*_alpha depends only on digits omega_1..omega_m with p^m > alpha.
    for (int i = 0; i < 50; ++i) {
        Point w = random_unit_point(3, rng, 4);
        Point deep = add(w, pt(3, {{9, 2}}));
        for (std::uint64_t a = 0; a < 81; ++a) CHECK(walsh_dual(a, w) == walsh_dual(a, deep));
    }
    // Time-side Walsh: x_1 pairs with the position-0 digit of omega_[alpha].
    CHECK(walsh(2, pt(3, {{1, 1}})) == 2);
    CHECK(walsh(2, pt(3, {{-1, 1}})) == 0);
}

TEST_CASE("rho: fractional part") {
    const Prime p2(2);
    CHECK(rho(theta(p2)) == theta(p2));
    CHECK(rho(pt(2, {{-1, 1}, {0, 1}, {1, 1}})) == pt(2, {{1, 1}}));  // 11.1 -> 0.1
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        Point w = random_point(3, rng);
        Point r = rho(w);
        CHECK(rho(r) == r);
        CHECK(r.in_unit());
        CHECK(subtract(w, r).in_lattice());
        Point h = random_point(3, rng, -4, 0);
        CHECK(rho(add(w, h)) == rho(w));
        if (w.in_unit()) CHECK(r == w);
    }
}

TEST_CASE("i_map") {
    const Prime p2(2);
    CHECK(i_map(theta(p2)) == theta(p2));
    CHECK(i_map(pt(2, {{1, 1}})) == theta(p2));
    CHECK(i_map(pt(2, {{2, 1}})) == pt(2, {{1, 1}}));
    CHECK_THROWS_AS(i_map(pt(2, {{0, 1}})), std::domain_error);
    std::mt19937 rng(19);
    for (int i = 0; i < 300; ++i) {
        Point w = random_unit_point(3, rng);
        Point it = w;
        for (int j = 1; j <= 8; ++j) {
            it = i_map(it);
            CHECK(it == rho(shift(w, j)));
        }
    }
}

TEST_CASE("lemma 4.1 classification") {
    const Prime p3(3);
    Point w = pt(3, {{2, 1}});  // in U*_1
    CHECK(lemma41_classify(w, w).tag == Lemma41Case::ii);
    auto r1 = lemma41_classify(pt(3, {{1, 1}}), theta(p3));
    CHECK(r1.tag == Lemma41Case::i);
    CHECK(r1.sigma == 1);
    CHECK(lemma41_classify(pt(3, {{1, 1}}), pt(3, {{1, 2}})).tag == Lemma41Case::iii);
    CHECK(lemma41_classify(pt(3, {{1, 1}}), pt(3, {{2, 1}})).tag == Lemma41Case::none);
    CHECK_THROWS_AS(lemma41_classify(pt(3, {{0, 1}}), theta(p3)), std::domain_error);

    // Completeness: equal I-images exactly when some case applies.
    std::mt19937 rng(23);
    for (int p : {2, 3}) {
        for (int i = 0; i < 400; ++i) {
            Point a = random_unit_point(p, rng), b = random_unit_point(p, rng);
            bool same = i_map(a) == i_map(b);
            CHECK(same == (lemma41_classify(a, b).tag != Lemma41Case::none));
        }
    }
}

TEST_CASE("point token round trip") {
    const Prime p2(2);
    Point x = parse_point(p2, "11.01");
    CHECK(x == pt(2, {{-1, 1}, {0, 1}, {2, 1}}));
    CHECK(format_point(x) == "11.01");
    CHECK(format_point(theta(p2)) == "0.");
    CHECK(parse_point(p2, "0.") == theta(p2));
    CHECK(parse_point(p2, ".") == theta(p2));
    CHECK_THROWS_AS(parse_point(p2, "0.2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(p2, "1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(p2, "1..0"), std::invalid_argument);

    std::mt19937 rng(29);
    for (int p : {2, 3, 5}) {
        for (int i = 0; i < 200; ++i) {
            Point a = random_point(p, rng);
            CHECK(parse_point(Prime(p), format_point(a)) == a);
        }
    }
}
