#pragma once

#include "vilenkin/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vilenkin {

/// A validated prime modulus. Every digit-sequence object carries one.
class Prime {
public:
    explicit Prime(int p);
    int value() const { return p_; }
    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }
    friend bool operator!=(Prime a, Prime b) { return a.p_ != b.p_; }

private:
    int p_;
};

struct Digit {
    int pos;     // position j in the sequence (x_j)
    int val;     // 1..p-1; zeros are never stored
    friend bool operator==(const Digit&, const Digit&) = default;
};

/// Finitely supported element of the Vilenkin group G (or its dual G*,
/// the two share one representation). Digits are kept sorted by position,
/// ascending; equality is structural.
class Point {
public:
    explicit Point(Prime p) : p_(p.value()) {}
    Point(Prime p, std::vector<Digit> digits);

    int prime() const { return p_; }
    bool is_zero() const { return digits_.empty(); }
    const std::vector<Digit>& digits() const { return digits_; }
    int digit_at(int pos) const;
    int min_pos() const;  // most significant nonzero position; requires !is_zero()
    int max_pos() const;  // least significant nonzero position; requires !is_zero()

    /// No digits at positions <= 0, i.e. the element lies in U*.
    bool in_unit() const { return digits_.empty() || digits_.front().pos >= 1; }
    /// No digits at positions > 0, i.e. the element lies in H (or H-perp).
    bool in_lattice() const { return digits_.empty() || digits_.back().pos <= 0; }

    friend bool operator==(const Point&, const Point&) = default;
    /// Arbitrary strict total order (prime, then digit vector); for use as a map key.
    friend bool operator<(const Point& a, const Point& b);

private:
    int p_;
    std::vector<Digit> digits_;
};

Point theta(Prime p);

/// Coordinatewise addition mod p (no carries).
Point add(const Point& x, const Point& y);
/// Inverse for add: every stored digit d becomes p-d.
Point negate(const Point& x);
Point subtract(const Point& x, const Point& y);

/// lambda(x) = sum_j x_j p^{-j}, an exact rational with p-power denominator.
Rational lambda_value(const Point& x);

/// h_[alpha]: the lattice element with lambda value alpha (base-p digits of
/// alpha at positions 0, -1, -2, ...). The same construction gives omega_[alpha].
Point h_of_index(Prime p, std::uint64_t alpha);

/// A^k (B^k on the dual): (shift(x,k))_j = x_{j+k}; multiplies lambda by p^k.
Point shift(const Point& x, int k);

/// Digit sigma in 1..p-1 at position 1: the point written 0.sigma.
Point dot_sigma(Prime p, int sigma);

/// Drop digits at positions > bound (keeps positions <= bound).
Point truncate_above(const Point& x, int bound);

/// Character pairing exponent: chi(x, omega) = exp(2 pi i e / p) with
/// e = sum_j x_j omega_{1-j} mod p.
int character(const Point& x, const Point& omega);

/// W*_alpha(omega) = chi(h_[alpha], omega), returned as an exponent mod p.
int walsh_dual(std::uint64_t alpha, const Point& omega);
/// W_alpha(x) = chi(x, omega_[alpha]).
int walsh(std::uint64_t alpha, const Point& x);

/// Fractional-part map G* -> U*: removes all digits at positions <= 0.
Point rho(const Point& omega);

/// The p-to-1 self map of U*, I(omega) = rho(B omega). Throws domain_error
/// outside U*.
Point i_map(const Point& omega);

enum class Lemma41Case { i, ii, iii, none };

struct Lemma41Result {
    Lemma41Case tag = Lemma41Case::none;
    int sigma = 0;  // set for case i: the nonzero first coordinate
};

/// Which of the three equal-I-image conditions holds for omega1, omega2 in U*.
Lemma41Result lemma41_classify(const Point& omega1, const Point& omega2);

/// Token format "D.F": D = digits at positions ...,-1,0 (most significant
/// first, may be empty), F = digits at positions 1,2,... in order.
Point parse_point(Prime p, std::string_view token);
std::string format_point(const Point& x);
/// As format_point but pads F with zeros up to `resolution` fractional digits.
std::string format_point(const Point& x, int resolution);

} // namespace vilenkin
