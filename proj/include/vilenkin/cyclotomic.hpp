#pragma once

#include "vilenkin/point.hpp"
#include "vilenkin/rational.hpp"

#include <string>
#include <vector>

namespace vilenkin {

/// Element of Q(zeta_p), zeta_p = exp(2 pi i / p), with exact rational
/// coordinates over the power basis {1, zeta, ..., zeta^{p-2}} and the
/// relation zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}). For p = 2 this is
/// just Q. Immutable value semantics; zero test and equality are exact.
class Cyclotomic {
public:
    explicit Cyclotomic(Prime p);
    static Cyclotomic zero(Prime p) { return Cyclotomic(p); }
    static Cyclotomic one(Prime p) { return from_rational(p, 1); }
    static Cyclotomic from_rational(Prime p, Rational r);
    static Cyclotomic from_coords(Prime p, std::vector<Rational> coords);
    /// zeta^e (any integer e, reduced mod p).
    static Cyclotomic zeta_pow(Prime p, int e);

    int prime() const { return p_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    Cyclotomic scaled(const Rational& r) const;

    /// Complex conjugation: zeta^k -> zeta^{p-k}.
    Cyclotomic conj() const;
    /// |z|^2 = z * conj(z), a real element of the field.
    Cyclotomic norm_sq() const;
    bool is_real() const;  // conj(z) == z
    /// Exact sign of a real element: -1, 0, +1. Rational elements compare
    /// directly; otherwise a shrinking rational enclosure of
    /// sum_k c_k cos(2 pi k / p) decides (terminates for nonzero values).
    int real_sign() const;

    friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;

    std::string str() const;

private:
    int p_;
    std::vector<Rational> c_;  // size p-1
};

} // namespace vilenkin
