#include "vilenkin/cyclotomic.hpp"

#include <stdexcept>

namespace vilenkin {

namespace {

// pi truncated after 50 decimals; the true value lies strictly between
// pi_lo and pi_lo + 10^-50.
const char* PI_DIGITS = "314159265358979323846264338327950288419716939937510";

struct Interval {
    Rational lo, hi;
    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval scaled(const Rational& r) const {
        return r >= 0 ? Interval{lo * r, hi * r} : Interval{hi * r, lo * r};
    }
};

Interval pi_interval() {
    Integer digits(PI_DIGITS);
    Integer den = 1;
    for (int i = 0; i < 50; ++i) den *= 10;
    Rational lo(digits, den);
    return {lo, lo + Rational(1, den)};
}

// Enclosure of cos at a rational point, via the Taylor series with an
// explicit remainder bound (valid while x^2 < (2T+1)(2T+2)).
Interval cos_enclosure(const Rational& x, int terms) {
    Rational x2 = x * x;
    Rational term = 1, sum = 0;
    for (int i = 0; i < terms; ++i) {
        sum += (i % 2 == 0) ? term : Rational(-term);
        term = term * x2 / Rational((2 * i + 1) * (2 * i + 2));
    }
    Rational gap = Rational((2 * terms + 1) * (2 * terms + 2));
    if (x2 >= gap) throw std::logic_error("cos_enclosure: too few terms");
    Rational rem = term / (Rational(1) - x2 / gap);
    if (rem < 0) rem = -rem;
    return {sum - rem, sum + rem};
}

// Enclosure of cos over a thin interval: cos is 1-Lipschitz.
Interval cos_over(const Interval& x, int terms) {
    Interval at_lo = cos_enclosure(x.lo, terms);
    Rational width = x.hi - x.lo;
    return {at_lo.lo - width, at_lo.hi + width};
}

} // namespace

Cyclotomic::Cyclotomic(Prime p) : p_(p.value()), c_(std::size_t(p.value() - 1), Rational(0)) {}

Cyclotomic Cyclotomic::from_rational(Prime p, Rational r) {
    Cyclotomic z(p);
    z.c_[0] = std::move(r);
    return z;
}

Cyclotomic Cyclotomic::from_coords(Prime p, std::vector<Rational> coords) {
    if (coords.size() != std::size_t(p.value() - 1))
        throw std::invalid_argument("cyclotomic coords: expected p-1 coordinates");
    Cyclotomic z(p);
    z.c_ = std::move(coords);
    return z;
}

Cyclotomic Cyclotomic::zeta_pow(Prime p, int e) {
    const int pv = p.value();
    e = ((e % pv) + pv) % pv;
    Cyclotomic z(p);
    if (e <= pv - 2) {
        z.c_[std::size_t(e)] = 1;
    } else {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (auto& c : z.c_) c = -1;
    }
    return z;
}

bool Cyclotomic::is_zero() const {
    for (const Rational& c : c_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic z(Prime(p_));
    for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
    return z;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic: mismatched primes");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic: mismatched primes");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic: mismatched primes");
    // Convolve into exponents 0..2p-4, reduce zeta^p = 1, then eliminate
    // zeta^{p-1} through the minimal polynomial.
    std::vector<Rational> acc(std::size_t(p_), Rational(0));  // exponents 0..p-1
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            acc[(i + j) % std::size_t(p_)] += c_[i] * o.c_[j];
        }
    }
    const Rational& top = acc[std::size_t(p_ - 1)];
    for (std::size_t i = 0; i + 1 < acc.size(); ++i) c_[i] = acc[i] - top;
    return *this;
}

Cyclotomic Cyclotomic::scaled(const Rational& r) const {
    Cyclotomic z(Prime(p_));
    for (std::size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] * r;
    return z;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic z(Prime(p_));
    z.c_[0] = c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
        int e = p_ - int(k);
        if (e <= p_ - 2) {
            z.c_[std::size_t(e)] += c_[k];
        } else {
            for (auto& c : z.c_) c -= c_[k];
        }
    }
    return z;
}

Cyclotomic Cyclotomic::norm_sq() const { return *this * conj(); }

bool Cyclotomic::is_real() const { return conj() == *this; }

int Cyclotomic::real_sign() const {
    if (!is_real()) throw std::domain_error("real_sign of a non-real cyclotomic");
    if (is_zero()) return 0;
    if (is_rational()) return c_[0] > 0 ? 1 : -1;
    Interval pi = pi_interval();
    for (int terms = 16; terms <= 64; terms *= 2) {
        Interval total{c_[0], c_[0]};
        for (std::size_t k = 1; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Interval x = pi.scaled(Rational(2 * int(k), p_));
            total = total + cos_over(x, terms).scaled(c_[k]);
        }
        if (total.lo > 0) return 1;
        if (total.hi < 0) return -1;
    }
    throw std::runtime_error("real_sign: enclosure did not separate from zero");
}

std::string Cyclotomic::str() const {
    if (is_rational()) return rational_str(c_[0]);
    std::string s;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) s += c_[k] > 0 ? "+" : "";
        s += rational_str(c_[k]);
        if (k >= 1) s += "*z" + (k > 1 ? "^" + std::to_string(k) : "");
        first = false;
    }
    return s.empty() ? "0" : s;
}

} // namespace vilenkin
