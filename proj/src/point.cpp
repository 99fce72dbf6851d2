#include "vilenkin/point.hpp"

#include <algorithm>
#include <stdexcept>

namespace vilenkin {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_same_prime(const Point& x, const Point& y, const char* op) {
    if (x.prime() != y.prime())
        throw std::invalid_argument(std::string(op) + ": mismatched primes");
}

int digit_char_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

char digit_char(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

} // namespace

Prime::Prime(int p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

Point::Point(Prime p, std::vector<Digit> digits) : p_(p.value()), digits_(std::move(digits)) {
    std::sort(digits_.begin(), digits_.end(), [](const Digit& a, const Digit& b) { return a.pos < b.pos; });
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        const Digit& d = digits_[i];
        if (d.val <= 0 || d.val >= p_) throw std::invalid_argument("digit out of range");
        if (i > 0 && digits_[i - 1].pos == d.pos) throw std::invalid_argument("duplicate digit position");
    }
}

int Point::digit_at(int pos) const {
    auto it = std::lower_bound(digits_.begin(), digits_.end(), pos,
                               [](const Digit& d, int q) { return d.pos < q; });
    return (it != digits_.end() && it->pos == pos) ? it->val : 0;
}

int Point::min_pos() const {
    if (digits_.empty()) throw std::logic_error("min_pos of theta");
    return digits_.front().pos;
}

int Point::max_pos() const {
    if (digits_.empty()) throw std::logic_error("max_pos of theta");
    return digits_.back().pos;
}

bool operator<(const Point& a, const Point& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    return std::lexicographical_compare(
        a.digits_.begin(), a.digits_.end(), b.digits_.begin(), b.digits_.end(),
        [](const Digit& x, const Digit& y) { return x.pos != y.pos ? x.pos < y.pos : x.val < y.val; });
}

Point theta(Prime p) { return Point(p); }

Point add(const Point& x, const Point& y) {
    require_same_prime(x, y, "add");
    const int p = x.prime();
    std::vector<Digit> out;
    out.reserve(x.digits().size() + y.digits().size());
    auto a = x.digits().begin(), ae = x.digits().end();
    auto b = y.digits().begin(), be = y.digits().end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->pos < b->pos)) {
            out.push_back(*a++);
        } else if (a == ae || b->pos < a->pos) {
            out.push_back(*b++);
        } else {
            int v = (a->val + b->val) % p;
            if (v != 0) out.push_back({a->pos, v});
            ++a;
            ++b;
        }
    }
    return Point(Prime(p), std::move(out));
}

Point negate(const Point& x) {
    const int p = x.prime();
    std::vector<Digit> out;
    out.reserve(x.digits().size());
    for (const Digit& d : x.digits()) out.push_back({d.pos, p - d.val});
    return Point(Prime(p), std::move(out));
}

Point subtract(const Point& x, const Point& y) { return add(x, negate(y)); }

Rational lambda_value(const Point& x) {
    Rational sum = 0;
    for (const Digit& d : x.digits()) sum += Rational(d.val) * rational_pow(x.prime(), -d.pos);
    return sum;
}

Point h_of_index(Prime p, std::uint64_t alpha) {
    std::vector<Digit> out;
    int pos = 0;
    while (alpha > 0) {
        int v = int(alpha % std::uint64_t(p.value()));
        if (v != 0) out.push_back({pos, v});
        alpha /= std::uint64_t(p.value());
        --pos;
    }
    return Point(p, std::move(out));
}

Point shift(const Point& x, int k) {
    std::vector<Digit> out;
    out.reserve(x.digits().size());
    for (const Digit& d : x.digits()) out.push_back({d.pos - k, d.val});
    return Point(Prime(x.prime()), std::move(out));
}

Point dot_sigma(Prime p, int sigma) {
    if (sigma <= 0 || sigma >= p.value()) throw std::invalid_argument("dot_sigma: digit out of range");
    return Point(p, {{1, sigma}});
}

Point truncate_above(const Point& x, int bound) {
    std::vector<Digit> out;
    for (const Digit& d : x.digits())
        if (d.pos <= bound) out.push_back(d);
    return Point(Prime(x.prime()), std::move(out));
}

int character(const Point& x, const Point& omega) {
    require_same_prime(x, omega, "character");
    int e = 0;
    for (const Digit& d : x.digits()) e = (e + d.val * omega.digit_at(1 - d.pos)) % x.prime();
    return e;
}

int walsh_dual(std::uint64_t alpha, const Point& omega) {
    return character(h_of_index(Prime(omega.prime()), alpha), omega);
}

int walsh(std::uint64_t alpha, const Point& x) {
    return character(x, h_of_index(Prime(x.prime()), alpha));
}

Point rho(const Point& omega) {
    std::vector<Digit> out;
    for (const Digit& d : omega.digits())
        if (d.pos >= 1) out.push_back(d);
    return Point(Prime(omega.prime()), std::move(out));
}

Point i_map(const Point& omega) {
    if (!omega.in_unit()) throw std::domain_error("i_map: point outside U*");
    return rho(shift(omega, 1));
}

Lemma41Result lemma41_classify(const Point& omega1, const Point& omega2) {
    if (!omega1.in_unit() || !omega2.in_unit())
        throw std::domain_error("lemma41_classify: point outside U*");
    if (omega1.prime() != omega2.prime())
        throw std::invalid_argument("lemma41_classify: mismatched primes");
    // Equal I-images means agreement at every position except possibly 1.
    for (const Digit& d : omega1.digits())
        if (d.pos != 1 && omega2.digit_at(d.pos) != d.val) return {Lemma41Case::none, 0};
    for (const Digit& d : omega2.digits())
        if (d.pos != 1 && omega1.digit_at(d.pos) != d.val) return {Lemma41Case::none, 0};
    const int s1 = omega1.digit_at(1), s2 = omega2.digit_at(1);
    if (s1 == 0 && s2 == 0) return {Lemma41Case::ii, 0};
    if (s1 != 0 && s2 != 0) return {Lemma41Case::iii, 0};
    return {Lemma41Case::i, s1 != 0 ? s1 : s2};
}

Point parse_point(Prime p, std::string_view token) {
    auto dot = token.find('.');
    if (dot == std::string_view::npos)
        throw std::invalid_argument("point token missing '.': '" + std::string(token) + "'");
    if (token.find('.', dot + 1) != std::string_view::npos)
        throw std::invalid_argument("point token has two dots: '" + std::string(token) + "'");
    std::vector<Digit> out;
    // D part: last char is position 0, preceding chars go to -1, -2, ...
    for (std::size_t i = 0; i < dot; ++i) {
        int v = digit_char_value(token[i]);
        if (v < 0) throw std::invalid_argument("bad digit char in point token");
        if (v >= p.value())
            throw std::invalid_argument("digit " + std::to_string(v) + " >= p in point token");
        if (v != 0) out.push_back({int(i) - int(dot) + 1, v});
    }
    // F part: positions 1, 2, ...
    for (std::size_t i = dot + 1; i < token.size(); ++i) {
        int v = digit_char_value(token[i]);
        if (v < 0) throw std::invalid_argument("bad digit char in point token");
        if (v >= p.value())
            throw std::invalid_argument("digit " + std::to_string(v) + " >= p in point token");
        if (v != 0) out.push_back({int(i - dot), v});
    }
    return Point(p, std::move(out));
}

std::string format_point(const Point& x) { return format_point(x, 0); }

std::string format_point(const Point& x, int resolution) {
    int lo = 0, hi = resolution;
    for (const Digit& d : x.digits()) {
        lo = std::min(lo, d.pos);
        hi = std::max(hi, d.pos);
    }
    std::string s;
    for (int pos = lo; pos <= 0; ++pos) s += digit_char(x.digit_at(pos));
    s += '.';
    for (int pos = 1; pos <= hi; ++pos) s += digit_char(x.digit_at(pos));
    return s;
}

} // namespace vilenkin
