#include "vilenkin/mask.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vilenkin {

namespace {

std::size_t pow_size(int p, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= std::size_t(p);
    return r;
}

// Digit reversal in base p over n digits.
std::size_t digit_reverse(std::size_t x, int p, int n) {
    std::size_t out = 0;
    for (int i = 0; i < n; ++i) {
        out = out * std::size_t(p) + x % std::size_t(p);
        x /= std::size_t(p);
    }
    return out;
}

// Tensor-product character transform: out[j] = sum_in vec[in] *
// zeta^{sign * sum_i in_(i) j_(i)}. No twiddle factors appear because the
// pairing has no cross terms; each stage is an independent p-point DFT.
void transform_core(std::vector<Cyclotomic>& v, int p, int n, int sign, ExecMode mode) {
    std::vector<Cyclotomic> zpow;
    zpow.reserve(std::size_t(p));
    for (int k = 0; k < p; ++k) zpow.push_back(Cyclotomic::zeta_pow(Prime(p), sign * k));

    const std::size_t total = v.size();
    std::vector<Cyclotomic> scratch = v;
    for (int stage = 0; stage < n; ++stage) {
        const std::size_t stride = pow_size(p, stage);
        const std::size_t groups = total / std::size_t(p);
        auto group_op = [&](std::size_t g) {
            // Group g covers entries base + d*stride, d = 0..p-1.
            std::size_t block = g / stride, off = g % stride;
            std::size_t base = block * stride * std::size_t(p) + off;
            for (int e = 0; e < p; ++e) {
                Cyclotomic sum = Cyclotomic::zero(Prime(p));
                for (int d = 0; d < p; ++d)
                    sum += v[base + std::size_t(d) * stride] * zpow[std::size_t((d * e) % p)];
                scratch[base + std::size_t(e) * stride] = std::move(sum);
            }
        };
#ifdef _OPENMP
        if (mode == ExecMode::parallel && groups >= 256) {
#pragma omp parallel for schedule(static)
            for (std::size_t g = 0; g < groups; ++g) group_op(g);
        } else
#endif
        {
            for (std::size_t g = 0; g < groups; ++g) group_op(g);
        }
        v.swap(scratch);
    }
}

void apply_digit_reverse(std::vector<Cyclotomic>& v, int p, int n) {
    std::vector<Cyclotomic> out(v.size(), Cyclotomic::zero(Prime(p)));
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[digit_reverse(c, p, n)];
    v.swap(out);
}

} // namespace

Mask::Mask(Prime prime, int n_, std::vector<Cyclotomic> coeffs_)
    : p(prime.value()), n(n_), coeffs(std::move(coeffs_)) {
    if (n < 1) throw std::invalid_argument("mask: n must be >= 1");
    if (coeffs.size() != pow_size(p, n)) throw std::invalid_argument("mask: expected p^n coefficients");
    for (const Cyclotomic& c : coeffs)
        if (c.prime() != p) throw std::invalid_argument("mask: coefficient with mismatched prime");
}

Cyclotomic Mask::coefficient_sum() const {
    Cyclotomic s = Cyclotomic::zero(Prime(p));
    for (const Cyclotomic& c : coeffs) s += c;
    return s;
}

std::size_t StepTable::cell_of(const Point& x) const {
    std::size_t idx = 0;
    for (int pos = 1 - region; pos <= resolution; ++pos) {
        int d = x.digit_at(pos);
        idx = idx * std::size_t(p) + std::size_t(d);
    }
    if (!x.is_zero() && x.min_pos() < 1 - region)
        throw std::domain_error("cell_of: point outside the table region");
    return idx;
}

StepTable mask_values(const Mask& m, ExecMode mode) {
    // v[c] = sum_alpha a_alpha zeta^{-<alpha, c>}, <alpha, c> pairing the
    // i-th base-p digit of alpha with fractional digit omega_{i+1}.
    StepTable t;
    t.p = m.p;
    t.region = 0;
    t.resolution = m.n;
    t.values = m.coeffs;
    transform_core(t.values, m.p, m.n, -1, mode);
    apply_digit_reverse(t.values, m.p, m.n);
    return t;
}

StepTable mask_values_naive(const Mask& m) {
    StepTable t;
    t.p = m.p;
    t.region = 0;
    t.resolution = m.n;
    const std::size_t total = m.coeffs.size();
    t.values.assign(total, Cyclotomic::zero(Prime(m.p)));
    for (std::size_t c = 0; c < total; ++c) {
        Cyclotomic sum = Cyclotomic::zero(Prime(m.p));
        for (std::size_t alpha = 0; alpha < total; ++alpha) {
            // <alpha, c>: alpha digit i (least significant first) pairs with
            // omega_{i+1}, the (i+1)-th most significant digit of c.
            std::size_t a = alpha, cc = c;
            int e = 0;
            std::vector<int> cdig(std::size_t(m.n));
            for (int i = m.n - 1; i >= 0; --i) {
                cdig[std::size_t(i)] = int(cc % std::size_t(m.p));
                cc /= std::size_t(m.p);
            }
            for (int i = 0; i < m.n; ++i) {
                e += int(a % std::size_t(m.p)) * cdig[std::size_t(i)];
                a /= std::size_t(m.p);
            }
            sum += m.coeffs[alpha] * Cyclotomic::zeta_pow(Prime(m.p), -e);
        }
        t.values[c] = std::move(sum);
    }
    return t;
}

std::vector<Cyclotomic> mask_coefficients_from_values(Prime p, int n,
                                                      const std::vector<Cyclotomic>& values,
                                                      ExecMode mode) {
    if (values.size() != pow_size(p.value(), n))
        throw std::invalid_argument("expected p^n cell values");
    std::vector<Cyclotomic> a = values;
    apply_digit_reverse(a, p.value(), n);
    transform_core(a, p.value(), n, +1, mode);
    Rational scale(1, Integer(values.size()));
    for (Cyclotomic& c : a) c = c.scaled(scale);
    return a;
}

MaskHypotheses check_mask_hypotheses(const Mask& m) {
    const Prime p{m.p};
    MaskHypotheses out{Verdict::pass(), Verdict::pass(), Verdict::pass()};

    Cyclotomic sum = m.coefficient_sum();
    if (sum == Cyclotomic::one(p)) {
        out.theta_value = Verdict::pass();
    } else {
        out.theta_value = Verdict::fail(
            {"m(theta) != 1", {"coefficient sum = " + sum.str()}});
    }
    out.theta_value.note("coefficient_sum", sum.str());

    StepTable v = mask_values(m);
    const std::size_t groups = v.cells() / std::size_t(m.p);
    Verdict qmf = Verdict::pass();
    for (std::size_t g = 0; g < groups; ++g) {
        Cyclotomic total = Cyclotomic::zero(p);
        for (int l = 0; l < m.p; ++l) total += v.values[std::size_t(l) * groups + g].norm_sq();
        if (!(total == Cyclotomic::one(p))) {
            std::vector<std::string> ev;
            ev.push_back("sibling group with digits omega_2..omega_n of cell index " + std::to_string(g));
            for (int l = 0; l < m.p; ++l)
                ev.push_back("|m|^2 on cell " + std::to_string(std::size_t(l) * groups + g) + " = " +
                             v.values[std::size_t(l) * groups + g].norm_sq().str());
            ev.push_back("sum = " + total.str());
            qmf = Verdict::fail({"QMF condition fails", std::move(ev)});
            break;
        }
    }
    out.qmf = std::move(qmf);
    out.overall = combine({{"m(theta) = 1", out.theta_value}, {"QMF", out.qmf}});
    return out;
}

BlockedSetResult blocked_set_find(const Mask& m) {
    const Prime p{m.p};
    BlockedSetResult out;
    out.decisions.push_back(
        "blocked-set transition read as the p-branch inverse dilation B^{-1}(omega_[l] + omega); "
        "the printed exponent -l is treated as a typo");

    StepTable v = mask_values(m);
    const std::size_t candidates = pow_size(m.p, m.n - 1);  // resolution n-1 cells
    std::vector<char> in_set(candidates, 1);
    in_set[0] = 0;  // the theta cell U*_{n-1,0} is never blocked

    // Greatest fixed point: delete any cell s having a branch l whose image
    // cell carries a nonzero mask value and whose parent left the set.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < candidates; ++s) {
            if (!in_set[s]) continue;
            for (int l = 0; l < m.p; ++l) {
                std::size_t image = std::size_t(l) * candidates + s;  // resolution-n cell (l, s)
                std::size_t parent =
                    std::size_t(l) * (candidates / std::size_t(m.p)) + s / std::size_t(m.p);
                if (m.n == 1) parent = 0;  // single candidate cell, no parents to track
                bool zero = v.values[image].is_zero();
                bool parent_in = m.n >= 2 && parent != 0 && in_set[parent];
                if (!zero && !parent_in) {
                    in_set[s] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }

    std::vector<std::size_t> cells;
    for (std::size_t s = 0; s < candidates; ++s)
        if (in_set[s]) cells.push_back(s);
    if (cells.empty()) {
        out.blocked = std::nullopt;
        out.mra = Verdict::pass();
        out.mra.note("mra", "yes (no blocked set)");
    } else {
        out.blocked = cells;
        std::vector<std::string> ev;
        for (std::size_t s : cells)
            ev.push_back("cell U*_{" + std::to_string(m.n - 1) + "," + std::to_string(s) + "}");
        out.mra = Verdict::fail({"mask has a blocked set; phi does not generate an MRA", std::move(ev)});
        out.mra.note("mra", "no (blocked set found)");
    }
    return out;
}

Verdict validate_blocked_set(const Mask& m, const std::vector<std::size_t>& cells) {
    const std::size_t candidates = pow_size(m.p, m.n - 1);
    std::vector<char> in_set(candidates, 0);
    for (std::size_t s : cells) {
        if (s >= candidates)
            return Verdict::fail({"cell index out of range", {std::to_string(s)}});
        in_set[s] = 1;
    }
    if (cells.empty()) return Verdict::fail({"blocked set must be nonempty", {}});
    if (in_set[0]) return Verdict::fail({"blocked set contains the theta cell U*_{n-1,0}", {}});
    StepTable v = mask_values(m);
    for (std::size_t s = 0; s < candidates; ++s) {
        if (!in_set[s]) continue;
        for (int l = 0; l < m.p; ++l) {
            std::size_t image = std::size_t(l) * candidates + s;
            std::size_t parent = std::size_t(l) * (candidates / std::size_t(m.p)) + s / std::size_t(m.p);
            bool zero = v.values[image].is_zero();
            bool parent_in = m.n >= 2 && parent != 0 && in_set[parent];
            if (!zero && !parent_in)
                return Verdict::fail(
                    {"transition leaves the blocked set through a nonzero mask value",
                     {"cell " + std::to_string(s) + ", branch l=" + std::to_string(l),
                      "image cell " + std::to_string(image) + " has m = " + v.values[image].str()}});
        }
    }
    return Verdict::pass();
}

StepTable phi_hat(const Mask& m, int region, int resolution, ExecMode mode) {
    const Prime p{m.p};
    if (!(m.coefficient_sum() == Cyclotomic::one(p)))
        throw std::domain_error("phi_hat: coefficient sum must be 1 (the infinite product does not stabilize)");
    if (region < 0) throw std::invalid_argument("phi_hat: region must be >= 0");
    if (resolution < m.n - 1)
        throw std::invalid_argument("phi_hat: resolution below n-1 cannot represent phi-hat");

    StepTable mv = mask_values(m);
    StepTable t;
    t.p = m.p;
    t.region = region;
    t.resolution = m.n - 1;
    const int digits = region + m.n - 1;  // positions 1-R .. n-1
    t.values.assign(pow_size(m.p, digits), Cyclotomic::one(p));

    auto cell_value = [&](std::size_t c) {
        // Base-p digits of c, most significant first = positions 1-R..n-1.
        std::vector<int> dig(std::size_t(digits));
        std::size_t cc = c;
        for (int i = digits - 1; i >= 0; --i) {
            dig[std::size_t(i)] = int(cc % std::size_t(m.p));
            cc /= std::size_t(m.p);
        }
        auto digit_at = [&](int pos) {  // pos in 1-R .. n-1
            int idx = pos - (1 - region);
            return (idx >= 0 && idx < digits) ? dig[std::size_t(idx)] : 0;
        };
        Cyclotomic prod = Cyclotomic::one(p);
        for (int j = 1; j <= m.n + region - 1; ++j) {
            // Factor j sees digits at positions (1-j)..(n-j) of omega as the
            // fractional digits 1..n of B^{-j} omega.
            std::size_t idx = 0;
            for (int i = 1; i <= m.n; ++i) idx = idx * std::size_t(m.p) + std::size_t(digit_at(i - j));
            prod *= mv.values[idx];
            if (prod.is_zero()) break;
        }
        return prod;
    };

#ifdef _OPENMP
    if (mode == ExecMode::parallel && t.values.size() >= 256) {
#pragma omp parallel for schedule(static)
        for (std::size_t c = 0; c < t.values.size(); ++c) t.values[c] = cell_value(c);
    } else
#endif
    {
        (void)mode;
        for (std::size_t c = 0; c < t.values.size(); ++c) t.values[c] = cell_value(c);
    }

    // Refine to the requested resolution (constant on children).
    while (t.resolution < resolution) {
        std::vector<Cyclotomic> finer;
        finer.reserve(t.values.size() * std::size_t(m.p));
        for (const Cyclotomic& val : t.values)
            for (int d = 0; d < m.p; ++d) finer.push_back(val);
        t.values.swap(finer);
        ++t.resolution;
    }
    return t;
}

Cyclotomic phi_hat_at(const Mask& m, const Point& omega) {
    const Prime p{m.p};
    if (!(m.coefficient_sum() == Cyclotomic::one(p)))
        throw std::domain_error("phi_hat: coefficient sum must be 1");
    StepTable mv = mask_values(m);
    Cyclotomic prod = Cyclotomic::one(p);
    if (omega.is_zero()) return prod;
    int jmax = m.n - omega.min_pos();
    for (int j = 1; j <= jmax; ++j) {
        std::size_t idx = 0;
        for (int i = 1; i <= m.n; ++i) idx = idx * std::size_t(m.p) + std::size_t(omega.digit_at(i - j));
        prod *= mv.values[idx];
        if (prod.is_zero()) break;
    }
    return prod;
}

ScalingCriteria scaling_criteria_check(const Mask& m, int region, std::uint64_t translate_bound) {
    const Prime p{m.p};
    if (region < 1) throw std::invalid_argument("scaling_criteria_check: region must be >= 1");
    ScalingCriteria out;

    StepTable mv = mask_values(m);
    // Over a resolution-n cell of B^{R-1}U* the digit string of B omega at
    // positions 1-R..n-1 is the cell's own digit string, so the region-R
    // table of resolution n-1 reads phi(B omega) at the same index.
    StepTable big = phi_hat(m, region, m.n - 1, ExecMode::parallel);
    StepTable small = phi_hat(m, region - 1, m.n, ExecMode::parallel);

    Verdict refinement = Verdict::pass();
    const std::size_t mask_cells = mv.cells();
    for (std::size_t c = 0; c < small.cells(); ++c) {
        const Cyclotomic& lhs = big.values[c];
        Cyclotomic rhs = mv.values[c % mask_cells] * small.values[c];
        if (!(lhs == rhs)) {
            refinement = Verdict::fail(
                {"refinement identity phi(B omega) = m(omega) phi(omega) fails",
                 {"cell " + std::to_string(c), "lhs " + lhs.str(), "rhs " + rhs.str()}});
            break;
        }
    }
    out.refinement_identity = std::move(refinement);

    // Modified Strang-Fix: phi-hat vanishes at every nonzero lattice point
    // below p^R.
    std::uint64_t limit = 1;
    for (int i = 0; i < region; ++i) limit *= std::uint64_t(m.p);
    if (translate_bound != 0) limit = std::min(limit, translate_bound);
    Verdict strang = Verdict::pass();
    for (std::uint64_t alpha = 1; alpha < limit; ++alpha) {
        Cyclotomic val = phi_hat_at(m, h_of_index(p, alpha));
        if (!val.is_zero()) {
            strang = Verdict::fail({"modified Strang-Fix condition fails",
                                    {"phi-hat(omega_[" + std::to_string(alpha) + "]) = " + val.str()}});
            break;
        }
    }
    out.strang_fix = std::move(strang);

    // (1) partial sums over translates inside the region, per fractional
    // resolution-(n-1) cell; mass outside B^R U* is unverified.
    const StepTable& base = big;
    const std::size_t frac_cells = pow_size(m.p, m.n - 1);
    const std::size_t translates = base.cells() / frac_cells;
    Verdict partial = Verdict::pass();
    bool qmf_holds = check_mask_hypotheses(m).overall.ok();
    for (std::size_t t = 0; t < frac_cells; ++t) {
        Cyclotomic sum = Cyclotomic::zero(p);
        for (std::size_t a = 0; a < translates; ++a) sum += base.values[a * frac_cells + t].norm_sq();
        if (!sum.is_real()) throw std::logic_error("partial sum should be real");
        Cyclotomic gap = Cyclotomic::one(p) - sum;
        if (qmf_holds && gap.real_sign() < 0) {
            partial = Verdict::fail({"partial translate sum exceeds 1 despite QMF",
                                     {"fractional cell " + std::to_string(t), "sum " + sum.str()}});
            break;
        }
        if (t == 0) partial.note("cell0_partial_sum", sum.str());
    }
    partial.note("caveat", "translate mass outside B^" + std::to_string(region) + "U* is unverified");
    out.partial_sums = std::move(partial);

    // (2) the theta cell carries exactly 1; along B^{-j} the values reach 1
    // exactly after n - min_pos steps (sampled).
    Verdict limitv = Verdict::pass();
    if (!(base.values[0] == Cyclotomic::one(p))) {
        limitv = Verdict::fail({"phi-hat is not 1 on the theta cell", {base.values[0].str()}});
    } else {
        Point sample = h_of_index(p, 1);
        for (int extra = 0; extra < 2 && limitv.ok(); ++extra) {
            Point x = extra == 0 ? sample : add(sample, dot_sigma(p, 1));
            int stabilize = m.n - x.min_pos();
            Cyclotomic tail_value = phi_hat_at(m, shift(x, -stabilize));
            if (!(tail_value == Cyclotomic::one(p)))
                limitv = Verdict::fail({"phi-hat along B^{-j} omega does not stabilize at 1",
                                        {"sample " + format_point(x),
                                         "value " + tail_value.str() + " at j = " + std::to_string(stabilize)}});
        }
    }
    out.limit_at_theta = std::move(limitv);

    out.overall = combine({{"(3) refinement identity", out.refinement_identity},
                           {"Strang-Fix", out.strang_fix},
                           {"(1) partial translate sums", out.partial_sums},
                           {"(2) limit at theta", out.limit_at_theta}});
    return out;
}

} // namespace vilenkin
