#include "vilenkin/scaling_sets.hpp"

#include "vilenkin/wavelet_checker.hpp"

#include <algorithm>
#include <stdexcept>

namespace vilenkin {

namespace {

std::string cyl_str(const Cylinder& c) {
    return format_point(c.anchor, std::max(0, c.resolution)) + "  (lambda* [" +
           rational_str(c.lambda_lo()) + ", " + rational_str(c.lambda_hi()) + "))";
}

std::string set_str(const CylinderSet& s, std::size_t max_cells = 4) {
    if (s.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < s.cylinders().size() && i < max_cells; ++i) {
        if (i) out += ", ";
        out += cyl_str(s.cylinders()[i]);
    }
    if (s.cylinders().size() > max_cells) out += ", ...";
    return out;
}

struct FoldedStream {
    std::vector<Cylinder> pieces;
    int finest = 1;
    Rational tail_bound = 0;
};

FoldedStream refined_pieces(const PieceStream& s, int depth) {
    FoldedStream out;
    PieceStream::Enumeration e = s.enumerate(depth);
    out.tail_bound = e.tail_bound;
    for (const CylinderSet& cs : e.pieces)
        for (const Cylinder& c : cs.refined(0)) {
            out.finest = std::max(out.finest, c.resolution);
            out.pieces.push_back(c);
        }
    return out;
}

EtaFunction eta_impl(const PieceStream& s, int resolution, int depth) {
    const Prime p{s.prime()};
    FoldedStream f = refined_pieces(s, depth);
    int K = resolution > 0 ? resolution : std::max(1, std::min(f.finest, resolution_cap(p.value())));
    EtaFunction table = fold_rho(p, f.pieces, K);
    mark_stream_tail(table, s, depth, f.tail_bound);
    return table;
}

bool has_theta_cylinder(const CylinderSet& s) {
    for (const Cylinder& c : s.cylinders())
        if (c.contains_zero()) return true;
    return false;
}

// Exact step-function comparison of sum_sigma etaK(sigma, t) against
// etaK1(t) + shiftplus, where etaK1 is the table one level coarser. Cells
// touched by unresolved data are skipped and certified.
Verdict eta_identity(const EtaFunction& etaK, const EtaFunction& etaK1, std::int64_t shiftplus,
                     const Rational& uncertainty, int depth) {
    const int p = etaK.prime;
    const std::size_t coarse = etaK1.cells();
    bool skipped = false;
    for (std::size_t t = 0; t < coarse; ++t) {
        bool exact = etaK1.is_resolved(t);
        std::int64_t lhs = 0;
        for (int sigma = 0; sigma < p; ++sigma) {
            std::size_t cell = std::size_t(sigma) * coarse + t;
            exact = exact && etaK.is_resolved(cell);
            lhs += etaK.counts[cell];
        }
        if (!exact) {
            skipped = true;
            continue;
        }
        std::int64_t rhs = etaK1.counts[t] + shiftplus;
        if (lhs != rhs)
            return Verdict::fail({"eta identity fails",
                                  {"cell index " + std::to_string(t) + " at resolution " +
                                       std::to_string(etaK1.resolution),
                                   "lhs " + std::to_string(lhs) + " != rhs " + std::to_string(rhs)}});
    }
    if (skipped || uncertainty != 0) {
        Verdict v = Verdict::pass_certified(uncertainty);
        v.depth = depth;
        return v;
    }
    return Verdict::pass();
}

// Condition (iii): S absorbs every B^{-k} orbit, i.e. S holds a
// neighbourhood of theta up to null sets. For streams this is decided from
// deep-annulus coverage, which is exact for theta-anchored tail families.
Verdict condition_iii(const PieceStream& s, int depth) {
    if (has_theta_cylinder(s.finite_part())) return Verdict::pass();
    if (s.is_finite())
        return Verdict::fail({"no neighbourhood of theta inside S",
                              {"no cell of the canonical form has an all-zero anchor"}});
    if (s.is_generated() || !s.theta_anchored()) return Verdict::undecided(depth);
    // Deep annuli must be covered; containment of a deep enough theta cell
    // is exactly that.
    const Prime p{s.prime()};
    int probe = 1;
    for (const TailFamily& t : s.tails()) probe = std::max(probe, t.start * t.ratio + 8);
    if (auto sub = stream_subset(PieceStream::finite(CylinderSet::unit(p, -probe)), s)) {
        if (*sub) return Verdict::pass();
        return Verdict::fail({"no neighbourhood of theta inside S (deep annuli not covered)",
                              {"U*_" + std::to_string(probe) + " is not covered by the stream"}});
    }
    return Verdict::undecided(depth);
}

// Condition (ii): S inside BS, i.e. B^{-1} S inside S.
Verdict condition_ii(const PieceStream& s, int depth) {
    if (s.is_finite()) {
        CylinderSet excess = set_subtract(s.finite_part(), s.finite_part().dilate(1));
        if (excess.empty()) return Verdict::pass();
        return Verdict::fail(
            {"S is not contained in BS", {"excess region " + set_str(excess)}});
    }
    if (s.is_generated() || !s.theta_anchored()) {
        // Prefix check only; never an unproven pass.
        PieceStream::Enumeration e = s.enumerate(depth);
        CylinderSet un(Prime(s.prime()));
        for (const CylinderSet& piece : e.pieces) un = set_union(un, piece);
        CylinderSet excess = set_subtract(un.dilate(-1), un);
        if (!excess.empty() && e.tail_bound == 0)
            return Verdict::fail({"S is not contained in BS", {"excess region " + set_str(excess)}});
        return Verdict::undecided(depth);
    }
    if (auto sub = stream_subset(s.dilate(-1), s)) {
        if (*sub) return Verdict::pass();
        return Verdict::fail({"S is not contained in BS",
                              {"B^{-1} S has content outside S (annulus analysis)"}});
    }
    return Verdict::undecided(depth);
}

Verdict condition_i(const PieceStream& s) {
    const Rational target(1, s.prime() - 1);
    Rational m = s.total_measure();
    Verdict v = m == target
                    ? Verdict::pass()
                    : Verdict::fail({"measure is not 1/(p-1)",
                                     {"measure " + rational_str(m) + " vs required " + rational_str(target)}});
    v.note("measure", rational_str(m));
    v.note("required", rational_str(target));
    return v;
}

Verdict condition_iv(const PieceStream& s, int depth) {
    const Prime p{s.prime()};
    FoldedStream f = refined_pieces(s, depth);
    int cap = resolution_cap(p.value());
    int kw = std::max(2, std::min(f.finest + 1, cap));
    EtaFunction etaK = fold_rho(p, f.pieces, kw);
    EtaFunction etaK1 = fold_rho(p, f.pieces, kw - 1);
    mark_stream_tail(etaK, s, depth, f.tail_bound);
    mark_stream_tail(etaK1, s, depth, f.tail_bound);
    return eta_identity(etaK, etaK1, 1, f.tail_bound, depth);
}

Verdict gss_core(const PieceStream& s, int depth) {
    return combine({{"(i) measure", condition_i(s)},
                    {"(ii) S inside BS", condition_ii(s, depth)},
                    {"(iii) B^{-k} limit", condition_iii(s, depth)},
                    {"(iv) eta identity", condition_iv(s, depth)}});
}

} // namespace

EtaFunction eta(const CylinderSet& s, int resolution) {
    return eta_impl(PieceStream::finite(s), resolution, 0);
}

EtaFunction eta(const PieceStream& s, int resolution, int depth) {
    return eta_impl(s, resolution, depth);
}

Verdict gss_check(const CylinderSet& s) { return gss_core(PieceStream::finite(s), 0); }

Verdict gss_check(const PieceStream& s, int depth) { return gss_core(s, depth); }

WaveletFromGss wavelet_from_gss(const CylinderSet& s) {
    CylinderSet omega = set_subtract(s.dilate(1), s);
    return {omega, check_wavelet_set(omega)};
}

GssFromWavelet gss_from_wavelet(const CylinderSet& omega, int depth) {
    const Prime p{omega.prime()};
    TailFamily family(1, theta(p), omega, 1);
    PieceStream stream = PieceStream::with_tails(CylinderSet(p), {family});

    std::vector<std::pair<std::string, Verdict>> parts;
    parts.emplace_back("piece disjointness", family.validate_self_disjoint());
    const Rational target(1, p.value() - 1);
    Rational total = stream.total_measure();
    Verdict tv = total == target
                     ? Verdict::pass()
                     : Verdict::fail({"stream total is not 1/(p-1); the input cannot be a wavelet set",
                                      {"total " + rational_str(total) + " vs " + rational_str(target)}});
    tv.note("total_measure", rational_str(total));
    parts.emplace_back("total measure", std::move(tv));
    Verdict flags = combine(std::move(parts));
    flags.note("enumerated",
               rational_str(total - stream.enumerate(depth).tail_bound) + " at depth " +
                   std::to_string(depth));
    flags.note("tail_bound", rational_str(stream.enumerate(depth).tail_bound));
    return {std::move(stream), std::move(flags)};
}

Verdict closure_verify(const CylinderSet& candidate, const CylinderSet& omega) {
    CylinderSet folded = set_union(omega, candidate).dilate(-1);
    std::vector<std::pair<std::string, Verdict>> parts;
    if (folded == candidate)
        parts.emplace_back("B^{-1}(Omega union S) = S", Verdict::pass());
    else {
        CylinderSet extra = set_subtract(folded, candidate);
        CylinderSet missing = set_subtract(candidate, folded);
        Witness w{"B^{-1}(Omega union S) differs from S", {}};
        if (!extra.empty()) w.evidence.push_back("extra region " + set_str(extra));
        if (!missing.empty()) w.evidence.push_back("missing region " + set_str(missing));
        parts.emplace_back("B^{-1}(Omega union S) = S", Verdict::fail(std::move(w)));
    }
    CylinderSet common = set_intersect(omega, candidate);
    parts.emplace_back("Omega cap S empty",
                       common.empty() ? Verdict::pass()
                                      : Verdict::fail({"Omega meets S", {"common region " + set_str(common)}}));
    return combine(std::move(parts));
}

Verdict consistency_check(const CylinderSet& s, int resolution) {
    return consistency_check(PieceStream::finite(s), resolution, 0);
}

Verdict consistency_check(const PieceStream& s, int resolution, int depth) {
    const Prime p{s.prime()};
    PieceStream bs = s.dilate(1);
    FoldedStream fs = refined_pieces(s, depth);
    FoldedStream fbs = refined_pieces(bs, depth);
    int finest = std::max(fs.finest, fbs.finest);
    int K = resolution > 0 ? resolution : std::max(1, std::min(finest, resolution_cap(p.value())));
    EtaFunction es = fold_rho(p, fs.pieces, K);
    EtaFunction ebs = fold_rho(p, fbs.pieces, K);
    mark_stream_tail(es, s, depth, fs.tail_bound);
    mark_stream_tail(ebs, bs, depth, fbs.tail_bound);

    bool skipped = false;
    for (std::size_t cell = 0; cell < es.cells(); ++cell) {
        if (!es.is_resolved(cell) || !ebs.is_resolved(cell)) {
            skipped = true;
            continue;
        }
        if (1 + es.counts[cell] != ebs.counts[cell])
            return Verdict::fail(
                {"consistency equation 1 + eta_S = eta_BS fails",
                 {"cell index " + std::to_string(cell) + " at resolution " + std::to_string(K),
                  "1 + " + std::to_string(es.counts[cell]) + " != " + std::to_string(ebs.counts[cell])}});
    }
    Rational unc = fs.tail_bound + fbs.tail_bound;
    if (skipped || unc != 0) {
        Verdict v = Verdict::pass_certified(unc);
        v.depth = depth;
        return v;
    }
    return Verdict::pass();
}

Verdict theorem47_check(const CylinderSet& s) { return theorem47_check(PieceStream::finite(s), 0); }

Verdict theorem47_check(const PieceStream& s, int depth) {
    std::vector<std::pair<std::string, Verdict>> hyp;
    hyp.emplace_back("(a) neighbourhood of theta", condition_iii(s, depth));
    Verdict b = condition_ii(s, depth);
    if (b.status == Status::pass && s.total_measure() != 0)
        b.note("reading", "B^{-1}S = S (strict invariance) necessarily fails for sets of finite "
                          "positive measure; using B^{-1}S inside S");
    hyp.emplace_back("(b) invariant under B^{-1}", std::move(b));
    hyp.emplace_back("(c) consistency equation", consistency_check(s, 0, depth));
    Verdict hypotheses = combine(std::move(hyp));

    Verdict conclusion;
    if (s.is_finite()) {
        CylinderSet omega = set_subtract(s.finite_part().dilate(1), s.finite_part());
        conclusion = check_wavelet_set(omega);
        conclusion.note("omega", set_str(omega));
    } else if (!s.is_generated() && s.finite_part().empty() && s.tails().size() == 1 &&
               s.tails().front().ratio == 1 && s.tails().front().anchor.is_zero() &&
               s.tails().front().validate_self_disjoint().status == Status::pass) {
        // BS \ S collapses to the single first dilate of the body.
        const TailFamily& t = s.tails().front();
        CylinderSet omega = t.body.dilate(-(t.start - 1));
        conclusion = check_wavelet_set(omega);
        conclusion.note("omega", set_str(omega));
    } else {
        conclusion = Verdict::undecided(depth);
        conclusion.note("omega", "BS \\ S not computed for this stream shape");
    }

    Verdict out = combine({{"hypotheses", hypotheses}, {"conclusion: BS \\ S is a wavelet set", conclusion}});
    if (hypotheses.ok() && conclusion.status == Status::fail) {
        out.status = Status::fail;
        out.witness = Witness{"internal-consistency alarm: hypotheses hold but the conclusion fails",
                              conclusion.witness ? conclusion.witness->evidence : std::vector<std::string>{}};
    }
    return out;
}

CylinderSet i_preimage(const CylinderSet& t) {
    const Prime p{t.prime()};
    if (!CylinderSet::unit(p).contains(t))
        throw std::domain_error("i_preimage: set not contained in U*");
    CylinderSet shrunk = t.dilate(-1);
    CylinderSet out = shrunk;
    for (int sigma = 1; sigma < p.value(); ++sigma)
        out = set_union(out, shrunk.translate(dot_sigma(p, sigma)));
    return out;
}

UpsilonResult upsilon_construct(const CylinderSet& u, int n) {
    const Prime p{u.prime()};
    if (n < 0) throw std::invalid_argument("upsilon_construct: negative n");
    CylinderSet unit = CylinderSet::unit(p);
    if (!unit.contains(u)) throw std::domain_error("upsilon_construct: input not contained in U*");

    // Hypothesis: U* \ u = union_sigma rho(u + 0.sigma), exactly.
    CylinderSet expected = set_subtract(unit, u);
    CylinderSet actual(p);
    for (int sigma = 1; sigma < p.value(); ++sigma) {
        CylinderSet translated = u.translate(dot_sigma(p, sigma));
        // rho is the identity here: translating by 0.sigma stays inside U*.
        actual = set_union(actual, translated);
    }
    UpsilonResult result;
    if (actual == expected) {
        result.hypothesis = Verdict::pass();
    } else {
        CylinderSet extra = set_subtract(actual, expected);
        CylinderSet missing = set_subtract(expected, actual);
        Witness w{"complement equation fails: union_sigma rho(U + 0.sigma) != U* \\ U", {}};
        if (!extra.empty()) w.evidence.push_back("excess region " + set_str(extra));
        if (!missing.empty()) w.evidence.push_back("missing region " + set_str(missing));
        result.hypothesis = Verdict::fail(std::move(w));
    }
    std::vector<std::pair<std::string, Verdict>> parts;
    parts.emplace_back("hypothesis", result.hypothesis);
    if (result.hypothesis.status != Status::pass) {
        result.overall = combine(std::move(parts));
        return result;
    }

    CylinderSet level = u;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) level = set_intersect(u, i_preimage(level));
        UpsilonLevel out;
        out.set = level;
        out.measure = level.measure();
        out.measure_ok = out.measure == rational_pow(p.value(), -(k + 1));
        out.congruence = check_translation_congruence(level.dilate(k + 1));
        Verdict combined = out.congruence;
        if (!out.measure_ok)
            combined = Verdict::fail({"measure of Y_" + std::to_string(k) + " is not p^{-(k+1)}",
                                      {"measure " + rational_str(out.measure)}});
        parts.emplace_back("Y_" + std::to_string(k), std::move(combined));
        result.levels.push_back(std::move(out));
    }
    result.overall = combine(std::move(parts));
    return result;
}

} // namespace vilenkin
