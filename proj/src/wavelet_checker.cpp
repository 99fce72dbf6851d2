#include "vilenkin/wavelet_checker.hpp"

#include "vilenkin/fold.hpp"

#include <algorithm>
#include <stdexcept>

namespace vilenkin {

namespace {

std::string cyl_str(const Cylinder& c) {
    return format_point(c.anchor, std::max(0, c.resolution)) + "  (lambda* [" +
           rational_str(c.lambda_lo()) + ", " + rational_str(c.lambda_hi()) + "))";
}

Cylinder rho_image(const Cylinder& c) {
    return Cylinder(rho(c.anchor), c.resolution);
}

struct TaggedCell {
    Cylinder cell;
    std::size_t set_index;
};

// Shared congruence core: pieces are the enumerated cylinder sets of one
// stream; tail_bound = 0 means the description is complete.
Verdict congruence_core(Prime p, const std::vector<CylinderSet>& pieces, const Rational& tail_bound,
                        int depth) {
    DisjointAccumulator acc(p);
    std::vector<Cylinder> sources;
    Rational covered = 0;
    for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
        for (const Cylinder& c : pieces[pi].refined(0)) {
            Cylinder img = rho_image(c);
            if (!acc.insert(img)) {
                const Cylinder& prev = sources[acc.last_overlap_index()];
                Cylinder prev_img = rho_image(prev);
                const Cylinder& common =
                    prev_img.resolution >= img.resolution ? prev_img : img;
                return Verdict::fail({"rho-images overlap",
                                      {"source cell " + cyl_str(prev), "source cell " + cyl_str(c),
                                       "common rho-image cell " + cyl_str(common)}})
                    .note("covered", rational_str(covered));
            }
            sources.push_back(c);
            covered += img.measure();
        }
    }
    Rational deficit = Rational(1) - covered;
    Verdict v;
    if (deficit == 0) {
        v = Verdict::pass();
    } else if (deficit > tail_bound) {
        CylinderSet uncovered = set_subtract(CylinderSet::unit(p), acc.result());
        Witness w{"rho-images do not cover U*", {}};
        if (!uncovered.empty())
            w.evidence.push_back("uncovered cell " + cyl_str(uncovered.cylinders().front()));
        w.evidence.push_back("deficit " + rational_str(deficit) + " exceeds tail bound " +
                             rational_str(tail_bound));
        v = Verdict::fail(std::move(w));
    } else {
        v = Verdict::pass_certified(deficit);
        v.depth = depth;
    }
    v.note("covered", rational_str(covered));
    v.note("deficit", rational_str(deficit));
    if (tail_bound != 0) v.note("tail_bound", rational_str(tail_bound));
    return v;
}

std::string annulus_str(int k) { return "D_" + std::to_string(k); }

// Dilation tiling over a list of streams. Pieces project annulus by annulus
// into D_0; theta components and dilation-recurrent tails fail outright.
Verdict tiling_core(Prime p, const std::vector<PieceStream>& sets, int depth) {
    const Rational d0_measure = Rational(p.value() - 1, p.value());
    DisjointAccumulator acc(p);
    std::vector<TaggedCell> tagged;
    std::vector<int> annuli;
    Rational covered = 0;
    Rational tail_projected = 0;
    bool any_tail = false;
    bool generated_tail = false;

    for (std::size_t si = 0; si < sets.size(); ++si) {
        const PieceStream& s = sets[si];
        if (s.prime() != p.value()) throw std::invalid_argument("tiling: mismatched primes");
        // A theta-anchored tail family recurs under dilation: B^{-r} maps one
        // deep piece onto another, so the dilates of the set overlap.
        for (const TailFamily& t : s.tails()) {
            if (t.body.empty()) continue;
            if (t.anchor.is_zero())
                return Verdict::fail(
                    {"deep tail pieces are B-dilates of each other; dilates of the set overlap",
                     {"set #" + std::to_string(si),
                      "pieces j and j+1 of the theta-anchored tail family differ by B^{-" +
                          std::to_string(t.ratio) + "}"}});
            // Pieces beyond the enumeration depth stay inside one annulus
            // around the anchor; their projections have exactly scaled mass.
            int ah = 1 - t.anchor.min_pos();
            tail_projected += t.tail_after(depth) * rational_pow(p.value(), -ah);
            if (t.tail_after(depth) != 0) any_tail = true;
        }
        PieceStream::Enumeration e = s.enumerate(depth);
        if (s.is_generated() && e.tail_bound != 0) {
            any_tail = true;
            generated_tail = true;
        }
        for (std::size_t pi = 0; pi < e.pieces.size(); ++pi) {
            AnnulusSplit split = annulus_split(e.pieces[pi]);
            if (!split.theta_part.empty())
                return Verdict::fail(
                    {"set contains a neighbourhood of theta; its B-dilates nest",
                     {"set #" + std::to_string(si),
                      "cell " + cyl_str(split.theta_part.cylinders().front())}});
            for (const auto& [k, part] : split.parts) {
                for (const Cylinder& c : part.dilate(-k).cylinders()) {
                    if (!acc.insert(c)) {
                        const TaggedCell& prev = tagged[acc.last_overlap_index()];
                        return Verdict::fail(
                            {"dilation projections overlap",
                             {"set #" + std::to_string(prev.set_index) + " annulus " +
                                  annulus_str(annuli[acc.last_overlap_index()]) + " projects cell " +
                                  cyl_str(prev.cell),
                              "set #" + std::to_string(si) + " annulus " + annulus_str(k) +
                                  " projects cell " + cyl_str(c)}});
                    }
                    tagged.push_back({c, si});
                    annuli.push_back(k);
                    covered += c.measure();
                }
            }
        }
    }

    Rational deficit = d0_measure - covered;
    Verdict v;
    if (deficit == 0 && !any_tail) {
        v = Verdict::pass();
    } else if (deficit == 0 && any_tail) {
        // Anything still unenumerated would project onto already covered
        // ground.
        v = Verdict::fail({"projections already tile D_0 but a stream tail with positive measure remains",
                           {"remaining tail projects onto covered cells"}});
    } else if (generated_tail) {
        v = Verdict::undecided(depth);
    } else if (deficit > tail_projected) {
        CylinderSet uncovered = set_subtract(CylinderSet::annulus(p, 0), acc.result());
        Witness w{"dilates do not cover G*", {}};
        if (!uncovered.empty())
            w.evidence.push_back("uncovered D_0 cell " + cyl_str(uncovered.cylinders().front()));
        w.evidence.push_back("projection deficit " + rational_str(deficit) +
                             " exceeds projected tail bound " + rational_str(tail_projected));
        v = Verdict::fail(std::move(w));
    } else {
        v = Verdict::pass_certified(deficit);
        v.depth = depth;
    }
    v.note("projected_cover", rational_str(covered));
    v.note("target", rational_str(d0_measure));
    if (any_tail) v.note("projected_tail_bound", rational_str(tail_projected));
    return v;
}

Verdict multiwavelet_core(Prime p, const std::vector<PieceStream>& sets, int depth) {
    std::vector<std::pair<std::string, Verdict>> parts;
    parts.emplace_back("dilation tiling (joint)", tiling_core(p, sets, depth));
    for (std::size_t i = 0; i < sets.size(); ++i)
        parts.emplace_back("translation congruence of set #" + std::to_string(i),
                           check_translation_congruence(sets[i], depth));
    Verdict v = combine(std::move(parts));
    if (sets.size() != std::size_t(p.value() - 1))
        v.note("warning", "expected p-1 = " + std::to_string(p.value() - 1) + " sets, got " +
                              std::to_string(sets.size()));
    return v;
}

} // namespace

Verdict check_translation_congruence(const CylinderSet& s) {
    return congruence_core(Prime(s.prime()), {s}, 0, -1);
}

Verdict check_translation_congruence(const PieceStream& s, int depth) {
    PieceStream::Enumeration e = s.enumerate(depth);
    return congruence_core(Prime(s.prime()), e.pieces, e.tail_bound, depth);
}

DilationProjection dilation_projection(const CylinderSet& s, std::size_t source) {
    AnnulusSplit split = annulus_split(s);
    DilationProjection out{{}, split.theta_part};
    for (const auto& [k, part] : split.parts)
        for (const Cylinder& c : part.dilate(-k).cylinders()) out.pieces.push_back({c, source, k});
    return out;
}

Verdict check_dilation_tiling(const std::vector<CylinderSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("tiling: no sets");
    std::vector<PieceStream> streams;
    streams.reserve(sets.size());
    for (const CylinderSet& s : sets) streams.push_back(PieceStream::finite(s));
    return tiling_core(Prime(sets.front().prime()), streams, 0);
}

Verdict check_dilation_tiling(const std::vector<PieceStream>& sets, int depth) {
    if (sets.empty()) throw std::invalid_argument("tiling: no sets");
    return tiling_core(Prime(sets.front().prime()), sets, depth);
}

Verdict check_wavelet_set(const CylinderSet& s) {
    return check_wavelet_set(PieceStream::finite(s), 0);
}

Verdict check_wavelet_set(const PieceStream& s, int depth) {
    return combine({{"dilation tiling", check_dilation_tiling(std::vector<PieceStream>{s}, depth)},
                    {"translation congruence", check_translation_congruence(s, depth)}});
}

Verdict check_multiwavelet_set(const std::vector<CylinderSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("multiwavelet: no sets");
    std::vector<PieceStream> streams;
    streams.reserve(sets.size());
    for (const CylinderSet& s : sets) streams.push_back(PieceStream::finite(s));
    return multiwavelet_core(Prime(sets.front().prime()), streams, 0);
}

Verdict check_multiwavelet_set(const std::vector<PieceStream>& sets, int depth) {
    if (sets.empty()) throw std::invalid_argument("multiwavelet: no sets");
    return multiwavelet_core(Prime(sets.front().prime()), sets, depth);
}

Verdict packing_tiling_check(const CylinderSet& s, int resolution) {
    return packing_tiling_check(PieceStream::finite(s), resolution, 0);
}

Verdict packing_tiling_check(const PieceStream& s, int resolution, int depth) {
    const Prime p{s.prime()};
    PieceStream::Enumeration e = s.enumerate(depth);
    std::vector<Cylinder> pieces;
    int finest = 1;
    for (const CylinderSet& cs : e.pieces)
        for (const Cylinder& c : cs.refined(0)) {
            pieces.push_back(c);
            finest = std::max(finest, c.resolution);
        }
    int K = std::max(resolution, std::min(finest, resolution_cap(p.value())));
    EtaFunction f = fold_rho(p, pieces, K);
    mark_stream_tail(f, s, depth, e.tail_bound);

    std::int64_t fmin = 0, fmax = 0;
    bool first = true;
    bool all_resolved = true;
    for (std::size_t cell = 0; cell < f.cells(); ++cell) {
        if (!f.is_resolved(cell)) {
            all_resolved = false;
            continue;
        }
        std::int64_t v = f.counts[cell];
        fmin = first ? v : std::min(fmin, v);
        fmax = first ? v : std::max(fmax, v);
        first = false;
    }
    Rational measure = s.total_measure();

    Verdict v;
    if (all_resolved && e.tail_bound == 0) {
        if (fmin >= 1 && ((fmax == 1) != (measure == 1)))
            v = Verdict::fail({"packing/tiling dichotomy violated on this instance",
                               {"min f = " + std::to_string(fmin), "max f = " + std::to_string(fmax),
                                "measure = " + rational_str(measure)}});
        else
            v = Verdict::pass();
    } else {
        v = Verdict::pass_certified(e.tail_bound);
        v.depth = depth;
    }
    v.note("resolution", std::to_string(K));
    v.note("min_f", std::to_string(fmin));
    v.note("max_f", std::to_string(fmax));
    v.note("measure", rational_str(measure));
    if (fmin < 1) v.note("covering", "translates of S do not cover G* (min f = 0 on some cell)");
    return v;
}

} // namespace vilenkin
