#include "vilenkin/piece_stream.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vilenkin {

namespace {

bool point_in_cylinder(const Point& x, const Cylinder& c) {
    for (const Digit& d : c.anchor.digits())
        if (x.digit_at(d.pos) != d.val) return false;
    for (const Digit& d : x.digits())
        if (d.pos <= c.resolution && c.anchor.digit_at(d.pos) != d.val) return false;
    return true;
}

bool point_in_set(const Point& x, const CylinderSet& s) {
    for (const Cylinder& c : s.cylinders())
        if (point_in_cylinder(x, c)) return true;
    return false;
}

// Annulus range [kmin, kmax] of a set with no theta component.
std::pair<int, int> annulus_range(const CylinderSet& s) {
    int kmin = 0, kmax = 0;
    bool first = true;
    for (const Cylinder& c : s.cylinders()) {
        int k = c.annulus();
        kmin = first ? k : std::min(kmin, k);
        kmax = first ? k : std::max(kmax, k);
        first = false;
    }
    return {kmin, kmax};
}

int max_resolution(const CylinderSet& s) {
    int r = 0;
    for (const Cylinder& c : s.cylinders()) r = std::max(r, c.resolution);
    return r;
}

std::string cyl_str(const Cylinder& c) {
    return "[" + rational_str(c.lambda_lo()) + ", " + rational_str(c.lambda_hi()) + ")";
}

} // namespace

TailFamily::TailFamily(int ratio_, Point anchor_, CylinderSet body_, int start_)
    : ratio(ratio_), anchor(std::move(anchor_)), body(std::move(body_)), start(start_) {
    if (ratio < 1) throw std::invalid_argument("tail family: ratio must be >= 1");
    if (start < 0) throw std::invalid_argument("tail family: start must be >= 0");
    if (!anchor.in_lattice())
        throw std::invalid_argument("tail family: anchor must have digits at positions <= 0 only");
    if (anchor.prime() != body.prime()) throw std::invalid_argument("tail family: mismatched primes");
}

CylinderSet TailFamily::piece(int j) const { return body.dilate(-j * ratio).translate(anchor); }

Rational TailFamily::total_measure() const { return tail_after(start - 1); }

Rational TailFamily::tail_after(int j) const {
    int j1 = std::max(j + 1, start);
    // Geometric series: mu(body) * sum_{i >= j1} p^{-i r}.
    Rational ratio_step = rational_pow(prime(), -ratio);
    return body.measure() * rational_pow(prime(), -j1 * ratio) / (Rational(1) - ratio_step);
}

Cylinder TailFamily::tail_region(int j) const {
    int j1 = std::max(j + 1, start);
    int kmax = body.empty() ? 0 : annulus_range(body).second;
    // B^{-j1 r}(body) and everything deeper sit inside U*_{j1 r - kmax};
    // translating by the anchor gives one cylinder around it.
    int n = std::max(0, j1 * ratio - kmax);
    return Cylinder(anchor, n);
}

Verdict TailFamily::validate_self_disjoint() const {
    if (body.empty()) return Verdict::pass();
    AnnulusSplit split = annulus_split(body);
    if (!split.theta_part.empty()) {
        return Verdict::fail({"tail family body contains a neighbourhood of theta; its dilates nest",
                              {"body cell " + cyl_str(split.theta_part.cylinders().front())}});
    }
    auto [kmin, kmax] = annulus_range(body);
    int span = kmax - kmin;
    for (int d = 1; d * ratio <= span; ++d) {
        CylinderSet overlap = set_intersect(body, body.dilate(-d * ratio));
        if (!overlap.empty()) {
            return Verdict::fail({"tail family pieces overlap: body meets its own dilate",
                                  {"offset j' - j = " + std::to_string(d),
                                   "common region " + cyl_str(overlap.cylinders().front())}});
        }
    }
    return Verdict::pass();
}

PieceStream PieceStream::finite(CylinderSet s) {
    PieceStream ps{Prime(s.prime())};
    ps.finite_ = std::move(s);
    return ps;
}

PieceStream PieceStream::with_tails(CylinderSet finite_part, std::vector<TailFamily> tails) {
    PieceStream ps{Prime(finite_part.prime())};
    for (const TailFamily& t : tails)
        if (t.prime() != ps.p_) throw std::invalid_argument("piece stream: mismatched primes");
    ps.finite_ = std::move(finite_part);
    ps.tails_ = std::move(tails);
    return ps;
}

PieceStream PieceStream::generated(Prime p, Rational total,
                                   std::function<std::optional<CylinderSet>(int)> gen) {
    PieceStream ps{p};
    ps.gen_ = std::move(gen);
    ps.gen_total_ = std::move(total);
    return ps;
}

Rational PieceStream::total_measure() const {
    if (gen_) return gen_total_;
    Rational total = finite_.measure();
    for (const TailFamily& t : tails_) total += t.total_measure();
    return total;
}

PieceStream::Enumeration PieceStream::enumerate(int depth) const {
    if (depth < 0) throw std::invalid_argument("enumerate: negative depth");
    Enumeration out{{}, 0};
    if (!finite_.empty()) out.pieces.push_back(finite_);
    for (const TailFamily& t : tails_) {
        for (int j = t.start; j <= depth; ++j) {
            CylinderSet piece = t.piece(j);
            if (!piece.empty()) out.pieces.push_back(std::move(piece));
        }
        out.tail_bound += t.tail_after(depth);
    }
    if (gen_) {
        Rational enumerated = 0;
        for (int j = 1; j <= depth; ++j) {
            auto piece = gen_(j);
            if (!piece) break;
            enumerated += piece->measure();
            if (!piece->empty()) out.pieces.push_back(std::move(*piece));
        }
        out.tail_bound += gen_total_ - enumerated;
    }
    return out;
}

bool PieceStream::theta_anchored() const {
    for (const TailFamily& t : tails_)
        if (!t.anchor.is_zero()) return false;
    return true;
}

PieceStream PieceStream::dilate(int k) const {
    if (gen_) throw std::logic_error("dilate: generator stream");
    std::vector<TailFamily> tails;
    tails.reserve(tails_.size());
    for (const TailFamily& t : tails_) {
        Point a = shift(t.anchor, k);
        if (!a.in_lattice()) throw std::logic_error("dilate: anchor leaves the lattice");
        tails.emplace_back(t.ratio, std::move(a), t.body.dilate(k), t.start);
    }
    return with_tails(finite_.dilate(k), std::move(tails));
}

namespace {

// Finite part of s inside the annulus D_k: the finite cells there plus the
// finitely many family pieces whose annulus range reaches k.
CylinderSet annulus_content(const PieceStream& s, int k) {
    const Prime p{s.prime()};
    CylinderSet dk = CylinderSet::annulus(p, k);
    CylinderSet out = set_intersect(s.finite_part(), dk);
    for (const TailFamily& t : s.tails()) {
        if (t.body.empty()) continue;
        auto [kmin, kmax] = annulus_range(t.body);
        for (int j = t.start; kmax - j * t.ratio >= k; ++j) {
            if (kmin - j * t.ratio > k) continue;
            out = set_union(out, set_intersect(t.piece(j), dk));
        }
    }
    return out;
}

bool has_theta_cylinder(const CylinderSet& s) {
    for (const Cylinder& c : s.cylinders())
        if (c.contains_zero()) return true;
    return false;
}

int positive_mod(int a, int m) { return ((a % m) + m) % m; }

// Deep-annulus content of s in the D_0 frame for annuli k = c (mod L):
// union over families of B^{-m}(body cap D_m) for m matching the class,
// plus all of D_0 when the finite part holds a neighbourhood of theta.
CylinderSet periodic_content(const PieceStream& s, int c, int L) {
    const Prime p{s.prime()};
    CylinderSet out(p);
    if (has_theta_cylinder(s.finite_part())) out = CylinderSet::annulus(p, 0);
    for (const TailFamily& t : s.tails()) {
        if (t.body.empty()) continue;
        auto [kmin, kmax] = annulus_range(t.body);
        for (int m = kmin; m <= kmax; ++m) {
            if (positive_mod(m - c, t.ratio) != 0) continue;
            CylinderSet part = set_intersect(t.body, CylinderSet::annulus(p, m));
            if (!part.empty()) out = set_union(out, part.dilate(-m));
        }
    }
    (void)L;
    return out;
}

// Lowest annulus above which per-annulus content must be checked directly;
// below it both streams are periodic with period lcm(ratios).
int periodic_threshold(const PieceStream& s) {
    int k = 1;
    for (const Cylinder& c : s.finite_part().cylinders()) {
        if (c.contains_zero())
            k = std::min(k, -c.resolution);
        else
            k = std::min(k, c.annulus() - 1);
    }
    for (const TailFamily& t : s.tails()) {
        if (t.body.empty()) continue;
        auto [kmin, kmax] = annulus_range(t.body);
        (void)kmax;
        k = std::min(k, kmin - t.start * t.ratio);
    }
    return k;
}

int content_ceiling(const PieceStream& s) {
    int k = -1000000;
    bool any = false;
    for (const Cylinder& c : s.finite_part().cylinders()) {
        k = std::max(k, c.contains_zero() ? -c.resolution : c.annulus());
        any = true;
    }
    for (const TailFamily& t : s.tails()) {
        if (t.body.empty()) continue;
        auto [kmin, kmax] = annulus_range(t.body);
        (void)kmin;
        k = std::max(k, kmax - t.start * t.ratio);
        any = true;
    }
    return any ? k : -1000000;
}

} // namespace

std::optional<bool> stream_subset(const PieceStream& a, const PieceStream& b) {
    if (a.prime() != b.prime()) throw std::invalid_argument("stream_subset: mismatched primes");
    if (a.is_generated() || b.is_generated()) return std::nullopt;
    if (!a.theta_anchored() || !b.theta_anchored()) return std::nullopt;

    int L = 1;
    for (const TailFamily& t : a.tails()) L = std::lcm(L, t.ratio);
    for (const TailFamily& t : b.tails()) L = std::lcm(L, t.ratio);

    int k_high = content_ceiling(a);
    if (k_high == -1000000) return true;  // a is empty
    int k_per = std::min(periodic_threshold(a), periodic_threshold(b));

    for (int k = k_per; k <= k_high; ++k) {
        CylinderSet ca = annulus_content(a, k);
        if (ca.empty()) continue;
        if (!annulus_content(b, k).contains(ca)) return false;
    }
    // Any deep content at all?
    bool a_deep = has_theta_cylinder(a.finite_part());
    for (const TailFamily& t : a.tails())
        if (!t.body.empty()) a_deep = true;
    if (a_deep) {
        for (int c = 0; c < L; ++c) {
            CylinderSet pa = periodic_content(a, c, L);
            if (pa.empty()) continue;
            if (!periodic_content(b, c, L).contains(pa)) return false;
        }
    }
    return true;
}

Verdict PieceStream::validate_disjoint(int depth) const {
    // Enumerated prefix: exact pairwise check.
    Enumeration e = enumerate(depth);
    for (std::size_t j = 1; j < e.pieces.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            CylinderSet overlap = set_intersect(e.pieces[i], e.pieces[j]);
            if (!overlap.empty())
                return Verdict::fail({"stream pieces overlap",
                                      {"pieces #" + std::to_string(i) + " and #" + std::to_string(j),
                                       "common region " + cyl_str(overlap.cylinders().front())}});
        }
    if (gen_) {
        if (e.tail_bound != 0) return Verdict::undecided(depth);
        return Verdict::pass();
    }

    // Each family against itself: exact for all indices.
    for (const TailFamily& t : tails_) {
        Verdict v = t.validate_self_disjoint();
        if (v.status != Status::pass) return v;
    }

    // Family tails against the finite part and against each other.
    const Prime p{p_};
    for (std::size_t i = 0; i < tails_.size(); ++i) {
        const TailFamily& a = tails_[i];
        if (a.body.empty()) continue;
        if (!finite_.empty()) {
            if (point_in_set(a.anchor, finite_)) {
                return Verdict::fail({"deep tail pieces fall inside the finite part",
                                      {"tail anchor " + format_point(a.anchor) + " lies in the finite part"}});
            }
            // Beyond jF the tail sits inside a cylinder around the anchor that
            // misses every finite cell; indices up to jF were checked above if
            // depth reached them, otherwise check them here.
            int nsep = std::max(0, max_resolution(finite_));
            auto [kmin, kmax] = annulus_range(a.body);
            (void)kmin;
            int jF = a.start;
            while (jF * a.ratio - kmax < nsep) ++jF;
            for (int j = a.start; j < jF; ++j) {
                CylinderSet overlap = set_intersect(a.piece(j), finite_);
                if (!overlap.empty())
                    return Verdict::fail({"tail piece overlaps the finite part",
                                          {"family #" + std::to_string(i) + " piece j=" + std::to_string(j),
                                           "common region " + cyl_str(overlap.cylinders().front())}});
            }
        }
        for (std::size_t k = i + 1; k < tails_.size(); ++k) {
            const TailFamily& b = tails_[k];
            if (b.body.empty()) continue;
            if (a.anchor == b.anchor) {
                // piece(a,j) meets piece(b,j') iff body_a meets B^d body_b with
                // d = j r_a - j' r_b; every multiple of gcd(r_a, r_b) is
                // realizable, so scan the annulus window.
                int g = std::gcd(a.ratio, b.ratio);
                auto [akmin, akmax] = annulus_range(a.body);
                auto [bkmin, bkmax] = annulus_range(b.body);
                for (int d = akmin - bkmax; d <= akmax - bkmin; ++d) {
                    if (d % g != 0) continue;
                    CylinderSet overlap = set_intersect(a.body, b.body.dilate(d));
                    if (!overlap.empty())
                        return Verdict::fail(
                            {"tail families overlap",
                             {"families #" + std::to_string(i) + " and #" + std::to_string(k),
                              "dilation offset " + std::to_string(d),
                              "common region (in family #" + std::to_string(i) + " frame) " +
                                  cyl_str(overlap.cylinders().front())}});
                }
            } else {
                // Distinct anchors: the tails converge to distinct lattice
                // points. Pieces deep on both sides are separated once both
                // tail regions resolve the first position q where the anchors
                // differ; a deep piece against an early one separates once the
                // deep tail region is finer than the early piece, provided the
                // early piece does not contain the other anchor.
                Point diff = subtract(a.anchor, b.anchor);
                int q = diff.min_pos();  // <= 0
                auto [akmin, akmax] = annulus_range(a.body);
                auto [bkmin, bkmax] = annulus_range(b.body);
                (void)akmin;
                (void)bkmin;
                int ja = a.start, jb = b.start;
                while (ja * a.ratio - akmax < q) ++ja;
                while (jb * b.ratio - bkmax < q) ++jb;
                auto check_pair = [&](int j, int j2) -> std::optional<Verdict> {
                    CylinderSet overlap = set_intersect(a.piece(j), b.piece(j2));
                    if (overlap.empty()) return std::nullopt;
                    return Verdict::fail(
                        {"tail families overlap",
                         {"family #" + std::to_string(i) + " piece j=" + std::to_string(j) +
                              ", family #" + std::to_string(k) + " piece j=" + std::to_string(j2),
                          "common region " + cyl_str(overlap.cylinders().front())}});
                };
                for (int j = a.start; j < ja; ++j) {
                    CylinderSet pa = a.piece(j);
                    if (point_in_set(b.anchor, pa))
                        return Verdict::fail({"deep tail pieces fall inside another family's piece",
                                              {"anchor " + format_point(b.anchor) + " lies in family #" +
                                               std::to_string(i) + " piece j=" + std::to_string(j)}});
                    int j2hi = jb;
                    while (j2hi * b.ratio - bkmax < max_resolution(pa)) ++j2hi;
                    for (int j2 = b.start; j2 < j2hi; ++j2)
                        if (auto v = check_pair(j, j2)) return *v;
                }
                for (int j2 = b.start; j2 < jb; ++j2) {
                    CylinderSet pb = b.piece(j2);
                    if (point_in_set(a.anchor, pb))
                        return Verdict::fail({"deep tail pieces fall inside another family's piece",
                                              {"anchor " + format_point(a.anchor) + " lies in family #" +
                                               std::to_string(k) + " piece j=" + std::to_string(j2)}});
                    int jhi = ja;
                    while (jhi * a.ratio - akmax < max_resolution(pb)) ++jhi;
                    for (int j = a.start; j < jhi; ++j)
                        if (auto v = check_pair(j, j2)) return *v;
                }
            }
        }
    }
    return Verdict::pass();
}

} // namespace vilenkin
