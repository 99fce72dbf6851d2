#include "vilenkin/cylinder_set.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace vilenkin {

namespace {

// p-ary trie over digit positions L, L+1, ... ; a node at depth d stands for
// the cylinder fixing positions <= L-1+d. Full nodes carry no children, so a
// canonicalized trie is the unique minimal representation of the set.
struct Node {
    enum class S { empty, full, split };
    S s = S::empty;
    std::vector<std::unique_ptr<Node>> kids;

    void make_split(int p) {
        s = S::split;
        kids.resize(p);
        for (auto& k : kids)
            if (!k) k = std::make_unique<Node>();
    }
};

std::unique_ptr<Node> clone(const Node* n) {
    auto out = std::make_unique<Node>();
    if (!n) return out;
    out->s = n->s;
    if (n->s == Node::S::split) {
        out->kids.reserve(n->kids.size());
        for (auto& k : n->kids) out->kids.push_back(clone(k.get()));
    }
    return out;
}

void canonicalize(Node* n) {
    if (n->s != Node::S::split) return;
    bool all_full = true, all_empty = true;
    for (auto& k : n->kids) {
        canonicalize(k.get());
        all_full = all_full && k->s == Node::S::full;
        all_empty = all_empty && k->s == Node::S::empty;
    }
    if (all_full) {
        n->s = Node::S::full;
        n->kids.clear();
    } else if (all_empty) {
        n->s = Node::S::empty;
        n->kids.clear();
    }
}

// Union-semantics insert of a cylinder whose digits run over positions
// L..resolution (depth = resolution - L + 1).
void insert(Node* n, const Cylinder& c, int L, int depth_pos, int p) {
    if (n->s == Node::S::full) return;  // already covered
    if (depth_pos > c.resolution) {
        n->s = Node::S::full;
        n->kids.clear();
        return;
    }
    if (n->s == Node::S::empty) n->make_split(p);
    insert(n->kids[std::size_t(c.anchor.digit_at(depth_pos))].get(), c, L, depth_pos + 1, p);
}

void collect(const Node* n, int p, int pos, std::vector<Digit>& path, std::vector<Cylinder>& out) {
    if (n->s == Node::S::full) {
        out.emplace_back(Point(Prime(p), path), pos - 1);
        return;
    }
    if (n->s == Node::S::empty) return;
    for (int d = 0; d < p; ++d) {
        if (d != 0) path.push_back({pos, d});
        collect(n->kids[std::size_t(d)].get(), p, pos + 1, path, out);
        if (d != 0) path.pop_back();
    }
}

// Smallest admissible root position for a list of cylinders.
int base_position(const std::vector<Cylinder>& cs) {
    int L = 1;
    for (const Cylinder& c : cs) {
        L = std::min(L, c.resolution + 1);
        if (!c.anchor.is_zero()) L = std::min(L, c.anchor.min_pos());
    }
    return L;
}

std::unique_ptr<Node> build_trie(const std::vector<Cylinder>& cs, int L, int p) {
    auto root = std::make_unique<Node>();
    for (const Cylinder& c : cs) insert(root.get(), c, L, L, p);
    canonicalize(root.get());
    return root;
}

std::unique_ptr<Node> op_union(const Node* a, const Node* b, int p) {
    if ((a && a->s == Node::S::full) || (b && b->s == Node::S::full)) {
        auto n = std::make_unique<Node>();
        n->s = Node::S::full;
        return n;
    }
    if (!a || a->s == Node::S::empty) return clone(b);
    if (!b || b->s == Node::S::empty) return clone(a);
    auto n = std::make_unique<Node>();
    n->make_split(p);
    for (int d = 0; d < p; ++d) n->kids[std::size_t(d)] = op_union(a->kids[std::size_t(d)].get(), b->kids[std::size_t(d)].get(), p);
    canonicalize(n.get());
    return n;
}

std::unique_ptr<Node> op_intersect(const Node* a, const Node* b, int p) {
    if (!a || !b || a->s == Node::S::empty || b->s == Node::S::empty) return std::make_unique<Node>();
    if (a->s == Node::S::full) return clone(b);
    if (b->s == Node::S::full) return clone(a);
    auto n = std::make_unique<Node>();
    n->make_split(p);
    for (int d = 0; d < p; ++d)
        n->kids[std::size_t(d)] = op_intersect(a->kids[std::size_t(d)].get(), b->kids[std::size_t(d)].get(), p);
    canonicalize(n.get());
    return n;
}

std::unique_ptr<Node> op_subtract(const Node* a, const Node* b, int p) {
    if (!a || a->s == Node::S::empty || (b && b->s == Node::S::full)) return std::make_unique<Node>();
    if (!b || b->s == Node::S::empty) return clone(a);
    // b is split here; expand a full node so the recursion can descend.
    Node full;
    full.s = Node::S::full;
    auto n = std::make_unique<Node>();
    n->make_split(p);
    for (int d = 0; d < p; ++d) {
        const Node* ak = a->s == Node::S::full ? &full : a->kids[std::size_t(d)].get();
        n->kids[std::size_t(d)] = op_subtract(ak, b->kids[std::size_t(d)].get(), p);
    }
    canonicalize(n.get());
    return n;
}

std::vector<Cylinder> trie_to_cylinders(const Node* root, int L, int p) {
    std::vector<Cylinder> out;
    std::vector<Digit> path;
    collect(root, p, L, path, out);
    std::sort(out.begin(), out.end(), [](const Cylinder& x, const Cylinder& y) {
        Rational lx = x.lambda_lo(), ly = y.lambda_lo();
        if (lx != ly) return lx < ly;
        return x.resolution < y.resolution;
    });
    return out;
}

using BinaryOp = std::unique_ptr<Node> (*)(const Node*, const Node*, int);

CylinderSet binary(const CylinderSet& a, const CylinderSet& b, BinaryOp op) {
    if (a.prime() != b.prime()) throw std::invalid_argument("set operation: mismatched primes");
    const int p = a.prime();
    int L = std::min(base_position(a.cylinders()), base_position(b.cylinders()));
    auto ta = build_trie(a.cylinders(), L, p);
    auto tb = build_trie(b.cylinders(), L, p);
    auto tr = op(ta.get(), tb.get(), p);
    return CylinderSet::of(Prime(p), trie_to_cylinders(tr.get(), L, p));
}

} // namespace

Cylinder::Cylinder(Point a, int n) : anchor(std::move(a)), resolution(n) {
    if (!anchor.is_zero() && anchor.max_pos() > n)
        throw std::invalid_argument("cylinder anchor has digits beyond its resolution");
}

int Cylinder::annulus() const {
    if (contains_zero()) throw std::domain_error("annulus of a cell containing theta");
    return 1 - anchor.min_pos();
}

bool cylinder_contains(const Cylinder& outer, const Cylinder& inner) {
    if (outer.resolution > inner.resolution) return false;
    return truncate_above(inner.anchor, outer.resolution) == outer.anchor;
}

bool cylinders_overlap(const Cylinder& a, const Cylinder& b) {
    return cylinder_contains(a, b) || cylinder_contains(b, a);
}

std::string format_cylinder(const Cylinder& c) {
    if (c.resolution < 0) throw std::logic_error("format_cylinder: negative resolution");
    return format_point(c.anchor, c.resolution);
}

CylinderSet CylinderSet::of(Prime p, const std::vector<Cylinder>& cylinders) {
    for (const Cylinder& c : cylinders)
        if (c.prime() != p.value()) throw std::invalid_argument("cylinder with mismatched prime");
    CylinderSet s(p);
    if (cylinders.empty()) return s;
    int L = base_position(cylinders);
    auto t = build_trie(cylinders, L, p.value());
    s.cylinders_ = trie_to_cylinders(t.get(), L, p.value());
    return s;
}

CylinderSet CylinderSet::of(const Cylinder& c) { return of(Prime(c.prime()), {c}); }

CylinderSet CylinderSet::unit(Prime p, int k) { return of(Cylinder(theta(p), -k)); }

CylinderSet CylinderSet::annulus(Prime p, int k) {
    std::vector<Cylinder> cs;
    for (int d = 1; d < p.value(); ++d) cs.emplace_back(Point(p, {{1 - k, d}}), 1 - k);
    return of(p, cs);
}

Rational CylinderSet::measure() const {
    Rational total = 0;
    for (const Cylinder& c : cylinders_) total += c.measure();
    return total;
}

CylinderSet CylinderSet::translate(const Point& t) const {
    if (t.prime() != p_) throw std::invalid_argument("translate: mismatched primes");
    std::vector<Cylinder> out;
    out.reserve(cylinders_.size());
    for (const Cylinder& c : cylinders_)
        out.emplace_back(truncate_above(add(c.anchor, t), c.resolution), c.resolution);
    return of(Prime(p_), out);
}

CylinderSet CylinderSet::dilate(int k) const {
    std::vector<Cylinder> out;
    out.reserve(cylinders_.size());
    for (const Cylinder& c : cylinders_) out.emplace_back(shift(c.anchor, k), c.resolution - k);
    return of(Prime(p_), out);
}

std::vector<Cylinder> CylinderSet::refined(int minres) const {
    std::vector<Cylinder> out;
    for (const Cylinder& c : cylinders_) {
        if (c.resolution >= minres) {
            out.push_back(c);
            continue;
        }
        // Split into the p^(minres - resolution) children at minres.
        std::vector<Cylinder> frontier{c};
        for (int r = c.resolution; r < minres; ++r) {
            std::vector<Cylinder> next;
            next.reserve(frontier.size() * std::size_t(p_));
            for (const Cylinder& f : frontier)
                for (int d = 0; d < p_; ++d) {
                    Point a = f.anchor;
                    if (d != 0) a = add(a, Point(Prime(p_), {{r + 1, d}}));
                    next.emplace_back(std::move(a), r + 1);
                }
            frontier = std::move(next);
        }
        out.insert(out.end(), frontier.begin(), frontier.end());
    }
    return out;
}

bool CylinderSet::contains(const CylinderSet& other) const {
    return set_subtract(other, *this).empty();
}

bool CylinderSet::contains(const Cylinder& c) const { return contains(CylinderSet::of(c)); }

bool CylinderSet::disjoint_with(const CylinderSet& other) const {
    return set_intersect(*this, other).empty();
}

CylinderSet set_union(const CylinderSet& a, const CylinderSet& b) { return binary(a, b, op_union); }
CylinderSet set_intersect(const CylinderSet& a, const CylinderSet& b) { return binary(a, b, op_intersect); }
CylinderSet set_subtract(const CylinderSet& a, const CylinderSet& b) { return binary(a, b, op_subtract); }

AnnulusSplit annulus_split(const CylinderSet& s) {
    const Prime p(s.prime());
    std::map<int, std::vector<Cylinder>> parts;
    std::vector<Cylinder> zero;
    for (const Cylinder& c : s.cylinders()) {
        if (c.contains_zero())
            zero.push_back(c);
        else
            parts[c.annulus()].push_back(c);
    }
    AnnulusSplit out{{}, CylinderSet::of(p, zero)};
    for (auto& [k, cs] : parts) out.parts.emplace(k, CylinderSet::of(p, cs));
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_overlap(const std::vector<Cylinder>& cs) {
    for (std::size_t j = 1; j < cs.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (cylinders_overlap(cs[i], cs[j])) return std::make_pair(i, j);
    return std::nullopt;
}

struct DisjointAccumulator::Impl {
    int p;
    int root_pos = 1;  // digits branch from positions root_pos, root_pos+1, ...
    std::unique_ptr<Node> root = std::make_unique<Node>();
    std::vector<Cylinder> inserted;
    std::size_t overlap_index = 0;

    void extend_root(int new_pos) {
        while (root_pos > new_pos) {
            auto wrapper = std::make_unique<Node>();
            if (root->s != Node::S::empty) {
                wrapper->make_split(p);
                wrapper->kids[0] = std::move(root);
            }
            root = std::move(wrapper);
            --root_pos;
        }
    }
};

DisjointAccumulator::DisjointAccumulator(Prime p) : impl_(std::make_unique<Impl>()) {
    impl_->p = p.value();
}
DisjointAccumulator::DisjointAccumulator(DisjointAccumulator&&) noexcept = default;
DisjointAccumulator& DisjointAccumulator::operator=(DisjointAccumulator&&) noexcept = default;
DisjointAccumulator::~DisjointAccumulator() = default;

bool DisjointAccumulator::insert(const Cylinder& c) {
    Impl& im = *impl_;
    if (c.prime() != im.p) throw std::invalid_argument("accumulator: mismatched prime");
    im.extend_root(base_position({c}));
    Node* n = im.root.get();
    for (int pos = im.root_pos; pos <= c.resolution; ++pos) {
        if (n->s == Node::S::full) break;
        if (n->s == Node::S::empty) n->make_split(im.p);
        n = n->kids[std::size_t(c.anchor.digit_at(pos))].get();
    }
    if (n->s != Node::S::empty) {
        // Locate an earlier cylinder witnessing the overlap.
        for (std::size_t i = 0; i < im.inserted.size(); ++i)
            if (cylinders_overlap(im.inserted[i], c)) {
                im.overlap_index = i;
                return false;
            }
        throw std::logic_error("accumulator: inconsistent overlap state");
    }
    n->s = Node::S::full;
    im.inserted.push_back(c);
    return true;
}

std::size_t DisjointAccumulator::last_overlap_index() const { return impl_->overlap_index; }

const std::vector<Cylinder>& DisjointAccumulator::inserted() const { return impl_->inserted; }

CylinderSet DisjointAccumulator::result() const {
    return CylinderSet::of(Prime(impl_->p), impl_->inserted);
}

} // namespace vilenkin
