#include "vilenkin/fold.hpp"

#include "vilenkin/piece_stream.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vilenkin {

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Rational EtaFunction::value(std::size_t cell) const {
    Rational v = counts[cell];
    auto it = partial.find(cell);
    if (it != partial.end()) v += it->second;
    return v;
}

bool EtaFunction::all_resolved() const {
    for (char c : resolved)
        if (!c) return false;
    return true;
}

std::size_t cell_index(const Point& x, int resolution) {
    std::size_t idx = 0;
    const std::size_t p = std::size_t(x.prime());
    for (int pos = 1; pos <= resolution; ++pos) idx = idx * p + std::size_t(x.digit_at(pos));
    return idx;
}

int resolution_cap(int p) {
    int k = 0;
    std::size_t cells = 1;
    while (cells * std::size_t(p) <= (std::size_t(1) << 20)) {
        cells *= std::size_t(p);
        ++k;
    }
    return k;
}

namespace {

std::size_t pow_size(int p, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= std::size_t(p);
    return r;
}

void fold_one(EtaFunction& t, const Cylinder& c) {
    if (c.resolution < 0) throw std::invalid_argument("fold_rho: piece with negative resolution");
    const int K = t.resolution;
    if (c.resolution <= K) {
        std::size_t len = pow_size(t.prime, K - c.resolution);
        std::size_t base = cell_index(c.anchor, c.resolution) * len;
        for (std::size_t i = 0; i < len; ++i) t.counts[base + i] += 1;
    } else {
        // Occupancy relative to the cell: mu(piece) / mu(cell).
        std::size_t cell = cell_index(c.anchor, K);
        t.partial[cell] += rational_pow(t.prime, K - c.resolution);
        t.resolved[cell] = 0;
    }
}

} // namespace

EtaFunction fold_rho(Prime p, const std::vector<Cylinder>& pieces, int resolution, ExecMode mode) {
    if (resolution < 0) throw std::invalid_argument("fold_rho: negative resolution");
    EtaFunction table;
    table.prime = p.value();
    table.resolution = resolution;
    table.counts.assign(pow_size(p.value(), resolution), 0);
    table.resolved.assign(table.counts.size(), 1);

#ifdef _OPENMP
    if (mode == ExecMode::parallel && pieces.size() > 64) {
        const int nt = omp_get_max_threads();
        std::vector<EtaFunction> locals(std::size_t(nt));
        for (auto& l : locals) {
            l.prime = table.prime;
            l.resolution = resolution;
            l.counts.assign(table.counts.size(), 0);
            l.resolved.assign(table.counts.size(), 1);
        }
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < pieces.size(); ++i)
            fold_one(locals[std::size_t(omp_get_thread_num())], pieces[i]);
        for (const auto& l : locals) {
            for (std::size_t c = 0; c < table.counts.size(); ++c) {
                table.counts[c] += l.counts[c];
                if (!l.resolved[c]) table.resolved[c] = 0;
            }
            for (const auto& [c, v] : l.partial) {
                table.partial[c] += v;
                table.resolved[c] = 0;
            }
        }
        return table;
    }
#else
    (void)mode;
#endif
    for (const Cylinder& c : pieces) fold_one(table, c);
    return table;
}

void mark_stream_tail(EtaFunction& table, const PieceStream& s, int depth, const Rational& tail_bound) {
    table.tail_uncertainty = tail_bound;
    if (tail_bound == 0) return;
    if (s.is_generated()) {
        std::fill(table.resolved.begin(), table.resolved.end(), 0);
        return;
    }
    for (const TailFamily& t : s.tails()) {
        if (t.tail_after(depth) == 0) continue;
        // The rho-images of the remaining pieces lie in [0, p^{-n}).
        int n = t.tail_region(depth).resolution;
        std::size_t len = 1;
        for (int i = 0; i < table.resolution - n; ++i) len *= std::size_t(table.prime);
        for (std::size_t c = 0; c < len; ++c) table.resolved[c] = 0;
    }
}

} // namespace vilenkin
