#include "oracle.hpp"

#include <stdexcept>

namespace oracle {

using namespace vilenkin;

std::size_t RegionModel::atom_count() const {
    std::size_t n = 1;
    for (int i = 0; i < K + R; ++i) n *= std::size_t(p);
    return n;
}

std::vector<char> RegionModel::atoms(const CylinderSet& s) const {
    std::vector<char> out(atom_count(), 0);
    for (const Cylinder& c : s.cylinders()) {
        if (c.resolution > K || c.resolution < 1 - R)
            throw std::logic_error("oracle: cylinder resolution outside the model");
        if (!c.anchor.is_zero() && c.anchor.min_pos() < 1 - R)
            throw std::logic_error("oracle: cylinder outside the region");
        // Plain digit arithmetic: the cylinder fixes positions 1-R..N, the
        // rest of the atom digits are free.
        std::size_t base = 0;
        for (int pos = 1 - R; pos <= c.resolution; ++pos)
            base = base * std::size_t(p) + std::size_t(c.anchor.digit_at(pos));
        std::size_t width = 1;
        for (int pos = c.resolution + 1; pos <= K; ++pos) {
            base *= std::size_t(p);
            width *= std::size_t(p);
        }
        for (std::size_t i = 0; i < width; ++i) out[base + i] = 1;
    }
    return out;
}

Rational RegionModel::measure(const std::vector<char>& atoms) const {
    std::int64_t count = 0;
    for (char c : atoms) count += c;
    return Rational(count) * rational_pow(p, -K);
}

bool RegionModel::congruent(const std::vector<char>& atoms) const {
    std::size_t frac = 1;
    for (int i = 0; i < K; ++i) frac *= std::size_t(p);
    std::vector<std::int64_t> counts(frac, 0);
    for (std::size_t a = 0; a < atoms.size(); ++a)
        if (atoms[a]) counts[a % frac] += 1;
    for (std::int64_t c : counts)
        if (c != 1) return false;
    return true;
}

bool RegionModel::tiles(const std::vector<std::vector<char>>& sets) const {
    // D_0 modelled at resolution K+R: fine enough for every projection
    // B^{-k} with k up to R and down to 1-K.
    std::size_t fine = 1;
    for (int i = 0; i < K + R; ++i) fine *= std::size_t(p);  // atoms of U* at res K+R
    std::vector<std::int64_t> counts(fine, 0);
    for (const auto& atoms : sets)
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (!atoms[a]) continue;
            if (a == 0) return false;  // atom at theta: dilates nest
            // Most significant digit position of the atom determines its
            // annulus: index a has K+R base-p digits over positions 1-R..K.
            std::size_t x = a;
            int msd = 0;  // offset of the first nonzero digit, 0-based from the top
            std::vector<int> dig(std::size_t(K + R));
            for (int i = K + R - 1; i >= 0; --i) {
                dig[std::size_t(i)] = int(x % std::size_t(p));
                x /= std::size_t(p);
            }
            while (dig[std::size_t(msd)] == 0) ++msd;
            // Project: digits msd.. shift to the front of the res-(K+R)
            // frame of U*.
            std::size_t idx = 0;
            for (int i = msd; i < K + R; ++i) idx = idx * std::size_t(p) + std::size_t(dig[std::size_t(i)]);
            for (int i = 0; i < msd; ++i) idx *= std::size_t(p);  // free fine digits
            std::size_t width = 1;
            for (int i = 0; i < msd; ++i) width *= std::size_t(p);
            for (std::size_t d = 0; d < width; ++d) counts[idx + d] += 1;
        }
    // Tiling means exactly one cover on D_0 = [p^{K+R-1}, p^{K+R}) scaled:
    // after projection every atom string starts with a nonzero digit.
    std::size_t d0_start = fine / std::size_t(p);
    for (std::size_t i = 0; i < fine; ++i) {
        if (i < d0_start) {
            if (counts[i] != 0) return false;  // would mean a zero leading digit
        } else if (counts[i] != 1) {
            return false;
        }
    }
    return true;
}

std::vector<std::int64_t> RegionModel::eta(const std::vector<char>& atoms) const {
    std::size_t frac = 1;
    for (int i = 0; i < K; ++i) frac *= std::size_t(p);
    std::vector<std::int64_t> counts(frac, 0);
    for (std::size_t a = 0; a < atoms.size(); ++a)
        if (atoms[a]) counts[a % frac] += 1;
    return counts;
}

RegionModel::GssVerdict RegionModel::gss(const std::vector<char>& atoms) const {
    GssVerdict v{};
    v.measure_ok = measure(atoms) == Rational(1, p - 1);
    // S inside BS: the parent atom of B^{-1}(atom) must be in S.
    v.nested = true;
    for (std::size_t a = 0; a < atoms.size(); ++a)
        if (atoms[a] && !atoms[a / std::size_t(p)]) {
            v.nested = false;
            break;
        }
    v.absorbs = atoms[0] != 0;
    std::vector<std::int64_t> e = eta(atoms);
    std::size_t frac = e.size();
    std::size_t coarse = frac / std::size_t(p);
    v.eta_identity = true;
    for (std::size_t t = 0; t < coarse && v.eta_identity; ++t) {
        std::int64_t lhs = 0;
        for (int sigma = 0; sigma < p; ++sigma) lhs += e[std::size_t(sigma) * coarse + t];
        for (int d = 0; d < p; ++d)
            if (lhs != e[t * std::size_t(p) + std::size_t(d)] + 1) {
                v.eta_identity = false;
                break;
            }
    }
    return v;
}

} // namespace oracle
