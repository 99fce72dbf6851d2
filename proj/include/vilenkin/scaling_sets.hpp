#pragma once

#include "vilenkin/fold.hpp"
#include "vilenkin/piece_stream.hpp"
#include "vilenkin/verdict.hpp"

#include <vector>

namespace vilenkin {

/// eta(omega) = sum_{h} 1_S(omega + h) on U* cells. resolution = 0 picks the
/// finest resolution the pieces need (capped for streams).
EtaFunction eta(const CylinderSet& s, int resolution = 0);
EtaFunction eta(const PieceStream& s, int resolution, int depth);

/// The four-condition generalized-scaling-set characterization:
/// (i) measure 1/(p-1), (ii) S inside BS, (iii) S absorbs B^{-k} limits
/// (holds a neighbourhood of theta), (iv) the eta identity
/// sum_sigma eta(omega + 0.sigma) = eta(B omega) + 1.
Verdict gss_check(const CylinderSet& s);
Verdict gss_check(const PieceStream& s, int depth);

/// BS \ S, with the wavelet-set check of the result attached.
struct WaveletFromGss {
    CylinderSet omega;
    Verdict wavelet;
};
WaveletFromGss wavelet_from_gss(const CylinderSet& s);

/// The stream of disjoint pieces B^{-j} Omega, j >= 1, with total measure
/// mu(Omega)/(p-1). flags reports overlapping dilates (the input was not a
/// wavelet set) and a total measure different from 1/(p-1).
struct GssFromWavelet {
    PieceStream stream;
    Verdict flags;
};
GssFromWavelet gss_from_wavelet(const CylinderSet& omega, int depth);

/// Certifies S = union_{j>=1} B^{-j} Omega in closed form:
/// B^{-1}(Omega union S) = S and Omega cap S = empty.
Verdict closure_verify(const CylinderSet& candidate, const CylinderSet& omega);

/// The consistency equation 1 + eta_S = eta_{BS} as an exact step-function
/// identity.
Verdict consistency_check(const CylinderSet& s, int resolution = 0);
Verdict consistency_check(const PieceStream& s, int resolution, int depth);

/// Sufficient condition: (a) S holds a neighbourhood of theta,
/// (b) B^{-1} S inside S, (c) consistency equation; then BS \ S must pass
/// the wavelet-set check (a discrepancy raises an internal alarm).
Verdict theorem47_check(const CylinderSet& s);
Verdict theorem47_check(const PieceStream& s, int depth);

/// {omega in U* : I(omega) in t} for t inside U*.
CylinderSet i_preimage(const CylinderSet& t);

/// The recursion Y_0 = u, Y_n = u cap I^{-1}(Y_{n-1}), after verifying the
/// hypothesis U* \ u = union_sigma rho(u + 0.sigma) exactly.
struct UpsilonLevel {
    CylinderSet set;
    Rational measure;
    bool measure_ok;     // mu(Y_k) = p^{-(k+1)}
    Verdict congruence;  // of B^{k+1} Y_k
};
struct UpsilonResult {
    Verdict hypothesis;
    std::vector<UpsilonLevel> levels;
    Verdict overall;
};
UpsilonResult upsilon_construct(const CylinderSet& u, int n);

} // namespace vilenkin
