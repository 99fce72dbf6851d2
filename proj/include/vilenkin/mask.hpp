#pragma once

#include "vilenkin/cyclotomic.hpp"
#include "vilenkin/exec.hpp"
#include "vilenkin/point.hpp"
#include "vilenkin/verdict.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vilenkin {

/// Walsh polynomial m(omega) = sum_alpha a_alpha conj(W*_alpha(omega)) with
/// p^n cyclotomic coefficients; constant on each resolution-n cell of U*
/// and periodic under lattice translations.
struct Mask {
    int p;
    int n;
    std::vector<Cyclotomic> coeffs;  // size p^n

    Mask(Prime p, int n, std::vector<Cyclotomic> coeffs);
    Cyclotomic coefficient_sum() const;
};

/// Function constant on the resolution-K cells of B^R U*. Cell index runs
/// over digit positions 1-R .. K, most significant first, so cell c covers
/// lambda* in [c p^{-K}, (c+1) p^{-K}).
struct StepTable {
    int p = 2;
    int region = 0;      // R
    int resolution = 0;  // K
    std::vector<Cyclotomic> values;

    std::size_t cells() const { return values.size(); }
    /// Index of the cell containing x (digits of x above K are ignored;
    /// x must lie in B^R U*).
    std::size_t cell_of(const Point& x) const;
    Rational cell_lo(std::size_t cell) const { return Rational(Integer(cell)) * rational_pow(p, -resolution); }
};

/// Step values of the mask on the p^n cells of U*: a radix-p butterfly in
/// O(n p^{n+1}) exact field operations.
StepTable mask_values(const Mask& m, ExecMode mode = ExecMode::parallel);
/// Reference evaluation by the O(p^{2n}) double sum.
StepTable mask_values_naive(const Mask& m);
/// Exact inverse: recovers the coefficients from the p^n cell values.
std::vector<Cyclotomic> mask_coefficients_from_values(Prime p, int n,
                                                      const std::vector<Cyclotomic>& values,
                                                      ExecMode mode = ExecMode::parallel);

/// m(theta) = 1 (equivalently sum a_alpha = 1) and the QMF condition
/// sum_l |m(omega + delta_l)|^2 = 1 on every sibling group of cells.
struct MaskHypotheses {
    Verdict theta_value;
    Verdict qmf;
    Verdict overall;
};
MaskHypotheses check_mask_hypotheses(const Mask& m);

/// Greatest fixed point of the blocked-set condition over the
/// resolution-(n-1) cells of U* (the theta cell excluded). nullopt means no
/// blocked set, i.e. the mask generates an MRA.
struct BlockedSetResult {
    std::optional<std::vector<std::size_t>> blocked;  // cell indices at resolution n-1
    Verdict mra;
    std::vector<std::string> decisions;  // interpretation notes used by the run
};
BlockedSetResult blocked_set_find(const Mask& m);
/// Re-validates a candidate blocked set against the definition by direct
/// enumeration of the p-branch transition images.
Verdict validate_blocked_set(const Mask& m, const std::vector<std::size_t>& cells);

/// phi-hat = prod_{j>=1} m(B^{-j} .) on B^R U*: each cell value is a finite
/// exact product (the factors reach m(theta) = 1 after n+R-1 steps).
/// Requires coefficient sum 1. K >= n-1; coarser requests are refused since
/// phi-hat is only constant on resolution-(n-1) cells.
StepTable phi_hat(const Mask& m, int region, int resolution, ExecMode mode = ExecMode::parallel);
/// Point evaluation (finite product) for finitely supported omega.
Cyclotomic phi_hat_at(const Mask& m, const Point& omega);

/// Scaling-function criteria on B^R U*: the refinement identity
/// phi(B omega) = m(omega) phi(omega) cell-exactly, the modified Strang-Fix
/// condition at lattice points below p^R, partial translate sums of
/// |phi-hat|^2 (exact within the region), and the B^{-j} limit at samples.
struct ScalingCriteria {
    Verdict refinement_identity;
    Verdict strang_fix;
    Verdict partial_sums;
    Verdict limit_at_theta;
    Verdict overall;
};
ScalingCriteria scaling_criteria_check(const Mask& m, int region, std::uint64_t translate_bound = 0);

} // namespace vilenkin
