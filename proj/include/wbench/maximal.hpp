#pragma once

// Maximal operators and weighted norms.
//
// hl_maximal is the uncentered Hardy-Littlewood maximal function restricted
// to cell-aligned windows: in 1D the maximum runs over every interval of
// cells containing the cell (exact); in 2D over squares of every dyadic side
// and every translate. Both are computed from prefix sums with sliding-window
// maxima, never by sampling.

#include <vector>

#include "wbench/weights.hpp"

namespace wbench {

GridFunction hl_maximal(const GridFunction& f);

// Reference implementation by direct enumeration of windows; same prefix-sum
// quotients as hl_maximal, so results agree bit for bit. Quadratic per cell;
// keep N small.
GridFunction hl_maximal_brute(const GridFunction& f);

// Dilation-invariant smooth test profile on [-1,1]^n, sampled on a reference
// grid; dilates are resampled at each scale of the ladder and renormalized to
// unit mass so that f == c maps to |c| exactly.
struct SmoothKernel {
    std::vector<double> profile; // samples of the radial profile on [0,1]
    double sup = 0;              // sup of the profile
    static SmoothKernel quartic_bump(int samples = 1025);
    // Profile value at radius r in [0,1] (linear interpolation), 0 outside.
    double eval(double r) const;
};

// sup over the dilation ladder t = L, L/2, ..., >=2h of |phi_t * f| with
// phi_t(x) = t^{-n} phi(x/t), zero extension outside the domain.
GridFunction smooth_maximal(const GridFunction& f, const SmoothKernel& k);

// Weighted Lebesgue quasinorm (integral of |f|^p w)^{1/p}; p = inf gives
// max |f| (weights with full support carry the same ess-sup).
double lpw_norm(const GridFunction& f, double p, const Weight& w);

// Unweighted L^s norm over the grid, s in (0, inf].
double ls_norm(const GridFunction& f, double s);

} // namespace wbench
