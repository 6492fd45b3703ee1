#pragma once

// 1D singular and oscillatory operators on the grid, plus the two measured
// size conditions used by the bound experiments:
//   (far-field)  |Th(x)| <= C ||h||_{L^1} / |x - x0|^n   outside 2*sqrt(n)*Q,
//   (local)      integral over 2*sqrt(n)*Q of |Th|^s <= C * integral over Q of |h|^s.
//
// The truncated Hilbert transform sums the kernel 1/(pi t) over cell
// midpoints at distance >= eps, pairing the two sides at equal distance so
// that even data about a point cancels exactly. The maximal variant takes the
// sup over the dyadic truncation ladder {h, 2h, 4h, ...}. Partial Fourier
// integrals come from the modulation identity
//   S_N = (i/2)(Mod_N H Mod_{-N} - Mod_{-N} H Mod_N),
// realized with the eps = h truncation; a DFT-based spectral truncation of
// the periodized samples serves as an independent oracle.

#include <complex>
#include <functional>
#include <string>

#include "wbench/blocks.hpp"

namespace wbench {

struct OperatorHandle {
    std::string name;
    std::function<GridFunction(const GridFunction&)> apply;
};

GridFunction hilbert_truncated(const GridFunction& f, double eps);
GridFunction hilbert_maximal(const GridFunction& f);

// Frequency cutoff at |xi| <= freq (cycles per unit length); freq must not
// exceed the grid Nyquist limit 1/(2h). Real part of the modulation identity.
GridFunction fourier_partial_sum(const GridFunction& f, double freq);

// sup over the dyadic frequency ladder {1, 2, 4, ...} up to Nyquist.
GridFunction fourier_maximal(const GridFunction& f);

// Independent route: periodize, DFT, zero out |xi| > freq (half weight at
// |xi| == freq, matching the sign convention of the modulation identity).
GridFunction fourier_spectral_oracle(const GridFunction& f, double freq);

// Named operator factory for configs: "hilbert:<eps>", "hilbert_max",
// "fourier:<freq>", "fourier_max", "hl_max", "smooth_max", "identity".
OperatorHandle make_operator(const std::string& descriptor);

struct SizeCheck {
    double constant = 0;     // worst normalized ratio
    std::array<int, 2> argmax_cell = {-1, -1};
    int cells_outside = 0;   // evaluation points (far-field check)
};

// Far-field constant: max over cells x with midpoint outside 2*sqrt(n)*Q of
// |Tb(x)| |x - x0|^n / ||b||_{L^1}; x0 is the support-cube center.
SizeCheck size_condition_check(const OperatorHandle& op, const Block& b);

// Local constant: (integral over 2*sqrt(n)*Q of |Tb|^s) / (integral over Q
// of |b|^s); s = inf compares sups.
SizeCheck local_ls_check(const OperatorHandle& op, const Block& b, double s);

} // namespace wbench
