#pragma once

// Molecules: functions with controlled decay around a center, measured by a
// two-factor quantity R(M) that interpolates the L^s size and a radially
// weighted L^s size. Every block is a molecule with R bounded by its size
// bound; conversely a molecule splits into blocks supported on dyadic annuli
// whose inner scale l balances ||M||_{L^s} = |Q_l|^{1/s} w(Q_l)^{-1/p}.

#include <array>
#include <memory>

#include "wbench/blocks.hpp"

namespace wbench {

struct MoleculeParams {
    double p = 2;
    double s = kInf;
    double q = 1;        // 0 < q < p
    double eps = -1;     // < 0 picks the default (1 - q/p)/2
    double resolved_eps() const { return eps > 0 ? eps : 0.5 * (1.0 - q / p); }
    // exponents of the two factors
    double a() const { return 1.0 - q / p - resolved_eps(); }
    double b() const { return 1.0 - (std::isinf(s) ? 0.0 : 1.0 / s) - resolved_eps(); }
    // Throws unless 0 < q < p, 0 < eps < 1 - q/p, and s > max(p/q, rw*p/(rw-1))
    // for the supplied critical-index estimate (rw = inf relaxes the latter to
    // s > p).
    void validate(double r_w_estimate) const;
};

struct Molecule {
    GridFunction samples;
    std::array<double, 2> center = {0, 0}; // x0, a grid point
    MoleculeParams params;
    std::shared_ptr<const Weight> weight;
};

// R(M) = ||M||_{L^s}^{a/b} * || M * G^{b/(b-a)} ||_{L^s}^{1-a/b} where
// G(x) = |Q_r|^{-1/s} w(Q_r)^{1/p} on the cube Q_r centered at x0 of
// half-side r = max(|x - x0|_sup, h/2); cube masses clip to the domain.
double molecule_R(const Molecule& m);

struct MoleculeSplit {
    BlockDecomposition decomp; // terms tagged by annulus index
    double l = 0;              // balancing scale
    int k0 = 0;                // 2^{k0-1} < l <= 2^{k0}
    bool clamped = false;      // balance equation had no root in range
};

// Splits M into blocks on the annuli E_0 = Q_{2^{k0}},
// E_k = Q_{2^{k0+k}} \ Q_{2^{k0+k-1}}; each piece is normalized by
// make_block, so the decomposition sums back to M exactly.
MoleculeSplit molecule_to_blocks(const Molecule& m);

// Decay exponent of the annulus norms from the tail estimate; positive
// whenever r > s/(s-p). Used by the property checks.
double molecule_decay_exponent(const MoleculeParams& mp, double r, int dim);

} // namespace wbench
