#pragma once

// Morrey-type seminorm dual to the block scale:
//     ||g|| = sup_Q |Q| w(Q)^{-1/p} (avg_Q |g|^{s'})^{1/s'}
// over the cube family, and the pairing inequality
//     |integral(f g)| <= coefficient_quasinorm(f) * ||g||
// for block decompositions f (with s' conjugate to the block index s).

#include "wbench/blocks.hpp"

namespace wbench {

// s' in [1, inf]; s' = inf takes the sup of |g| over each cube. Cubes where
// both w and g vanish contribute nothing; zero-mass cubes seeing nonzero g
// push the seminorm to +inf.
double morrey_norm(const GridFunction& g, double p, double sprime, const Weight& w,
                   const CubeFamilyOptions& fam = {});

struct PairingCheck {
    double pairing = 0;  // integral of f*g over the domain
    double bound = 0;    // quasinorm times Morrey seminorm
    double ratio = 0;    // |pairing| / bound (0 when bound is 0)
};

// Evaluates both sides of the pairing inequality for a decomposition and a
// test function g; s' is derived from the decomposition's s.
PairingCheck duality_pairing_check(const BlockDecomposition& d, const GridFunction& g,
                                   const CubeFamilyOptions& fam = {});

} // namespace wbench
