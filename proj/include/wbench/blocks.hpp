#pragma once

// Blocks and block decompositions. A (p,s,w)-block is supported on a cube Q
// and obeys the size bound
//     ||a||_{L^s} <= |Q|^{1/s} w(Q)^{-1/p}     (s = inf: ||a||_inf <= w(Q)^{-1/p}).
// Decompositions carry coefficients lambda_k; their natural scale is the
// pbar-quasinorm with pbar = min(p, 1).
//
// decompose_ml splits f level by level along the sets {Mf > 2^k} using the
// Whitney decomposition, subtracting the next level's pieces from each cube;
// the resulting pieces are bounded by 3*2^k cellwise, normalize to blocks,
// and sum back to f exactly.

#include <memory>
#include <vector>

#include "wbench/maximal.hpp"

namespace wbench {

struct Block {
    DyadicCube support;
    GridFunction samples; // identically zero outside the support cube
    double p = 1;
    double s = kInf;
    std::shared_ptr<const Weight> weight;
};

struct BlockTerm {
    double lambda = 0;
    Block block;
    int tag = 0; // decompose_ml: the level exponent k; molecule split: annulus index
};

struct BlockDecomposition {
    double p = 1;
    double s = kInf;
    std::shared_ptr<const Weight> weight;
    std::vector<BlockTerm> terms;
};

// Normalizes g restricted to Q into a block saturating the size bound;
// returns (lambda, a) with lambda = ||g||_{L^s} |Q|^{-1/s} w(Q)^{1/p} and
// a = g/lambda. g must vanish outside Q. Zero-mass cubes are an error;
// g == 0 yields lambda = 0 and a zero block.
std::pair<double, Block> make_block(const GridFunction& g, const DyadicCube& q, double p, double s,
                                    std::shared_ptr<const Weight> w);

// Support and size-bound check with relative tolerance 1e-12.
bool validate_block(const Block& b);

// Measured ||a||_{L^p_w} of the block itself.
double block_lpw_bound(const Block& b);

// (sum |lambda_k|^pbar)^{1/pbar}, pbar = min(p,1).
double coefficient_quasinorm(const BlockDecomposition& d);

// Cellwise sum of lambda_k a_k.
GridFunction reconstruct(const BlockDecomposition& d);

// ||Mf||_{L^p_w}: the decomposition-space quasinorm of f.
double ml_quasinorm(const GridFunction& f, double p, const Weight& w);

// Constructive decomposition of f into blocks along the level sets of Mf.
// The level range covers [min Mf, max Mf] so that the telescoping sum is
// exact; zero pieces are dropped.
BlockDecomposition decompose_ml(const GridFunction& f, double p, double s,
                                std::shared_ptr<const Weight> w);

} // namespace wbench
