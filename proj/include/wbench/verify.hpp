#pragma once

// Experiment harness: seeded random blocks and decompositions, measured
// operator constants with hypothesis gates, stability across resolution and
// scale ladders, and the sharpness study. Every experiment is deterministic
// in (config, seed): trials draw from per-index substreams, so results do
// not depend on scheduling or trial order.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wbench/molecules.hpp"
#include "wbench/morrey.hpp"
#include "wbench/operators.hpp"

namespace wbench {

struct ExperimentConfig {
    int dim = 1;
    double L = 2.0;
    std::vector<int> resolutions = {512, 1024};
    std::string weight = "power:0.3";
    double p = 2.0;
    double q = 1.5;
    double s = 8.0;
    double eps = -1;                 // molecule eps; < 0 means (1 - q/p)/2
    int trials = 100;
    std::uint64_t seed = 20250822;
    std::vector<int> block_sides = {4, 8, 16, 32, 64}; // cells at the coarsest rung
    std::string op = "identity";
    double stability_factor = 2.0;
    // sharpness study
    std::vector<double> sharpness_L = {4, 8, 16, 32, 64};
    int cells_per_unit = 32;
};

// "power:<alpha>", "const", "const:<c>", "step:<a>:<b>"
WeightBuilder weight_from_descriptor(const std::string& descriptor);

struct GateStatus {
    double r_w = kInf;         // critical-index estimate for the weight
    bool r_w_unbounded = true;
    double aplus = 0;          // A^+ constant at exponent q, coarsest rung
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks the hypothesis set 0 < q < p and s > r_w p/(r_w - 1) with the
// estimated critical index, plus s > p/q when for_bh; also estimates the
// A^+ constant at q. Violations are recorded, never fixed.
GateStatus evaluate_gates(const ExperimentConfig& cfg, bool for_bh);

struct BoundReport {
    std::string name;
    std::vector<std::string> columns;       // CSV schema
    std::vector<std::vector<double>> rows;  // one row per measurement
    std::vector<std::pair<int, double>> per_resolution; // (N, sup)
    std::vector<std::pair<int, double>> per_scale;      // (side cells, sup)
    double sup = 0;
    double median = 0;      // of the measured value column
    double slope = 0;       // fitted exponent; meaning depends on the study
    double stability = 1;   // worst adjacent-rung sup ratio, normalized >= 1
    GateStatus gates;
    std::vector<std::string> notes;
    bool pass = false;
};

// Seeded block generator. Rough trials use sign-balanced random amplitudes
// per cell, smooth trials a centered one-signed bump; make_block normalizes
// either to saturate the size bound. Sides are clamped to [1, N] and rounded
// down to powers of two.
Block random_block(std::mt19937_64& rng, const GridSpec& g, std::shared_ptr<const Weight> w,
                   double p, double s, const std::vector<int>& sides, bool rough);

// Random test field: a mixture of indicators and ramps of mixed sign and
// scale, plus cellwise noise when rough. Never identically zero.
GridFunction random_field(std::mt19937_64& rng, const GridSpec& g, bool rough);

// sup_b ||T b||_{L^p_w} over seeded random blocks, per resolution rung and
// per support scale; stability is the worst of the two ladder ratios.
BoundReport uniform_block_bound(const OperatorHandle& T, const ExperimentConfig& cfg);

// Random finite block decompositions: ||T(reconstruct(d))||_{L^p_w} against
// the coefficient quasinorm, sup and stability across the resolution ladder.
BoundReport decomposition_inequality(const OperatorHandle& T, const ExperimentConfig& cfg);

// Molecule route: R(Tb) for seeded random blocks, then molecule_to_blocks on
// Tb and its coefficient quasinorm against R(Tb).
BoundReport bh_block_bound(const OperatorHandle& T, const ExperimentConfig& cfg);

// Constructive decomposition check: reconstruction error, cellwise level
// bounds, and the quasinorm ratio against ||Mf||_{L^p_w}, over seeded random
// fields.
BoundReport whitney_check(const ExperimentConfig& cfg);

// Pairing |integral(f g)| vs quasinorm * Morrey bound: single-block trials
// (exact inequality, ratio <= 1) and multi-block trials.
BoundReport duality_check(const ExperimentConfig& cfg);

// ||M chi_{[0,1]}||_{L^1([-L,L])} against log L (fitted slope), the p = 2
// analogue, and the q = p growth study over the block-scale ladder.
BoundReport sharpness_study(const ExperimentConfig& cfg);

} // namespace wbench
