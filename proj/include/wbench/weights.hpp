#pragma once

// Weight classes on the grid. A weight is a nonnegative grid function with
// positive total mass; cached prefix sums make cube masses O(1).
//
// The central estimator measures the best constant C in
//     (|E|/|Q|)^q  <=  C * w(E)/w(Q)      for all cubes Q and cell sets E in Q,
// by scanning, for each cube, the adversarial subsets formed by the k
// smallest-weight cells (exact: any k-cell subset has mass >= the k smallest).
// Companions: the classical A_p characteristic, a doubling ratio, reverse
// Holder ratios, the critical integrability index, and a partition positivity
// check.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wbench/grid.hpp"

namespace wbench {

class Weight {
public:
    Weight() = default;
    // Throws if any sample is negative, non-finite, or the total mass is 0.
    explicit Weight(GridFunction w);

    const GridSpec& spec() const { return fn_.spec; }
    const GridFunction& values() const { return fn_; }
    double at(int ix, int iy = 0) const { return fn_.at(ix, iy); }

    // w(Q) = integral of w over the cube (exact cell sum).
    double mass(const DyadicCube& q) const;
    double total_mass() const { return total_; }
    // Integral of w over the continuous box [lo,hi] (per axis), treating w as
    // cell-constant; partial cells contribute their overlap fraction exactly.
    double mass_box(const std::array<double, 2>& lo, const std::array<double, 2>& hi) const;

private:
    GridFunction fn_;
    std::vector<double> prefix_; // 1D prefix sums / 2D summed-area table
    double total_ = 0;
};

// Builders for common weights. power_weight samples |x|^alpha at midpoints
// except on the cells touching the origin, which get the exact cell average
// (alpha > -dim keeps it integrable).
Weight power_weight(const GridSpec& g, double alpha);
Weight constant_weight(const GridSpec& g, double c = 1.0);
// Piecewise two-value weight: a on the left/lower half, b on the right/upper.
Weight step_weight(const GridSpec& g, double a, double b);

// A family of weights indexed by resolution, for estimators that refine N.
using WeightBuilder = std::function<Weight(const GridSpec&)>;
WeightBuilder power_weight_builder(double alpha);
WeightBuilder constant_weight_builder(double c = 1.0);
WeightBuilder step_weight_builder(double a, double b);

struct WeightWitness {
    DyadicCube cube;
    int subset_cells = 0;   // k for the adversarial-subset estimator, else 0
    double lambda = 0;      // dilation factor for the doubling estimator, else 0
};

struct WeightReport {
    double constant = 0;                 // may be +inf
    std::optional<WeightWitness> witness;
    // Estimator-specific curve: adversarial estimator keys by subset fraction
    // k/cells(Q); the others key by relative cube side. Values are the worst
    // ratio seen at that key.
    std::vector<std::pair<double, double>> curve;
    std::size_t cubes_scanned = 0;
    std::size_t cubes_skipped = 0;       // e.g. dilations leaving the domain
};

// Best constant in (|E|/|Q|)^q <= C w(E)/w(Q) over the cube family.
// q > 0. Cubes with zero mass make the constant +inf (witnessed).
WeightReport aplus_constant(const Weight& w, double q, const CubeFamilyOptions& fam = {});

// Classical characteristic: for p > 1 the Muckenhoupt product
// avg_Q(w) * avg_Q(w^{-1/(p-1)})^{p-1}; for p = 1 the ratio Mw/w maximized
// over cells with w > 0 (M = uncentered grid maximal operator).
WeightReport ap_constant(const Weight& w, double p, const CubeFamilyOptions& fam = {});

// sup_Q w(lambda Q) / (lambda^{n p} w(Q)) over cubes whose dilate stays in the
// domain and lands on cell boundaries; others are counted as skipped.
WeightReport doubling_constant(const Weight& w, double p, double lambda, const CubeFamilyOptions& fam = {});

// sup_Q (avg_Q w^r)^{1/r} / avg_Q w for r > 1.
WeightReport reverse_holder_constant(const Weight& w, double r, const CubeFamilyOptions& fam = {});

struct CriticalIndexOptions {
    double r_max = 16.0;       // search ceiling; hitting it flags +inf
    double tol = 0.05;         // bisection width on r
    int base_N = 256;          // coarsest resolution of the refinement ladder
    int doublings = 2;         // ladder rungs above base_N
    double growth_tol = 1.02;  // max allowed constant ratio per N-doubling
};

struct CriticalIndexResult {
    double value = 0;          // meaningful when !unbounded
    bool unbounded = false;    // stable all the way to r_max
    std::vector<std::pair<double, double>> probes; // (r, max growth per doubling)
};

// Integrability threshold sup{ r > 1 : reverse Holder constant stays stable
// under N-doubling }. Membership at a single resolution is meaningless
// (every grid weight is bounded), so stability of the constant across a
// refinement ladder stands in for finiteness; the growth tolerance is
// deliberately tight to resolve the threshold at desk resolutions.
CriticalIndexResult critical_index(const WeightBuilder& builder, const GridSpec& base,
                                   const CriticalIndexOptions& opt = {});

// True iff every delta-cube of the partition has positive mass. delta must be
// a multiple of the cell width that divides the domain side evenly.
bool class_p_check(const Weight& w, double delta);

} // namespace wbench
