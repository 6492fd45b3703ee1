#pragma once

// Discrete substrate: uniform grids on [-L,L]^n (n = 1 or 2), cube-aligned
// boxes with dyadic side lengths, sampled functions, exact cell-sum
// integration, and a Whitney-type decomposition of open cell sets.
//
// Conventions. The domain [-L,L]^n is split into N cells per axis, each of
// width h = 2L/N; N is a power of two. Cell i along an axis covers
// [-L + i*h, -L + (i+1)*h) and carries the sample at its midpoint.
// 2D samples are stored row-major: index = iy*N + ix.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wbench/util.hpp"

namespace wbench {

struct GridSpec {
    int dim = 1;     // 1 or 2
    double L = 1.0;  // half side of the domain
    int N = 64;      // cells per axis, power of two >= 4

    double h() const { return 2.0 * L / double(N); }
    std::size_t cell_count() const { return dim == 1 ? std::size_t(N) : std::size_t(N) * std::size_t(N); }
    // Midpoint coordinate of cell index i along one axis.
    double mid(int i) const { return -L + (double(i) + 0.5) * h(); }
    bool operator==(const GridSpec& o) const { return dim == o.dim && L == o.L && N == o.N; }

    void validate() const; // throws std::invalid_argument on a bad spec
};

// Axis-aligned box of cells whose side is a dyadic fraction of the domain:
// side_cells = N >> level. The corner may sit at any cell, so the family at
// each scale includes all unit translates, not just the anchored tree.
struct DyadicCube {
    int level = 0;                    // 0 = whole domain
    std::array<int, 2> corner = {0, 0}; // cell index of the lower corner per axis

    bool operator==(const DyadicCube& o) const { return level == o.level && corner == o.corner; }
};

int side_cells(const GridSpec& g, const DyadicCube& q);
double side_length(const GridSpec& g, const DyadicCube& q);
double cube_volume(const GridSpec& g, const DyadicCube& q); // |Q| = side^dim
std::array<double, 2> cube_center(const GridSpec& g, const DyadicCube& q);
bool cube_in_domain(const GridSpec& g, const DyadicCube& q);
bool cube_contains_cube(const GridSpec& g, const DyadicCube& outer, const DyadicCube& inner);
bool cube_contains_cell(const GridSpec& g, const DyadicCube& q, int ix, int iy = 0);
// Anchored means the corner is a multiple of the side, i.e. the cube belongs
// to the standard dyadic tree.
bool cube_anchored(const GridSpec& g, const DyadicCube& q);
std::string cube_to_string(const GridSpec& g, const DyadicCube& q);

// Concentric dilation lambda*Q. Defined only when the dilate is cell-aligned
// (lambda*side integral, overhang split evenly) and stays inside the domain.
std::optional<DyadicCube> dilate_cube(const GridSpec& g, const DyadicCube& q, double lambda);

struct GridFunction {
    GridSpec spec;
    std::vector<double> samples; // size spec.cell_count()

    GridFunction() = default;
    explicit GridFunction(const GridSpec& g, double fill = 0.0)
        : spec(g), samples(g.cell_count(), fill) { g.validate(); }

    double& at(int ix, int iy = 0) { return samples[std::size_t(iy) * spec.N + ix]; }
    double at(int ix, int iy = 0) const { return samples[std::size_t(iy) * spec.N + ix]; }
    std::size_t size() const { return samples.size(); }
};

// Pointwise helpers; specs must match.
GridFunction gf_abs(const GridFunction& f);
GridFunction gf_scale(const GridFunction& f, double c);
GridFunction gf_add(const GridFunction& a, const GridFunction& b);
double gf_max_abs(const GridFunction& f);

// Builds f from midpoint samples of a callable (1D: fn(x), 2D: fn(x,y)).
GridFunction sample_function1(const GridSpec& g, const std::function<double(double)>& fn);
GridFunction sample_function2(const GridSpec& g, const std::function<double(double, double)>& fn);

// Exact cell-sum integral of f over Q: h^n * sum of samples in Q.
// Q must lie inside the domain.
double integrate(const GridFunction& f, const DyadicCube& q);
double integrate_all(const GridFunction& f);

// Cell masks represent measurable unions of cells.
using CellMask = std::vector<std::uint8_t>;

// Whitney-type decomposition of E (a union of cells). Returns boxes from the
// anchored dyadic tree, maximal under
//     dist(Q, E^c) >= diam(Q)        (sup metric, so diam = side length),
// plus single-cell boxes for the collar of E too close to E^c. The returned
// cubes tile E exactly. E = whole domain yields the root cube; E empty yields
// an empty list. For E' subset of E, every cube of the decomposition of E' is
// contained in a cube of the decomposition of E.
std::vector<DyadicCube> whitney_decompose(const GridSpec& g, const CellMask& mask);

struct CubeFamilyOptions {
    int min_side_cells = 1;
    // Corner stride divisor: at side s the corners step by max(1, s/stride_div).
    // 0 means stride 1 (every cell-aligned translate).
    int stride_div = 0;
};

// Cube family used by the weight estimators and the Morrey seminorm: every
// dyadic side length, all cell-aligned translates (subject to options).
std::vector<DyadicCube> cube_family(const GridSpec& g, const CubeFamilyOptions& opt = {});

// Serialization. Text format: line 1 is the literal header "dim,L,N", line 2
// the values, then one sample per line printed with enough digits to
// round-trip exactly. Files ending in .bin hold the same header followed by
// raw little-endian doubles.
void save_grid_function(const GridFunction& f, const std::string& path);
GridFunction load_grid_function(const std::string& path);

} // namespace wbench
