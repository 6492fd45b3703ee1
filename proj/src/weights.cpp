#include "wbench/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wbench/maximal.hpp"

namespace wbench {

namespace {

// Gauss-Legendre nodes on [a,b], 32 points; plenty for the smooth integrands
// below (machine precision for analytic profiles).
template <typename F>
double gauss32(F f, double a, double b) {
    static const double xs[16] = {
        0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745, 0.3318686022821276497,
        0.4213512761306353454, 0.5068999089322293900, 0.5877157572407623290, 0.6630442669302152010,
        0.7321821187402896804, 0.7944837959679424070, 0.8493676137325699701, 0.8963211557660521240,
        0.9349060759377396891, 0.9647622555875064308, 0.9856115115452683354, 0.9972638618494815635};
    static const double ws[16] = {
        0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654, 0.0911738786957638847,
        0.0876520930044038111, 0.0833119242269467552, 0.0781938957870703065, 0.0723457941088485062,
        0.0658222227763618468, 0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
        0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706, 0.0070186100094700966};
    double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double acc = 0;
    for (int i = 0; i < 16; ++i) acc += ws[i] * (f(c + r * xs[i]) + f(c - r * xs[i]));
    return acc * r;
}

// Average of |x|^alpha over the unit square [0,1]^2 (alpha > -2), in polar
// coordinates: the two halves split by the diagonal contribute equally.
double unit_square_radial_avg(double alpha) {
    auto g = [alpha](double th) { return std::pow(std::cos(th), -(alpha + 2.0)); };
    return 2.0 / (alpha + 2.0) * gauss32(g, 0.0, 0.25 * M_PI);
}

} // namespace

Weight::Weight(GridFunction w) : fn_(std::move(w)) {
    fn_.spec.validate();
    for (double v : fn_.samples) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Weight: samples must be finite and >= 0");
    }
    const int N = fn_.spec.N;
    if (fn_.spec.dim == 1) {
        prefix_.assign(std::size_t(N) + 1, 0.0);
        for (int i = 0; i < N; ++i) prefix_[i + 1] = prefix_[i] + fn_.at(i);
        total_ = prefix_[N] * fn_.spec.h();
    } else {
        prefix_.assign(std::size_t(N + 1) * (N + 1), 0.0);
        auto P = [this, N](int x, int y) -> double& { return prefix_[std::size_t(y) * (N + 1) + x]; };
        for (int y = 0; y < N; ++y)
            for (int x = 0; x < N; ++x)
                P(x + 1, y + 1) = fn_.at(x, y) + P(x, y + 1) + P(x + 1, y) - P(x, y);
        total_ = P(N, N) * fn_.spec.h() * fn_.spec.h();
    }
    if (!(total_ > 0.0)) throw std::invalid_argument("Weight: total mass must be positive");
}

double Weight::mass(const DyadicCube& q) const {
    const GridSpec& g = fn_.spec;
    if (!cube_in_domain(g, q)) throw std::invalid_argument("Weight::mass: cube outside domain");
    int s = side_cells(g, q);
    if (g.dim == 1) {
        return (prefix_[q.corner[0] + s] - prefix_[q.corner[0]]) * g.h();
    }
    const int N = g.N;
    auto P = [this, N](int x, int y) { return prefix_[std::size_t(y) * (N + 1) + x]; };
    int x0 = q.corner[0], y0 = q.corner[1], x1 = x0 + s, y1 = y0 + s;
    return (P(x1, y1) - P(x0, y1) - P(x1, y0) + P(x0, y0)) * g.h() * g.h();
}

namespace {

// Overlap of [u0,u1] with cell [i,i+1) in cell units, accumulated as
// (full-range sum, partial contributions). Coordinates are already clipped.
struct AxisOverlap {
    int full_lo = 0, full_hi = 0;  // full cells [full_lo, full_hi)
    int part_lo = -1, part_hi = -1;
    double frac_lo = 0, frac_hi = 0;
};

AxisOverlap axis_overlap(double u0, double u1, int N) {
    AxisOverlap r;
    u0 = std::max(0.0, std::min(double(N), u0));
    u1 = std::max(0.0, std::min(double(N), u1));
    if (u1 <= u0) { r.full_lo = r.full_hi = 0; return r; }
    int c0 = int(std::floor(u0)), c1 = int(std::floor(u1));
    if (c0 == c1) { // inside one cell
        r.part_lo = c0;
        r.frac_lo = u1 - u0;
        return r;
    }
    r.full_lo = int(std::ceil(u0));
    r.full_hi = c1;
    if (double(r.full_lo) > u0) { r.part_lo = r.full_lo - 1; r.frac_lo = r.full_lo - u0; }
    if (u1 > double(c1) && c1 < N) { r.part_hi = c1; r.frac_hi = u1 - c1; }
    return r;
}

} // namespace

double Weight::mass_box(const std::array<double, 2>& lo, const std::array<double, 2>& hi) const {
    const GridSpec& g = fn_.spec;
    double h = g.h();
    auto tocell = [&](double x) { return (x + g.L) / h; };
    AxisOverlap ox = axis_overlap(tocell(lo[0]), tocell(hi[0]), g.N);
    if (g.dim == 1) {
        double acc = ox.full_hi > ox.full_lo ? prefix_[ox.full_hi] - prefix_[ox.full_lo] : 0.0;
        if (ox.part_lo >= 0) acc += fn_.at(ox.part_lo) * ox.frac_lo;
        if (ox.part_hi >= 0) acc += fn_.at(ox.part_hi) * ox.frac_hi;
        return acc * h;
    }
    AxisOverlap oy = axis_overlap(tocell(lo[1]), tocell(hi[1]), g.N);
    const int N = g.N;
    auto P = [this, N](int x, int y) { return prefix_[std::size_t(y) * (N + 1) + x]; };
    auto rect = [&](int x0, int x1, int y0, int y1) { // full-cell rectangle sum
        if (x1 <= x0 || y1 <= y0) return 0.0;
        return P(x1, y1) - P(x0, y1) - P(x1, y0) + P(x0, y0);
    };
    double acc = rect(ox.full_lo, ox.full_hi, oy.full_lo, oy.full_hi);
    // partial columns over the full y range, partial rows over the full x
    // range, then the four corner cells
    auto col = [&](int x, double fx) {
        if (x < 0) return;
        acc += fx * rect(x, x + 1, oy.full_lo, oy.full_hi);
        if (oy.part_lo >= 0) acc += fx * oy.frac_lo * fn_.at(x, oy.part_lo);
        if (oy.part_hi >= 0) acc += fx * oy.frac_hi * fn_.at(x, oy.part_hi);
    };
    auto row = [&](int y, double fy) {
        if (y < 0) return;
        acc += fy * rect(ox.full_lo, ox.full_hi, y, y + 1);
    };
    col(ox.part_lo, ox.frac_lo);
    col(ox.part_hi, ox.frac_hi);
    row(oy.part_lo, oy.frac_lo);
    row(oy.part_hi, oy.frac_hi);
    return acc * h * h;
}

Weight power_weight(const GridSpec& g, double alpha) {
    g.validate();
    if (!(alpha > -g.dim)) throw std::invalid_argument("power_weight: need alpha > -dim for integrability");
    double h = g.h();
    GridFunction f(g);
    if (g.dim == 1) {
        // exact average over [0,h]: h^alpha / (alpha+1)
        double near = std::pow(h, alpha) / (alpha + 1.0);
        for (int i = 0; i < g.N; ++i) {
            double x = g.mid(i);
            f.at(i) = (std::abs(x) < h) ? near : std::pow(std::abs(x), alpha);
        }
    } else {
        double near = std::pow(h, alpha) * unit_square_radial_avg(alpha);
        for (int iy = 0; iy < g.N; ++iy)
            for (int ix = 0; ix < g.N; ++ix) {
                double x = g.mid(ix), y = g.mid(iy);
                bool touches = std::abs(x) < h && std::abs(y) < h;
                f.at(ix, iy) = touches ? near : std::pow(std::hypot(x, y), alpha);
            }
    }
    return Weight(std::move(f));
}

Weight constant_weight(const GridSpec& g, double c) {
    return Weight(GridFunction(g, c));
}

Weight step_weight(const GridSpec& g, double a, double b) {
    GridFunction f(g);
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            bool left = (g.dim == 1 ? ix : iy) < g.N / 2;
            f.at(ix, iy) = left ? a : b;
        }
    return Weight(std::move(f));
}

WeightBuilder power_weight_builder(double alpha) {
    return [alpha](const GridSpec& g) { return power_weight(g, alpha); };
}
WeightBuilder constant_weight_builder(double c) {
    return [c](const GridSpec& g) { return constant_weight(g, c); };
}
WeightBuilder step_weight_builder(double a, double b) {
    return [a, b](const GridSpec& g) { return step_weight(g, a, b); };
}

namespace {

std::vector<double> cube_cells(const Weight& w, const DyadicCube& q) {
    const GridSpec& g = w.spec();
    int s = side_cells(g, q);
    std::vector<double> cells;
    if (g.dim == 1) {
        cells.reserve(std::size_t(s));
        for (int i = q.corner[0]; i < q.corner[0] + s; ++i) cells.push_back(w.at(i));
    } else {
        cells.reserve(std::size_t(s) * s);
        for (int iy = q.corner[1]; iy < q.corner[1] + s; ++iy)
            for (int ix = q.corner[0]; ix < q.corner[0] + s; ++ix) cells.push_back(w.at(ix, iy));
    }
    return cells;
}

constexpr int kFracBuckets = 20;

void merge_curve_bucket(std::vector<double>& worst, double frac, double ratio) {
    int b = std::min(kFracBuckets - 1, int(frac * kFracBuckets));
    worst[b] = std::max(worst[b], ratio);
}

} // namespace

WeightReport aplus_constant(const Weight& w, double q, const CubeFamilyOptions& fam) {
    if (!(q > 0) || !std::isfinite(q)) throw std::invalid_argument("aplus_constant: q must be positive and finite");
    const GridSpec& g = w.spec();
    std::vector<DyadicCube> cubes = cube_family(g, fam);
    struct Local { double best = 0; WeightWitness wit; bool has = false; std::vector<double> curve; };
    std::vector<Local> locals(cubes.size());

    parallel_for(cubes.size(), [&](std::size_t lo, std::size_t hi) {
        std::vector<double> cells;
        for (std::size_t ci = lo; ci < hi; ++ci) {
            const DyadicCube& Q = cubes[ci];
            Local& out = locals[ci];
            out.curve.assign(kFracBuckets, 0.0);
            cells = cube_cells(w, Q);
            std::sort(cells.begin(), cells.end());
            double m = double(cells.size());
            double total = std::accumulate(cells.begin(), cells.end(), 0.0);
            double run = 0;
            for (std::size_t k = 1; k <= cells.size(); ++k) {
                run += cells[k - 1];
                double frac = double(k) / m;
                double ratio = run > 0 ? std::pow(frac, q) * total / run : kInf;
                if (total == 0) ratio = kInf; // zero-mass cube dominates everything
                merge_curve_bucket(out.curve, frac, std::isfinite(ratio) ? ratio : kInf);
                if (!out.has || ratio > out.best) {
                    out.best = ratio;
                    out.wit = WeightWitness{Q, int(k), 0};
                    out.has = true;
                }
                if (!std::isfinite(ratio)) break; // cannot get worse
            }
        }
    });

    WeightReport rep;
    std::vector<double> curve(kFracBuckets, 0.0);
    for (const Local& l : locals) {
        rep.cubes_scanned++;
        for (int b = 0; b < kFracBuckets; ++b) curve[b] = std::max(curve[b], l.curve[b]);
        if (l.has && (!rep.witness || l.best > rep.constant)) {
            rep.constant = l.best;
            rep.witness = l.wit;
        }
    }
    for (int b = 0; b < kFracBuckets; ++b)
        if (curve[b] > 0) rep.curve.emplace_back((b + 0.5) / kFracBuckets, curve[b]);
    return rep;
}

WeightReport ap_constant(const Weight& w, double p, const CubeFamilyOptions& fam) {
    if (!(p >= 1) || !std::isfinite(p)) throw std::invalid_argument("ap_constant: p must be in [1, inf)");
    const GridSpec& g = w.spec();
    WeightReport rep;
    if (p == 1.0) {
        // ratio Mw/w maximized over cells with positive weight
        GridFunction Mw = hl_maximal(w.values());
        double best = 0;
        bool zero_cell = false;
        DyadicCube wit_cell{ilog2(std::uint64_t(g.N)), {0, 0}};
        for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
            for (int ix = 0; ix < g.N; ++ix) {
                double wv = w.at(ix, iy);
                if (wv == 0) { zero_cell = true; wit_cell.corner = {ix, iy}; continue; }
                double r = Mw.at(ix, iy) / wv;
                if (r > best) {
                    best = r;
                    wit_cell.corner = {ix, iy};
                    rep.witness = WeightWitness{wit_cell, 0, 0};
                }
            }
        rep.constant = zero_cell ? kInf : best;
        if (zero_cell) rep.witness = WeightWitness{wit_cell, 0, 0};
        rep.cubes_scanned = g.cell_count();
        return rep;
    }
    // Muckenhoupt product over the cube family; sigma = w^{-1/(p-1)}
    double e = -1.0 / (p - 1.0);
    std::vector<DyadicCube> cubes = cube_family(g, fam);
    int levels = ilog2(std::uint64_t(g.N));
    std::vector<double> level_worst(levels + 1, 0.0);
    for (const DyadicCube& Q : cubes) {
        auto cells = cube_cells(w, Q);
        double m = double(cells.size());
        double sw = 0, ss = 0;
        bool zero = false;
        for (double v : cells) {
            if (v == 0) { zero = true; break; }
            sw += v;
            ss += std::pow(v, e);
        }
        double ratio = zero ? kInf : (sw / m) * std::pow(ss / m, p - 1.0);
        rep.cubes_scanned++;
        level_worst[Q.level] = std::max(level_worst[Q.level], ratio);
        if (!rep.witness || ratio > rep.constant) {
            rep.constant = ratio;
            rep.witness = WeightWitness{Q, 0, 0};
        }
    }
    for (int lev = 0; lev <= levels; ++lev)
        if (level_worst[lev] > 0)
            rep.curve.emplace_back(double(g.N >> lev) / double(g.N), level_worst[lev]);
    return rep;
}

WeightReport doubling_constant(const Weight& w, double p, double lambda, const CubeFamilyOptions& fam) {
    if (!(lambda > 1)) throw std::invalid_argument("doubling_constant: lambda must exceed 1");
    if (!(p > 0) || !std::isfinite(p)) throw std::invalid_argument("doubling_constant: p must be positive and finite");
    const GridSpec& g = w.spec();
    std::vector<DyadicCube> cubes = cube_family(g, fam);
    WeightReport rep;
    int levels = ilog2(std::uint64_t(g.N));
    std::vector<double> level_worst(levels + 1, 0.0);
    double denom_pow = std::pow(lambda, double(g.dim) * p);
    for (const DyadicCube& Q : cubes) {
        auto D = dilate_cube(g, Q, lambda);
        if (!D) { rep.cubes_skipped++; continue; }
        double mq = w.mass(Q), md = w.mass(*D);
        rep.cubes_scanned++;
        double ratio;
        if (mq == 0) {
            if (md == 0) { rep.cubes_skipped++; continue; }
            ratio = kInf;
        } else {
            ratio = md / (denom_pow * mq);
        }
        level_worst[Q.level] = std::max(level_worst[Q.level], ratio);
        if (!rep.witness || ratio > rep.constant) {
            rep.constant = ratio;
            rep.witness = WeightWitness{Q, 0, lambda};
        }
    }
    for (int lev = 0; lev <= levels; ++lev)
        if (level_worst[lev] > 0)
            rep.curve.emplace_back(double(g.N >> lev) / double(g.N), level_worst[lev]);
    return rep;
}

WeightReport reverse_holder_constant(const Weight& w, double r, const CubeFamilyOptions& fam) {
    if (!(r > 1) || !std::isfinite(r)) throw std::invalid_argument("reverse_holder_constant: r must exceed 1");
    const GridSpec& g = w.spec();
    std::vector<DyadicCube> cubes = cube_family(g, fam);
    WeightReport rep;
    int levels = ilog2(std::uint64_t(g.N));
    std::vector<double> level_worst(levels + 1, 0.0);
    struct Local { double ratio = -1; };
    std::vector<Local> locals(cubes.size());
    parallel_for(cubes.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ci = lo; ci < hi; ++ci) {
            const DyadicCube& Q = cubes[ci];
            auto cells = cube_cells(w, Q);
            double m = double(cells.size());
            double sw = 0, sr = 0;
            for (double v : cells) { sw += v; sr += std::pow(v, r); }
            if (sw == 0) continue; // zero-mass cube carries no ratio
            locals[ci].ratio = std::pow(sr / m, 1.0 / r) / (sw / m);
        }
    });
    for (std::size_t ci = 0; ci < cubes.size(); ++ci) {
        if (locals[ci].ratio < 0) { rep.cubes_skipped++; continue; }
        rep.cubes_scanned++;
        double ratio = locals[ci].ratio;
        level_worst[cubes[ci].level] = std::max(level_worst[cubes[ci].level], ratio);
        if (!rep.witness || ratio > rep.constant) {
            rep.constant = ratio;
            rep.witness = WeightWitness{cubes[ci], 0, 0};
        }
    }
    for (int lev = 0; lev <= levels; ++lev)
        if (level_worst[lev] > 0)
            rep.curve.emplace_back(double(g.N >> lev) / double(g.N), level_worst[lev]);
    return rep;
}

CriticalIndexResult critical_index(const WeightBuilder& builder, const GridSpec& base,
                                   const CriticalIndexOptions& opt) {
    if (!(opt.r_max > 1) || opt.doublings < 1) throw std::invalid_argument("critical_index: bad options");
    std::vector<Weight> ladder;
    for (int j = 0; j <= opt.doublings; ++j) {
        GridSpec g = base;
        g.N = opt.base_N << j;
        g.validate();
        ladder.push_back(builder(g));
    }
    CriticalIndexResult res;
    auto growth = [&](double r) {
        double worst = 0, prev = -1;
        for (const Weight& w : ladder) {
            double c = reverse_holder_constant(w, r).constant;
            if (!std::isfinite(c)) return kInf;
            if (prev > 0) worst = std::max(worst, c / prev);
            prev = c;
        }
        return worst;
    };
    auto stable = [&](double r) {
        double gr = growth(r);
        res.probes.emplace_back(r, gr);
        return gr <= opt.growth_tol;
    };
    if (stable(opt.r_max)) {
        res.unbounded = true;
        res.value = opt.r_max;
        return res;
    }
    double lo = 1.0 + opt.tol, hi = opt.r_max;
    if (!stable(lo)) { res.value = lo; return res; } // divergent immediately above 1
    while (hi - lo > opt.tol) {
        double mid = 0.5 * (lo + hi);
        if (stable(mid)) lo = mid; else hi = mid;
    }
    res.value = lo; // last stable abscissa: a conservative lower estimate
    return res;
}

bool class_p_check(const Weight& w, double delta) {
    const GridSpec& g = w.spec();
    double h = g.h();
    double cells = delta / h;
    int m = int(std::lround(cells));
    if (std::abs(cells - m) > 1e-9 || m < 1)
        throw std::invalid_argument("class_p_check: delta must be a multiple of the cell width");
    if (g.N % m != 0)
        throw std::invalid_argument("class_p_check: delta-cubes must tile the domain evenly");
    int per_axis = g.N / m;
    int lev = ilog2(std::uint64_t(g.N)) - ilog2(std::uint64_t(m));
    if (!is_pow2(std::uint64_t(m))) {
        // non-dyadic tile: fall back to direct cell sums
        for (int by = 0; by < (g.dim == 2 ? per_axis : 1); ++by)
            for (int bx = 0; bx < per_axis; ++bx) {
                double acc = 0;
                for (int iy = by * m; iy < (g.dim == 2 ? (by + 1) * m : 1); ++iy)
                    for (int ix = bx * m; ix < (bx + 1) * m; ++ix) acc += w.at(ix, g.dim == 2 ? iy : 0);
                if (!(acc > 0)) return false;
            }
        return true;
    }
    for (int by = 0; by < (g.dim == 2 ? per_axis : 1); ++by)
        for (int bx = 0; bx < per_axis; ++bx) {
            DyadicCube q{lev, {bx * m, by * m}};
            if (!(w.mass(q) > 0)) return false;
        }
    return true;
}

} // namespace wbench
