#include "wbench/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace wbench {

void GridSpec::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("GridSpec: dim must be 1 or 2");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("GridSpec: L must be positive and finite");
    if (N < 4 || !is_pow2(std::uint64_t(N))) throw std::invalid_argument("GridSpec: N must be a power of two >= 4");
}

int side_cells(const GridSpec& g, const DyadicCube& q) {
    if (q.level < 0 || (g.N >> q.level) < 1) throw std::invalid_argument("DyadicCube: level out of range");
    return g.N >> q.level;
}

double side_length(const GridSpec& g, const DyadicCube& q) { return side_cells(g, q) * g.h(); }

double cube_volume(const GridSpec& g, const DyadicCube& q) {
    double s = side_length(g, q);
    return g.dim == 1 ? s : s * s;
}

std::array<double, 2> cube_center(const GridSpec& g, const DyadicCube& q) {
    int s = side_cells(g, q);
    double cx = -g.L + (q.corner[0] + 0.5 * s) * g.h();
    double cy = g.dim == 2 ? -g.L + (q.corner[1] + 0.5 * s) * g.h() : 0.0;
    return {cx, cy};
}

bool cube_in_domain(const GridSpec& g, const DyadicCube& q) {
    int s = side_cells(g, q);
    for (int a = 0; a < g.dim; ++a)
        if (q.corner[a] < 0 || q.corner[a] + s > g.N) return false;
    return true;
}

bool cube_contains_cube(const GridSpec& g, const DyadicCube& outer, const DyadicCube& inner) {
    int so = side_cells(g, outer), si = side_cells(g, inner);
    for (int a = 0; a < g.dim; ++a) {
        if (inner.corner[a] < outer.corner[a]) return false;
        if (inner.corner[a] + si > outer.corner[a] + so) return false;
    }
    return true;
}

bool cube_contains_cell(const GridSpec& g, const DyadicCube& q, int ix, int iy) {
    int s = side_cells(g, q);
    if (ix < q.corner[0] || ix >= q.corner[0] + s) return false;
    if (g.dim == 2 && (iy < q.corner[1] || iy >= q.corner[1] + s)) return false;
    return true;
}

bool cube_anchored(const GridSpec& g, const DyadicCube& q) {
    int s = side_cells(g, q);
    for (int a = 0; a < g.dim; ++a)
        if (q.corner[a] % s != 0) return false;
    return true;
}

std::string cube_to_string(const GridSpec& g, const DyadicCube& q) {
    std::ostringstream os;
    os << "Q(level=" << q.level << ", corner=" << q.corner[0];
    if (g.dim == 2) os << "," << q.corner[1];
    os << ", side_cells=" << side_cells(g, q) << ")";
    return os.str();
}

std::optional<DyadicCube> dilate_cube(const GridSpec& g, const DyadicCube& q, double lambda) {
    if (!(lambda >= 1.0)) return std::nullopt;
    int s = side_cells(g, q);
    double ts = lambda * s;
    int t = int(std::lround(ts));
    if (std::abs(ts - t) > 1e-9) return std::nullopt; // not cell-aligned
    if ((t - s) % 2 != 0) return std::nullopt;        // overhang must split evenly
    if (t > g.N) return std::nullopt;
    DyadicCube d;
    if (!is_pow2(std::uint64_t(t))) return std::nullopt; // keep the dyadic-side family closed
    d.level = ilog2(std::uint64_t(g.N)) - ilog2(std::uint64_t(t));
    int off = (t - s) / 2;
    d.corner = {q.corner[0] - off, g.dim == 2 ? q.corner[1] - off : 0};
    if (!cube_in_domain(g, d)) return std::nullopt;
    return d;
}

GridFunction gf_abs(const GridFunction& f) {
    GridFunction r = f;
    for (auto& v : r.samples) v = std::abs(v);
    return r;
}

GridFunction gf_scale(const GridFunction& f, double c) {
    GridFunction r = f;
    for (auto& v : r.samples) v *= c;
    return r;
}

GridFunction gf_add(const GridFunction& a, const GridFunction& b) {
    if (!(a.spec == b.spec)) throw std::invalid_argument("gf_add: grid mismatch");
    GridFunction r = a;
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.samples[i] += b.samples[i];
    return r;
}

double gf_max_abs(const GridFunction& f) {
    double m = 0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

GridFunction sample_function1(const GridSpec& g, const std::function<double(double)>& fn) {
    if (g.dim != 1) throw std::invalid_argument("sample_function1: 1D grids only");
    GridFunction f(g);
    for (int i = 0; i < g.N; ++i) f.at(i) = fn(g.mid(i));
    return f;
}

GridFunction sample_function2(const GridSpec& g, const std::function<double(double, double)>& fn) {
    if (g.dim != 2) throw std::invalid_argument("sample_function2: 2D grids only");
    GridFunction f(g);
    for (int iy = 0; iy < g.N; ++iy)
        for (int ix = 0; ix < g.N; ++ix) f.at(ix, iy) = fn(g.mid(ix), g.mid(iy));
    return f;
}

double integrate(const GridFunction& f, const DyadicCube& q) {
    const GridSpec& g = f.spec;
    if (!cube_in_domain(g, q)) throw std::invalid_argument("integrate: cube outside domain");
    int s = side_cells(g, q);
    double acc = 0;
    if (g.dim == 1) {
        for (int i = q.corner[0]; i < q.corner[0] + s; ++i) acc += f.at(i);
        return acc * g.h();
    }
    for (int iy = q.corner[1]; iy < q.corner[1] + s; ++iy)
        for (int ix = q.corner[0]; ix < q.corner[0] + s; ++ix) acc += f.at(ix, iy);
    return acc * g.h() * g.h();
}

double integrate_all(const GridFunction& f) {
    double acc = 0;
    for (double v : f.samples) acc += v;
    double h = f.spec.h();
    return acc * (f.spec.dim == 1 ? h : h * h);
}

namespace {

// Chebyshev distance (in cells) from each cell to the nearest cell outside
// the mask. Cells outside get 0; a full mask gets a sentinel > N everywhere.
// Two chamfer passes with the full 8-neighborhood are exact for this metric.
std::vector<int> chebyshev_dt(const GridSpec& g, const CellMask& mask) {
    const int big = 2 * g.N + 2;
    const int N = g.N;
    std::vector<int> d(mask.size());
    if (g.dim == 1) {
        for (int i = 0; i < N; ++i) d[i] = mask[i] ? big : 0;
        for (int i = 1; i < N; ++i) d[i] = std::min(d[i], d[i - 1] + 1);
        for (int i = N - 2; i >= 0; --i) d[i] = std::min(d[i], d[i + 1] + 1);
        return d;
    }
    auto idx = [N](int x, int y) { return std::size_t(y) * N + x; };
    for (std::size_t i = 0; i < mask.size(); ++i) d[i] = mask[i] ? big : 0;
    for (int y = 0; y < N; ++y)
        for (int x = 0; x < N; ++x) {
            int v = d[idx(x, y)];
            if (x > 0) v = std::min(v, d[idx(x - 1, y)] + 1);
            if (y > 0) {
                v = std::min(v, d[idx(x, y - 1)] + 1);
                if (x > 0) v = std::min(v, d[idx(x - 1, y - 1)] + 1);
                if (x + 1 < N) v = std::min(v, d[idx(x + 1, y - 1)] + 1);
            }
            d[idx(x, y)] = v;
        }
    for (int y = N - 1; y >= 0; --y)
        for (int x = N - 1; x >= 0; --x) {
            int v = d[idx(x, y)];
            if (x + 1 < N) v = std::min(v, d[idx(x + 1, y)] + 1);
            if (y + 1 < N) {
                v = std::min(v, d[idx(x, y + 1)] + 1);
                if (x + 1 < N) v = std::min(v, d[idx(x + 1, y + 1)] + 1);
                if (x > 0) v = std::min(v, d[idx(x - 1, y + 1)] + 1);
            }
            d[idx(x, y)] = v;
        }
    return d;
}

struct WhitneyCtx {
    const GridSpec* g;
    const std::vector<int>* dist;
    std::vector<DyadicCube>* out;
    CellMask covered;
};

// minDist(Q) - 1 is the box gap (in cells) from Q to the complement, so the
// Whitney predicate dist(Q, E^c) >= diam(Q) reads minDist(Q) - 1 >= side.
void whitney_visit(WhitneyCtx& c, int level, int cx, int cy, int min_d) {
    const GridSpec& g = *c.g;
    int s = g.N >> level;
    if (min_d - 1 >= s) {
        c.out->push_back(DyadicCube{level, {cx, cy}});
        return;
    }
    if (s == 1) {
        if (min_d >= 1) { // cell belongs to E but sits in the collar
            c.out->push_back(DyadicCube{level, {cx, cy}});
        }
        return;
    }
    int half = s / 2;
    int child_level = level + 1;
    if (g.dim == 1) {
        for (int k = 0; k < 2; ++k) {
            int ax = cx + k * half;
            int m = INT32_MAX;
            for (int x = ax; x < ax + half; ++x) m = std::min(m, (*c.dist)[x]);
            whitney_visit(c, child_level, ax, 0, m);
        }
    } else {
        for (int ky = 0; ky < 2; ++ky)
            for (int kx = 0; kx < 2; ++kx) {
                int ax = cx + kx * half, ay = cy + ky * half;
                int m = INT32_MAX;
                for (int y = ay; y < ay + half; ++y)
                    for (int x = ax; x < ax + half; ++x)
                        m = std::min(m, (*c.dist)[std::size_t(y) * g.N + x]);
                whitney_visit(c, child_level, ax, ay, m);
            }
    }
}

} // namespace

std::vector<DyadicCube> whitney_decompose(const GridSpec& g, const CellMask& mask) {
    g.validate();
    if (mask.size() != g.cell_count()) throw std::invalid_argument("whitney_decompose: mask size mismatch");
    bool any = false;
    for (auto m : mask) any = any || (m != 0);
    std::vector<DyadicCube> out;
    if (!any) return out;
    std::vector<int> dist = chebyshev_dt(g, mask);
    int root_min = *std::min_element(dist.begin(), dist.end());
    WhitneyCtx ctx{&g, &dist, &out, {}};
    whitney_visit(ctx, 0, 0, 0, root_min);
    return out;
}

std::vector<DyadicCube> cube_family(const GridSpec& g, const CubeFamilyOptions& opt) {
    g.validate();
    std::vector<DyadicCube> fam;
    int levels = ilog2(std::uint64_t(g.N));
    for (int lev = 0; lev <= levels; ++lev) {
        int s = g.N >> lev;
        if (s < opt.min_side_cells) break;
        int stride = 1;
        if (opt.stride_div > 0) stride = std::max(1, s / opt.stride_div);
        if (g.dim == 1) {
            for (int c = 0; c + s <= g.N; c += stride) fam.push_back(DyadicCube{lev, {c, 0}});
        } else {
            for (int cy = 0; cy + s <= g.N; cy += stride)
                for (int cx = 0; cx + s <= g.N; cx += stride) fam.push_back(DyadicCube{lev, {cx, cy}});
        }
    }
    return fam;
}

void save_grid_function(const GridFunction& f, const std::string& path) {
    bool binary = path.size() > 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("save_grid_function: cannot open " + path);
    char head[64];
    std::snprintf(head, sizeof head, "dim,L,N\n%d,%.17g,%d\n", f.spec.dim, f.spec.L, f.spec.N);
    os << head;
    if (binary) {
        os.write(reinterpret_cast<const char*>(f.samples.data()),
                 std::streamsize(f.samples.size() * sizeof(double)));
    } else {
        char buf[40];
        for (double v : f.samples) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            os << buf;
        }
    }
    if (!os) throw std::runtime_error("save_grid_function: write failed for " + path);
}

GridFunction load_grid_function(const std::string& path) {
    bool binary = path.size() > 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
    std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
    if (!is) throw std::runtime_error("load_grid_function: cannot open " + path);
    std::string header, values;
    std::getline(is, header);
    std::getline(is, values);
    if (header != "dim,L,N") throw std::runtime_error("load_grid_function: bad header in " + path);
    GridSpec g;
    if (std::sscanf(values.c_str(), "%d,%lf,%d", &g.dim, &g.L, &g.N) != 3)
        throw std::runtime_error("load_grid_function: bad spec line in " + path);
    g.validate();
    GridFunction f(g);
    if (binary) {
        is.read(reinterpret_cast<char*>(f.samples.data()), std::streamsize(f.samples.size() * sizeof(double)));
        if (std::size_t(is.gcount()) != f.samples.size() * sizeof(double))
            throw std::runtime_error("load_grid_function: truncated payload in " + path);
    } else {
        for (std::size_t i = 0; i < f.samples.size(); ++i) {
            std::string line;
            if (!std::getline(is, line)) throw std::runtime_error("load_grid_function: truncated payload in " + path);
            f.samples[i] = std::strtod(line.c_str(), nullptr);
        }
    }
    return f;
}

} // namespace wbench
