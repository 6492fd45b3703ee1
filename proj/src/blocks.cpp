#include "wbench/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wbench {

namespace {

// |Q|^{1/s} with the convention 1/inf = 0.
double volume_pow(const GridSpec& g, const DyadicCube& q, double s) {
    if (std::isinf(s)) return 1.0;
    return std::pow(cube_volume(g, q), 1.0 / s);
}

void check_supported(const GridFunction& f, const GridSpec& g, const DyadicCube& q) {
    int s = side_cells(g, q);
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            bool inside = ix >= q.corner[0] && ix < q.corner[0] + s &&
                          (g.dim == 1 || (iy >= q.corner[1] && iy < q.corner[1] + s));
            if (!inside && f.at(ix, iy) != 0.0)
                throw std::invalid_argument("make_block: samples outside the support cube");
        }
}

} // namespace

std::pair<double, Block> make_block(const GridFunction& g, const DyadicCube& q, double p, double s,
                                    std::shared_ptr<const Weight> w) {
    if (!w) throw std::invalid_argument("make_block: null weight");
    if (!(g.spec == w->spec())) throw std::invalid_argument("make_block: grid mismatch");
    if (!(p > 0) || !(s > 0)) throw std::invalid_argument("make_block: exponents must be positive");
    if (!cube_in_domain(g.spec, q)) throw std::invalid_argument("make_block: cube outside domain");
    check_supported(g, g.spec, q);
    double wq = w->mass(q);
    if (!(wq > 0)) throw std::domain_error("make_block: support cube has zero weight mass");
    double norm = ls_norm(g, s);
    double lambda = norm * std::pow(cube_volume(g.spec, q), std::isinf(s) ? 0.0 : -1.0 / s) *
                    std::pow(wq, 1.0 / p);
    Block b;
    b.support = q;
    b.p = p;
    b.s = s;
    b.weight = std::move(w);
    if (lambda == 0) {
        b.samples = GridFunction(g.spec);
        return {0.0, std::move(b)};
    }
    b.samples = gf_scale(g, 1.0 / lambda);
    return {lambda, std::move(b)};
}

bool validate_block(const Block& b) {
    const GridSpec& g = b.samples.spec;
    if (!b.weight || !(g == b.weight->spec())) return false;
    if (!cube_in_domain(g, b.support)) return false;
    int s = side_cells(g, b.support);
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            bool inside = ix >= b.support.corner[0] && ix < b.support.corner[0] + s &&
                          (g.dim == 1 || (iy >= b.support.corner[1] && iy < b.support.corner[1] + s));
            if (!inside && b.samples.at(ix, iy) != 0.0) return false;
        }
    double wq = b.weight->mass(b.support);
    if (!(wq > 0)) return false;
    double bound = volume_pow(g, b.support, b.s) * std::pow(wq, -1.0 / b.p);
    return ls_norm(b.samples, b.s) <= bound * (1.0 + 1e-12);
}

double block_lpw_bound(const Block& b) {
    if (!b.weight) throw std::invalid_argument("block_lpw_bound: block has no weight");
    return lpw_norm(b.samples, b.p, *b.weight);
}

double coefficient_quasinorm(const BlockDecomposition& d) {
    double pbar = std::min(d.p, 1.0);
    double acc = 0;
    for (const BlockTerm& t : d.terms) acc += std::pow(std::abs(t.lambda), pbar);
    return std::pow(acc, 1.0 / pbar);
}

GridFunction reconstruct(const BlockDecomposition& d) {
    if (d.terms.empty()) throw std::invalid_argument("reconstruct: empty decomposition has no grid");
    GridFunction out(d.terms.front().block.samples.spec);
    for (const BlockTerm& t : d.terms)
        for (std::size_t i = 0; i < out.samples.size(); ++i)
            out.samples[i] += t.lambda * t.block.samples.samples[i];
    return out;
}

double ml_quasinorm(const GridFunction& f, double p, const Weight& w) {
    return lpw_norm(hl_maximal(f), p, w);
}

namespace {

// Largest k with 2^k strictly below x (x > 0).
int level_below(double x) {
    int k = std::ilogb(x);
    while (std::ldexp(1.0, k) >= x) --k;
    while (std::ldexp(1.0, k + 1) < x) ++k;
    return k;
}

} // namespace

BlockDecomposition decompose_ml(const GridFunction& f, double p, double s,
                                std::shared_ptr<const Weight> w) {
    if (!w) throw std::invalid_argument("decompose_ml: null weight");
    const GridSpec& g = f.spec;
    if (!(g == w->spec())) throw std::invalid_argument("decompose_ml: grid mismatch");
    if (!(p > 0) || !(s > 0)) throw std::invalid_argument("decompose_ml: exponents must be positive");

    BlockDecomposition dec;
    dec.p = p;
    dec.s = s;
    dec.weight = w;

    GridFunction Mf = hl_maximal(f);
    double mmax = 0, mmin = kInf;
    for (double v : Mf.samples) {
        mmax = std::max(mmax, v);
        mmin = std::min(mmin, v);
    }
    if (mmax == 0) return dec; // f == 0
    // Mf is positive everywhere once f is nontrivial (the whole-domain window
    // sees the mass), so 2^{k_min} < min Mf makes the lowest level set the
    // entire domain and the telescoping below reproduces f exactly.
    int k_min = level_below(mmin);
    int k_max = level_below(mmax);

    const int cells = int(g.cell_count());
    auto mask_of = [&](int k) {
        CellMask m(std::size_t(cells), 0);
        double thr = std::ldexp(1.0, k);
        for (int i = 0; i < cells; ++i) m[std::size_t(i)] = Mf.samples[std::size_t(i)] > thr ? 1 : 0;
        return m;
    };

    std::vector<DyadicCube> cur = whitney_decompose(g, mask_of(k_min));
    for (int k = k_min; k <= k_max; ++k) {
        std::vector<DyadicCube> next =
            k < k_max ? whitney_decompose(g, mask_of(k + 1)) : std::vector<DyadicCube>{};

        // owner index of each cell at level k, for the verbatim subtraction
        std::vector<int> owner(std::size_t(cells), -1);
        for (std::size_t ci = 0; ci < cur.size(); ++ci) {
            int sc = side_cells(g, cur[ci]);
            for (int iy = cur[ci].corner[1]; iy < cur[ci].corner[1] + (g.dim == 2 ? sc : 1); ++iy)
                for (int ix = cur[ci].corner[0]; ix < cur[ci].corner[0] + sc; ++ix)
                    owner[std::size_t(g.dim == 2 ? iy * g.N + ix : ix)] = int(ci);
        }

        // beta_i = f|Q_i minus the next level's pieces inside Q_i
        std::vector<GridFunction> beta(cur.size());
        for (std::size_t ci = 0; ci < cur.size(); ++ci) {
            beta[ci] = GridFunction(g);
            int sc = side_cells(g, cur[ci]);
            for (int iy = cur[ci].corner[1]; iy < cur[ci].corner[1] + (g.dim == 2 ? sc : 1); ++iy)
                for (int ix = cur[ci].corner[0]; ix < cur[ci].corner[0] + sc; ++ix)
                    beta[ci].at(ix, g.dim == 2 ? iy : 0) = f.at(ix, g.dim == 2 ? iy : 0);
        }
        for (const DyadicCube& qn : next) {
            int first = g.dim == 2 ? qn.corner[1] * g.N + qn.corner[0] : qn.corner[0];
            int oi = owner[std::size_t(first)];
            if (oi < 0 || !cube_contains_cube(g, cur[std::size_t(oi)], qn))
                throw std::logic_error("decompose_ml: level nesting violated");
            int sc = side_cells(g, qn);
            for (int iy = qn.corner[1]; iy < qn.corner[1] + (g.dim == 2 ? sc : 1); ++iy)
                for (int ix = qn.corner[0]; ix < qn.corner[0] + sc; ++ix)
                    beta[std::size_t(oi)].at(ix, g.dim == 2 ? iy : 0) -= f.at(ix, g.dim == 2 ? iy : 0);
        }

        double scale = 3.0 * std::ldexp(1.0, k);
        for (std::size_t ci = 0; ci < cur.size(); ++ci) {
            bool zero = true;
            for (double v : beta[ci].samples) zero = zero && v == 0.0;
            if (zero) continue;
            double wq = w->mass(cur[ci]);
            if (!(wq > 0))
                throw std::domain_error("decompose_ml: support cube has zero weight mass");
            double lambda = scale * std::pow(wq, 1.0 / p);
            BlockTerm t;
            t.lambda = lambda;
            t.tag = k;
            t.block.support = cur[ci];
            t.block.p = p;
            t.block.s = s;
            t.block.weight = w;
            t.block.samples = gf_scale(beta[ci], 1.0 / lambda);
            dec.terms.push_back(std::move(t));
        }
        cur = std::move(next);
    }
    return dec;
}

} // namespace wbench
