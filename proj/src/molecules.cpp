#include "wbench/molecules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wbench {

void MoleculeParams::validate(double r_w_estimate) const {
    if (!(q > 0) || !(q < p)) throw std::invalid_argument("MoleculeParams: need 0 < q < p");
    double e = resolved_eps();
    if (!(e > 0) || !(e < 1.0 - q / p))
        throw std::invalid_argument("MoleculeParams: need 0 < eps < 1 - q/p");
    double lower = p / q;
    if (std::isfinite(r_w_estimate)) {
        if (!(r_w_estimate > 1)) throw std::invalid_argument("MoleculeParams: critical index must exceed 1");
        lower = std::max(lower, r_w_estimate * p / (r_w_estimate - 1.0));
    } else {
        lower = std::max(lower, p);
    }
    if (!(s > lower)) throw std::invalid_argument("MoleculeParams: s must exceed max(p/q, rw p/(rw-1))");
    if (!(b() > a())) throw std::invalid_argument("MoleculeParams: degenerate exponents (b <= a)");
}

namespace {

// G(x) = |Q_r|^{-1/s} w(Q_r)^{1/p} at half-side r around the center.
double radial_factor(const Molecule& m, double r) {
    const GridSpec& g = m.samples.spec;
    double inv_s = std::isinf(m.params.s) ? 0.0 : 1.0 / m.params.s;
    std::array<double, 2> lo = {m.center[0] - r, m.center[1] - r};
    std::array<double, 2> hi = {m.center[0] + r, m.center[1] + r};
    double wq = m.weight->mass_box(lo, hi);
    double vol = std::pow(2.0 * r, double(g.dim));
    return std::pow(vol, -inv_s) * std::pow(wq, 1.0 / m.params.p);
}

double sup_dist(const GridSpec& g, const std::array<double, 2>& x0, int ix, int iy) {
    double dx = std::abs(g.mid(ix) - x0[0]);
    if (g.dim == 1) return dx;
    return std::max(dx, std::abs(g.mid(iy) - x0[1]));
}

} // namespace

double molecule_R(const Molecule& m) {
    if (!m.weight) throw std::invalid_argument("molecule_R: null weight");
    const GridSpec& g = m.samples.spec;
    if (!(g == m.weight->spec())) throw std::invalid_argument("molecule_R: grid mismatch");
    const MoleculeParams& mp = m.params;
    double a = mp.a(), b = mp.b();
    if (!(b > a)) throw std::invalid_argument("molecule_R: degenerate exponents");
    double h = g.h();
    GridFunction weighted(g);
    double expo = b / (b - a);
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            double v = m.samples.at(ix, iy);
            if (v == 0) continue;
            double r = std::max(sup_dist(g, m.center, ix, iy), 0.5 * h);
            weighted.at(ix, iy) = v * std::pow(radial_factor(m, r), expo);
        }
    double first = ls_norm(m.samples, mp.s);
    double second = ls_norm(weighted, mp.s);
    return std::pow(first, a / b) * std::pow(second, 1.0 - a / b);
}

MoleculeSplit molecule_to_blocks(const Molecule& m) {
    if (!m.weight) throw std::invalid_argument("molecule_to_blocks: null weight");
    const GridSpec& g = m.samples.spec;
    if (!(g == m.weight->spec())) throw std::invalid_argument("molecule_to_blocks: grid mismatch");
    const MoleculeParams& mp = m.params;
    double h = g.h();

    MoleculeSplit out;
    out.decomp.p = mp.p;
    out.decomp.s = mp.s;
    out.decomp.weight = m.weight;

    double target = ls_norm(m.samples, mp.s);
    if (target == 0) return out;

    // Solve |Q_l|^{1/s} w(Q_l)^{-1/p} = ||M||_{L^s}; the left side is
    // nonincreasing in l for reverse Holder weights, so bisect, clamping to
    // the representable range when the equation has no root there.
    auto phi = [&](double l) { return 1.0 / radial_factor(m, l); };
    double lo = 0.5 * h, hi = 2.0 * g.L;
    double l;
    if (phi(lo) <= target) {
        l = lo;
        out.clamped = phi(lo) < target;
    } else if (phi(hi) >= target) {
        l = hi;
        out.clamped = phi(hi) > target;
    } else {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (phi(mid) >= target) lo = mid; else hi = mid;
        }
        l = 0.5 * (lo + hi);
    }
    out.l = l;
    out.k0 = int(std::ceil(std::log2(l)));
    while (std::ldexp(1.0, out.k0) < l) ++out.k0;      // guard rounding
    while (std::ldexp(1.0, out.k0 - 1) >= l) --out.k0; // 2^{k0-1} < l <= 2^{k0}

    // assign cells to annuli by sup distance from the center
    double dmax = 0;
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) dmax = std::max(dmax, sup_dist(g, m.center, ix, iy));
    int k_last = 0;
    while (std::ldexp(1.0, out.k0 + k_last) < dmax) ++k_last;

    for (int k = 0; k <= k_last; ++k) {
        double Rout = std::ldexp(1.0, out.k0 + k);
        double Rin = k == 0 ? 0.0 : std::ldexp(1.0, out.k0 + k - 1);
        GridFunction piece(g);
        int xlo = g.N, xhi = -1, ylo = g.N, yhi = -1;
        bool nonzero = false;
        for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
            for (int ix = 0; ix < g.N; ++ix) {
                double r = sup_dist(g, m.center, ix, iy);
                if ((k > 0 && r <= Rin) || r > Rout) continue;
                double v = m.samples.at(ix, iy);
                piece.at(ix, iy) = v;
                if (v != 0) nonzero = true;
                xlo = std::min(xlo, ix); xhi = std::max(xhi, ix);
                ylo = std::min(ylo, iy); yhi = std::max(yhi, iy);
            }
        if (!nonzero) continue;
        // smallest dyadic-side cube covering the annulus cells
        int wx = xhi - xlo + 1, wy = g.dim == 2 ? yhi - ylo + 1 : 1;
        int side = 1;
        while (side < std::max(wx, wy)) side <<= 1;
        side = std::min(side, g.N);
        DyadicCube q;
        q.level = ilog2(std::uint64_t(g.N)) - ilog2(std::uint64_t(side));
        q.corner[0] = std::min(xlo, g.N - side);
        q.corner[1] = g.dim == 2 ? std::min(ylo, g.N - side) : 0;
        auto [lambda, blk] = make_block(piece, q, mp.p, mp.s, m.weight);
        BlockTerm t;
        t.lambda = lambda;
        t.block = std::move(blk);
        t.tag = k;
        out.decomp.terms.push_back(std::move(t));
    }
    return out;
}

double molecule_decay_exponent(const MoleculeParams& mp, double r, int dim) {
    if (!(r > 1)) throw std::invalid_argument("molecule_decay_exponent: r must exceed 1");
    double a = mp.a(), b = mp.b();
    double inv_s = std::isinf(mp.s) ? 0.0 : 1.0 / mp.s;
    return double(dim) * ((r - 1.0) / r - mp.p * inv_s) * a / ((b - a) * mp.p);
}

} // namespace wbench
