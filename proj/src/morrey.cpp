#include "wbench/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wbench {

double morrey_norm(const GridFunction& g, double p, double sprime, const Weight& w,
                   const CubeFamilyOptions& fam) {
    if (!(g.spec == w.spec())) throw std::invalid_argument("morrey_norm: grid mismatch");
    if (!(p > 0)) throw std::invalid_argument("morrey_norm: p must be positive");
    if (!(sprime >= 1)) throw std::invalid_argument("morrey_norm: s' must be >= 1");
    const GridSpec& spec = g.spec;
    std::vector<DyadicCube> cubes = cube_family(spec, fam);
    double best = 0;
    for (const DyadicCube& Q : cubes) {
        int sc = side_cells(spec, Q);
        double m = spec.dim == 1 ? double(sc) : double(sc) * sc;
        double acc = 0, sup = 0;
        for (int iy = Q.corner[1]; iy < Q.corner[1] + (spec.dim == 2 ? sc : 1); ++iy)
            for (int ix = Q.corner[0]; ix < Q.corner[0] + sc; ++ix) {
                double v = std::abs(g.at(ix, spec.dim == 2 ? iy : 0));
                sup = std::max(sup, v);
                if (!std::isinf(sprime)) acc += std::pow(v, sprime);
            }
        double avg_term = std::isinf(sprime) ? sup : std::pow(acc / m, 1.0 / sprime);
        if (avg_term == 0) continue;
        double wq = w.mass(Q);
        double val = wq > 0 ? cube_volume(spec, Q) * std::pow(wq, -1.0 / p) * avg_term : kInf;
        best = std::max(best, val);
    }
    return best;
}

PairingCheck duality_pairing_check(const BlockDecomposition& d, const GridFunction& g,
                                   const CubeFamilyOptions& fam) {
    if (d.terms.empty()) throw std::invalid_argument("duality_pairing_check: empty decomposition");
    if (!d.weight) throw std::invalid_argument("duality_pairing_check: decomposition has no weight");
    GridFunction f = reconstruct(d);
    if (!(f.spec == g.spec)) throw std::invalid_argument("duality_pairing_check: grid mismatch");
    double h = f.spec.h();
    double vol = f.spec.dim == 1 ? h : h * h;
    double pairing = 0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) pairing += f.samples[i] * g.samples[i];
    pairing *= vol;
    double sprime = std::isinf(d.s) ? 1.0 : (d.s == 1.0 ? kInf : d.s / (d.s - 1.0));
    double mn = morrey_norm(g, d.p, sprime, *d.weight, fam);
    PairingCheck out;
    out.pairing = pairing;
    out.bound = coefficient_quasinorm(d) * mn;
    out.ratio = out.bound > 0 ? std::abs(pairing) / out.bound : 0.0;
    return out;
}

} // namespace wbench
