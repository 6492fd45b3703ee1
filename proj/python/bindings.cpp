// Python surface: numpy arrays in, numpy arrays or plain dicts out. The
// grid convention matches the C++ side: cell i covers
// [-L + i h, -L + (i+1) h), samples at midpoints, 2D arrays are [iy, ix].

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wbench/blocks.hpp"
#include "wbench/cli.hpp"
#include "wbench/verify.hpp"

namespace py = pybind11;
using namespace wbench;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridSpec spec_for(const Array& arr, double L) {
    GridSpec g;
    if (arr.ndim() == 1) {
        g.dim = 1;
        g.N = int(arr.shape(0));
    } else if (arr.ndim() == 2) {
        if (arr.shape(0) != arr.shape(1))
            throw std::invalid_argument("2D fields must be square arrays");
        g.dim = 2;
        g.N = int(arr.shape(0));
    } else {
        throw std::invalid_argument("expected a 1D or 2D array");
    }
    g.L = L;
    g.validate();
    return g;
}

GridFunction to_gf(const Array& arr, double L) {
    GridFunction f(spec_for(arr, L));
    std::memcpy(f.samples.data(), arr.data(), sizeof(double) * f.samples.size());
    return f;
}

py::array_t<double> from_gf(const GridFunction& f) {
    py::array_t<double> out;
    if (f.spec.dim == 1)
        out = py::array_t<double>(f.spec.N);
    else
        out = py::array_t<double>({f.spec.N, f.spec.N});
    std::memcpy(out.mutable_data(), f.samples.data(), sizeof(double) * f.samples.size());
    return out;
}

std::shared_ptr<const Weight> to_weight(const Array& arr, double L) {
    return std::make_shared<const Weight>(Weight(to_gf(arr, L)));
}

py::dict report_dict(const GridSpec& g, const WeightReport& r) {
    py::dict d;
    d["constant"] = r.constant;
    d["cubes_scanned"] = r.cubes_scanned;
    d["cubes_skipped"] = r.cubes_skipped;
    if (r.witness) {
        py::dict wd;
        wd["level"] = r.witness->cube.level;
        wd["corner"] = py::make_tuple(r.witness->cube.corner[0], r.witness->cube.corner[1]);
        wd["side_cells"] = side_cells(g, r.witness->cube);
        wd["subset_cells"] = r.witness->subset_cells;
        wd["lambda"] = r.witness->lambda;
        d["witness"] = wd;
    }
    return d;
}

py::list terms_list(const GridSpec& g, const BlockDecomposition& d) {
    py::list out;
    for (const BlockTerm& t : d.terms) {
        py::dict td;
        td["lambda"] = t.lambda;
        td["tag"] = t.tag;
        td["corner"] = py::make_tuple(t.block.support.corner[0], t.block.support.corner[1]);
        td["side_cells"] = side_cells(g, t.block.support);
        out.append(td);
    }
    return out;
}

double recon_error(const BlockDecomposition& d, const GridFunction& target) {
    if (d.terms.empty()) return gf_max_abs(target);
    GridFunction rec = reconstruct(d);
    double err = 0;
    for (std::size_t i = 0; i < rec.size(); ++i)
        err = std::max(err, std::abs(rec.samples[i] - target.samples[i]));
    return err;
}

} // namespace

PYBIND11_MODULE(_weightbench, m) {
    m.doc() = "grid-scale weight classes, block decompositions, and operator bounds";

    m.def("version", [] { return std::string(kVersion); });

    m.def(
        "weight_by_descriptor",
        [](const std::string& desc, int dim, double L, int N) {
            GridSpec g{dim, L, N};
            g.validate();
            return from_gf(weight_from_descriptor(desc)(g).values());
        },
        py::arg("descriptor"), py::arg("dim") = 1, py::arg("L") = 2.0, py::arg("N") = 512,
        "Cell values of a named weight: power:<alpha>, const[:<c>], step:<a>:<b>");

    m.def(
        "aplus_constant",
        [](const Array& w, double q, double L) {
            Weight wt(to_gf(w, L));
            return report_dict(wt.spec(), aplus_constant(wt, q));
        },
        py::arg("w"), py::arg("q"), py::arg("L") = 2.0);

    m.def(
        "ap_constant",
        [](const Array& w, double p, double L) {
            Weight wt(to_gf(w, L));
            return report_dict(wt.spec(), ap_constant(wt, p));
        },
        py::arg("w"), py::arg("p"), py::arg("L") = 2.0);

    m.def(
        "doubling_constant",
        [](const Array& w, double p, double lam, double L) {
            Weight wt(to_gf(w, L));
            return report_dict(wt.spec(), doubling_constant(wt, p, lam));
        },
        py::arg("w"), py::arg("p"), py::arg("lam"), py::arg("L") = 2.0);

    m.def(
        "reverse_holder_constant",
        [](const Array& w, double r, double L) {
            Weight wt(to_gf(w, L));
            return report_dict(wt.spec(), reverse_holder_constant(wt, r));
        },
        py::arg("w"), py::arg("r"), py::arg("L") = 2.0);

    m.def(
        "critical_index",
        [](const std::string& desc, int dim, double L, int base_N, int doublings) {
            GridSpec base{dim, L, base_N};
            base.validate();
            CriticalIndexOptions opt;
            opt.base_N = base_N;
            opt.doublings = doublings;
            CriticalIndexResult res = critical_index(weight_from_descriptor(desc), base, opt);
            py::dict d;
            d["r_w"] = res.unbounded ? std::numeric_limits<double>::infinity() : res.value;
            d["unbounded"] = res.unbounded;
            return d;
        },
        py::arg("descriptor"), py::arg("dim") = 1, py::arg("L") = 2.0, py::arg("base_N") = 128,
        py::arg("doublings") = 2);

    m.def(
        "hl_maximal", [](const Array& f, double L) { return from_gf(hl_maximal(to_gf(f, L))); },
        py::arg("f"), py::arg("L") = 1.0);

    m.def(
        "op_apply",
        [](const std::string& op, const Array& f, double L) {
            return from_gf(make_operator(op).apply(to_gf(f, L)));
        },
        py::arg("op"), py::arg("f"), py::arg("L") = 1.0,
        "Apply a named operator: identity, hilbert[:<eps>], hilbert_max, fourier:<freq>, "
        "fourier_max, hl_max, smooth_max");

    m.def(
        "lpw_norm",
        [](const Array& f, double p, const Array& w, double L) {
            return lpw_norm(to_gf(f, L), p, Weight(to_gf(w, L)));
        },
        py::arg("f"), py::arg("p"), py::arg("w"), py::arg("L") = 1.0);

    m.def(
        "decompose_ml",
        [](const Array& f_a, double p, double s, const Array& w_a, double L) {
            GridFunction f = to_gf(f_a, L);
            auto w = to_weight(w_a, L);
            BlockDecomposition d = decompose_ml(f, p, s, w);
            py::dict out;
            out["terms"] = terms_list(f.spec, d);
            out["quasinorm"] = coefficient_quasinorm(d);
            out["ml_quasinorm"] = ml_quasinorm(f, p, *w);
            out["recon_err"] = recon_error(d, f);
            return out;
        },
        py::arg("f"), py::arg("p"), py::arg("s"), py::arg("w"), py::arg("L") = 1.0);

    m.def(
        "molecule_R",
        [](const Array& m_a, std::pair<double, double> center, double p, double q, double s,
           double eps, const Array& w_a, double L) {
            Molecule mo{to_gf(m_a, L), {center.first, center.second},
                        MoleculeParams{p, s, q, eps}, to_weight(w_a, L)};
            return molecule_R(mo);
        },
        py::arg("m"), py::arg("center"), py::arg("p"), py::arg("q"), py::arg("s"),
        py::arg("eps"), py::arg("w"), py::arg("L") = 1.0);

    m.def(
        "molecule_to_blocks",
        [](const Array& m_a, std::pair<double, double> center, double p, double q, double s,
           double eps, const Array& w_a, double L) {
            GridFunction f = to_gf(m_a, L);
            Molecule mo{f, {center.first, center.second}, MoleculeParams{p, s, q, eps},
                        to_weight(w_a, L)};
            MoleculeSplit split = molecule_to_blocks(mo);
            py::dict out;
            out["l"] = split.l;
            out["k0"] = split.k0;
            out["clamped"] = split.clamped;
            out["terms"] = terms_list(f.spec, split.decomp);
            out["quasinorm"] = coefficient_quasinorm(split.decomp);
            out["recon_err"] = recon_error(split.decomp, f);
            return out;
        },
        py::arg("m"), py::arg("center"), py::arg("p"), py::arg("q"), py::arg("s"),
        py::arg("eps"), py::arg("w"), py::arg("L") = 1.0);

    m.def(
        "morrey_norm",
        [](const Array& g_a, double p, double sprime, const Array& w_a, double L) {
            return morrey_norm(to_gf(g_a, L), p, sprime, Weight(to_gf(w_a, L)));
        },
        py::arg("g"), py::arg("p"), py::arg("sprime"), py::arg("w"), py::arg("L") = 1.0);

    m.def("run_cli", [](const std::vector<std::string>& args) { return run(args); },
          py::arg("args"), "Run the weightbench CLI in-process; returns the exit code");
}
