#include "wbench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wbench/blocks.hpp"
#include "wbench/maximal.hpp"
#include "wbench/util.hpp"

namespace wbench {

namespace {

std::vector<std::string> split_parts(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Worst adjacent-rung ratio, normalized >= 1. Two zero rungs agree; a zero
// against a nonzero is unstable.
double ladder_ratio(const std::vector<std::pair<int, double>>& sups) {
    double worst = 1;
    for (std::size_t i = 0; i + 1 < sups.size(); ++i) {
        double a = sups[i].second, b = sups[i + 1].second;
        double r;
        if (a == 0 && b == 0)
            r = 1;
        else if (a == 0 || b == 0)
            r = kInf;
        else
            r = std::max(a / b, b / a);
        worst = std::max(worst, r);
    }
    return worst;
}

int pow2_floor(int v) {
    int r = 1;
    while (2 * r <= v) r *= 2;
    return r;
}

// Block sides at rung n, scaled from the coarsest rung so the physical
// support scales stay fixed across the resolution ladder.
std::vector<int> scaled_sides(const ExperimentConfig& cfg, int n) {
    int base = cfg.resolutions.empty() ? n : cfg.resolutions.front();
    std::vector<int> out;
    for (int s0 : cfg.block_sides) {
        std::int64_t scaled = std::int64_t(s0) * n / std::max(1, base);
        out.push_back(pow2_floor(int(std::clamp<std::int64_t>(scaled, 1, n))));
    }
    if (out.empty()) out.push_back(std::max(1, n / 8));
    return out;
}

std::uint64_t trial_key(int n, std::size_t t) {
    return (std::uint64_t(std::uint32_t(n)) << 32) | std::uint64_t(t);
}

void note_summary(BoundReport& r) {
    std::ostringstream os;
    os << "sup=" << r.sup << " median=" << r.median << " stability=" << r.stability;
    r.notes.push_back(os.str());
    if (!r.gates.ok) {
        r.notes.push_back("hypothesis not met");
        for (const auto& v : r.gates.violations) r.notes.push_back(v);
    }
}

void fit_resolution_slope(BoundReport& r) {
    std::vector<double> xs, ys;
    for (const auto& pr : r.per_resolution)
        if (pr.second > 0) {
            xs.push_back(std::log(double(pr.first)));
            ys.push_back(std::log(pr.second));
        }
    if (xs.size() >= 2) r.slope = fit_slope(xs, ys);
}

bool empty_experiment(const ExperimentConfig& cfg, BoundReport& r) {
    if (cfg.trials > 0 && !cfg.resolutions.empty()) return false;
    r.notes.push_back("empty experiment");
    r.pass = true;
    return true;
}

} // namespace

WeightBuilder weight_from_descriptor(const std::string& descriptor) {
    std::vector<std::string> parts = split_parts(descriptor, ':');
    if (!parts.empty() && parts[0] == "builtin") parts.erase(parts.begin());
    if (parts.empty()) throw std::invalid_argument("empty weight descriptor");
    const std::string& kind = parts[0];
    if (kind == "power") {
        if (parts.size() != 2) throw std::invalid_argument("weight descriptor: power:<alpha>");
        return power_weight_builder(std::stod(parts[1]));
    }
    if (kind == "const") {
        if (parts.size() > 2) throw std::invalid_argument("weight descriptor: const[:<c>]");
        return constant_weight_builder(parts.size() == 2 ? std::stod(parts[1]) : 1.0);
    }
    if (kind == "step") {
        if (parts.size() != 3) throw std::invalid_argument("weight descriptor: step:<a>:<b>");
        return step_weight_builder(std::stod(parts[1]), std::stod(parts[2]));
    }
    throw std::invalid_argument("unknown weight descriptor: " + descriptor);
}

GateStatus evaluate_gates(const ExperimentConfig& cfg, bool for_bh) {
    GateStatus gs;
    auto fail = [&](const std::string& m) {
        gs.ok = false;
        gs.violations.push_back(m);
    };
    if (!(cfg.q > 0 && cfg.q < cfg.p)) fail("exponent gate: need 0 < q < p");
    if (!(cfg.s > 1)) fail("integrability gate: need s > 1");

    WeightBuilder builder = weight_from_descriptor(cfg.weight);
    GridSpec base{cfg.dim, cfg.L, 4};
    CriticalIndexOptions ci_opt;
    ci_opt.base_N = cfg.dim == 1 ? 128 : 16;
    if (!cfg.resolutions.empty()) ci_opt.base_N = std::min(ci_opt.base_N, cfg.resolutions.front());
    base.N = ci_opt.base_N;
    CriticalIndexResult ci = critical_index(builder, base, ci_opt);
    gs.r_w = ci.unbounded ? kInf : ci.value;
    gs.r_w_unbounded = ci.unbounded;
    double s_min = ci.unbounded ? cfg.p : gs.r_w * cfg.p / (gs.r_w - 1.0);
    if (!(cfg.s > s_min)) {
        std::ostringstream os;
        os << "integrability gate: need s > r_w p/(r_w - 1) = " << s_min;
        fail(os.str());
    }
    if (for_bh && !(cfg.s > cfg.p / cfg.q)) fail("molecule gate: need s > p/q");

    int n0 = cfg.resolutions.empty() ? 256 : cfg.resolutions.front();
    GridSpec g0{cfg.dim, cfg.L, n0};
    g0.validate();
    CubeFamilyOptions fam;
    if (cfg.dim == 2) fam.stride_div = 2;
    gs.aplus = aplus_constant(builder(g0), cfg.q, fam).constant;
    if (!std::isfinite(gs.aplus)) fail("weight gate: A^+ constant unbounded at the block exponent");
    return gs;
}

Block random_block(std::mt19937_64& rng, const GridSpec& g, std::shared_ptr<const Weight> w,
                   double p, double s, const std::vector<int>& sides, bool rough) {
    if (sides.empty()) throw std::invalid_argument("random_block: empty side list");
    std::uniform_int_distribution<int> pick(0, int(sides.size()) - 1);
    int side = pow2_floor(std::clamp(sides[std::size_t(pick(rng))], 1, g.N));
    DyadicCube q;
    q.level = ilog2(std::uint64_t(g.N)) - ilog2(std::uint64_t(side));
    std::uniform_int_distribution<int> corner(0, g.N - side);
    q.corner[0] = corner(rng);
    q.corner[1] = g.dim == 2 ? corner(rng) : 0;

    const int sy = g.dim == 2 ? side : 1;
    const int cy = g.dim == 2 ? q.corner[1] : 0;
    GridFunction prof(g);
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    if (rough) {
        // Sign-balanced amplitudes: exactly half the cells of each sign, so
        // the far field of singular kernels sees heavy cancellation.
        std::size_t cells = std::size_t(side) * std::size_t(sy);
        std::vector<double> sign(cells);
        for (std::size_t i = 0; i < cells; ++i) sign[i] = (i % 2 == 0) ? 1.0 : -1.0;
        std::shuffle(sign.begin(), sign.end(), rng);
        std::size_t idx = 0;
        for (int iy = cy; iy < cy + sy; ++iy)
            for (int ix = q.corner[0]; ix < q.corner[0] + side; ++ix)
                prof.at(ix, iy) = sign[idx++] * mag(rng);
    } else {
        // Centered one-signed bump; vanishing first moment keeps far fields
        // near the mean-value prediction.
        double amp = mag(rng) * ((rng() & 1) ? 1.0 : -1.0);
        auto bump = [side](int off) {
            double u = (double(off) + 0.5) / double(side);
            double b = 4.0 * u * (1.0 - u);
            return b * b;
        };
        for (int iy = cy; iy < cy + sy; ++iy)
            for (int ix = q.corner[0]; ix < q.corner[0] + side; ++ix) {
                double v = amp * bump(ix - q.corner[0]);
                if (g.dim == 2) v *= bump(iy - cy);
                prof.at(ix, iy) = v;
            }
    }
    return make_block(prof, q, p, s, w).second;
}

GridFunction random_field(std::mt19937_64& rng, const GridSpec& g, bool rough) {
    GridFunction f(g);
    std::uniform_int_distribution<int> ncomp(2, 4);
    std::uniform_real_distribution<double> cdist(-0.75 * g.L, 0.75 * g.L);
    std::uniform_real_distribution<double> hwdist(0.05 * g.L, 0.35 * g.L);
    std::uniform_real_distribution<double> ampdist(0.5, 2.0);
    const int nc = ncomp(rng);
    for (int c = 0; c < nc; ++c) {
        double cx = cdist(rng);
        double cyc = g.dim == 2 ? cdist(rng) : 0.0;
        double hw = hwdist(rng);
        double amp = ampdist(rng) * ((rng() & 1) ? 1.0 : -1.0);
        bool ramp = (rng() & 1) != 0;
        for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
            for (int ix = 0; ix < g.N; ++ix) {
                double d = std::abs(g.mid(ix) - cx);
                if (g.dim == 2) d = std::max(d, std::abs(g.mid(iy) - cyc));
                if (d < hw) f.at(ix, iy) += ramp ? amp * (1.0 - d / hw) : amp;
            }
    }
    if (rough) {
        std::uniform_real_distribution<double> noise(-0.15, 0.15);
        for (double& v : f.samples) v += noise(rng);
    }
    if (gf_max_abs(f) == 0) f.samples[f.size() / 2] = 1.0;
    return f;
}

BoundReport uniform_block_bound(const OperatorHandle& T, const ExperimentConfig& cfg) {
    BoundReport r;
    r.name = "uniform_block_bound[" + T.name + "]";
    r.columns = {"N", "trial", "side_cells", "value"};
    if (empty_experiment(cfg, r)) return r;
    r.gates = evaluate_gates(cfg, false);
    WeightBuilder builder = weight_from_descriptor(cfg.weight);
    std::vector<double> all_vals;
    for (int n : cfg.resolutions) {
        GridSpec g{cfg.dim, cfg.L, n};
        g.validate();
        auto w = std::make_shared<const Weight>(builder(g));
        std::vector<int> sides = scaled_sides(cfg, n);
        std::vector<double> vals(std::size_t(cfg.trials), 0.0);
        std::vector<double> side_used(std::size_t(cfg.trials), 0.0);
        parallel_for(std::size_t(cfg.trials), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                std::mt19937_64 rng = substream(cfg.seed, trial_key(n, t));
                Block b = random_block(rng, g, w, cfg.p, cfg.s, sides, t % 2 == 0);
                vals[t] = lpw_norm(T.apply(b.samples), cfg.p, *w);
                side_used[t] = double(side_cells(g, b.support));
            }
        });
        double sup = 0;
        std::map<int, double> by_side;
        for (std::size_t t = 0; t < vals.size(); ++t) {
            r.rows.push_back({double(n), double(t), side_used[t], vals[t]});
            sup = std::max(sup, vals[t]);
            all_vals.push_back(vals[t]);
            double& slot = by_side[int(side_used[t])];
            slot = std::max(slot, vals[t]);
        }
        r.per_resolution.emplace_back(n, sup);
        r.sup = std::max(r.sup, sup);
        if (n == cfg.resolutions.back())
            for (const auto& kv : by_side) r.per_scale.emplace_back(kv.first, kv.second);
    }
    r.median = median_of(all_vals);
    r.stability = std::max(ladder_ratio(r.per_resolution), ladder_ratio(r.per_scale));
    fit_resolution_slope(r);
    r.pass = std::isfinite(r.sup) && r.stability <= cfg.stability_factor;
    note_summary(r);
    return r;
}

BoundReport decomposition_inequality(const OperatorHandle& T, const ExperimentConfig& cfg) {
    BoundReport r;
    r.name = "decomposition_inequality[" + T.name + "]";
    r.columns = {"N", "trial", "terms", "quasinorm", "opnorm", "ratio"};
    if (empty_experiment(cfg, r)) return r;
    r.gates = evaluate_gates(cfg, false);
    WeightBuilder builder = weight_from_descriptor(cfg.weight);
    std::vector<double> all_ratios;
    for (int n : cfg.resolutions) {
        GridSpec g{cfg.dim, cfg.L, n};
        g.validate();
        auto w = std::make_shared<const Weight>(builder(g));
        std::vector<int> sides = scaled_sides(cfg, n);
        std::vector<double> vals(std::size_t(cfg.trials), 0.0);
        std::vector<double> qns(std::size_t(cfg.trials), 0.0);
        std::vector<double> ons(std::size_t(cfg.trials), 0.0);
        std::vector<double> terms(std::size_t(cfg.trials), 0.0);
        parallel_for(std::size_t(cfg.trials), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                std::mt19937_64 rng = substream(cfg.seed, trial_key(n, t));
                std::uniform_int_distribution<int> nterms(1, 5);
                std::uniform_real_distribution<double> unit(0.5, 1.0);
                BlockDecomposition d;
                d.p = cfg.p;
                d.s = cfg.s;
                d.weight = w;
                const int k_count = nterms(rng);
                for (int k = 0; k < k_count; ++k) {
                    double lam = unit(rng) * std::ldexp(1.0, -k);
                    Block b = random_block(rng, g, w, cfg.p, cfg.s, sides, (t + std::size_t(k)) % 2 == 0);
                    d.terms.push_back({lam, std::move(b), k});
                }
                GridFunction f = reconstruct(d);
                qns[t] = coefficient_quasinorm(d);
                ons[t] = lpw_norm(T.apply(f), cfg.p, *w);
                vals[t] = qns[t] > 0 ? ons[t] / qns[t] : 0.0;
                terms[t] = double(k_count);
            }
        });
        double sup = 0;
        for (std::size_t t = 0; t < vals.size(); ++t) {
            r.rows.push_back({double(n), double(t), terms[t], qns[t], ons[t], vals[t]});
            sup = std::max(sup, vals[t]);
            all_ratios.push_back(vals[t]);
        }
        r.per_resolution.emplace_back(n, sup);
        r.sup = std::max(r.sup, sup);
    }
    r.median = median_of(all_ratios);
    r.stability = ladder_ratio(r.per_resolution);
    fit_resolution_slope(r);
    r.pass = std::isfinite(r.sup) && r.stability <= cfg.stability_factor;
    note_summary(r);
    return r;
}

BoundReport bh_block_bound(const OperatorHandle& T, const ExperimentConfig& cfg) {
    BoundReport r;
    r.name = "bh_block_bound[" + T.name + "]";
    r.columns = {"N", "trial", "side_cells", "R", "quasinorm", "ratio", "recon_err"};
    if (empty_experiment(cfg, r)) return r;
    r.gates = evaluate_gates(cfg, true);
    WeightBuilder builder = weight_from_descriptor(cfg.weight);
    std::vector<double> all_R;
    double max_recon = 0, sup_ratio = 0;
    for (int n : cfg.resolutions) {
        GridSpec g{cfg.dim, cfg.L, n};
        g.validate();
        auto w = std::make_shared<const Weight>(builder(g));
        std::vector<int> sides = scaled_sides(cfg, n);
        std::vector<double> Rs(std::size_t(cfg.trials), 0.0);
        std::vector<double> qns(std::size_t(cfg.trials), 0.0);
        std::vector<double> recon(std::size_t(cfg.trials), 0.0);
        std::vector<double> side_used(std::size_t(cfg.trials), 0.0);
        parallel_for(std::size_t(cfg.trials), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                std::mt19937_64 rng = substream(cfg.seed, trial_key(n, t));
                Block b = random_block(rng, g, w, cfg.p, cfg.s, sides, t % 2 == 0);
                GridFunction tb = T.apply(b.samples);
                Molecule m;
                m.samples = tb;
                m.center = cube_center(g, b.support);
                m.params = MoleculeParams{cfg.p, cfg.s, cfg.q, cfg.eps};
                m.weight = w;
                Rs[t] = molecule_R(m);
                MoleculeSplit split = molecule_to_blocks(m);
                qns[t] = coefficient_quasinorm(split.decomp);
                double err = 0;
                if (split.decomp.terms.empty()) {
                    err = gf_max_abs(tb);
                } else {
                    GridFunction rec = reconstruct(split.decomp);
                    for (std::size_t i = 0; i < rec.size(); ++i)
                        err = std::max(err, std::abs(rec.samples[i] - tb.samples[i]));
                }
                recon[t] = err;
                side_used[t] = double(side_cells(g, b.support));
            }
        });
        double sup = 0;
        std::map<int, double> by_side;
        for (std::size_t t = 0; t < Rs.size(); ++t) {
            double ratio = Rs[t] > 0 ? qns[t] / Rs[t] : 0.0;
            r.rows.push_back({double(n), double(t), side_used[t], Rs[t], qns[t], ratio, recon[t]});
            sup = std::max(sup, Rs[t]);
            sup_ratio = std::max(sup_ratio, ratio);
            max_recon = std::max(max_recon, recon[t]);
            all_R.push_back(Rs[t]);
            double& slot = by_side[int(side_used[t])];
            slot = std::max(slot, Rs[t]);
        }
        r.per_resolution.emplace_back(n, sup);
        r.sup = std::max(r.sup, sup);
        if (n == cfg.resolutions.back())
            for (const auto& kv : by_side) r.per_scale.emplace_back(kv.first, kv.second);
    }
    r.median = median_of(all_R);
    r.stability = std::max(ladder_ratio(r.per_resolution), ladder_ratio(r.per_scale));
    fit_resolution_slope(r);
    r.pass = std::isfinite(r.sup) && r.stability <= cfg.stability_factor && max_recon <= 1e-10;
    {
        std::ostringstream os;
        os << "quasinorm/R sup=" << sup_ratio << " max recon err=" << max_recon;
        r.notes.push_back(os.str());
    }
    note_summary(r);
    return r;
}

BoundReport whitney_check(const ExperimentConfig& cfg) {
    BoundReport r;
    r.name = "whitney_check";
    r.columns = {"N", "trial", "recon_err", "level_excess", "ratio"};
    if (empty_experiment(cfg, r)) return r;
    r.gates = evaluate_gates(cfg, false);
    WeightBuilder builder = weight_from_descriptor(cfg.weight);
    std::vector<double> all_ratios;
    double max_recon = 0, max_excess = 0;
    for (int n : cfg.resolutions) {
        GridSpec g{cfg.dim, cfg.L, n};
        g.validate();
        auto w = std::make_shared<const Weight>(builder(g));
        std::vector<double> ratios(std::size_t(cfg.trials), 0.0);
        std::vector<double> recon(std::size_t(cfg.trials), 0.0);
        std::vector<double> excess(std::size_t(cfg.trials), 0.0);
        parallel_for(std::size_t(cfg.trials), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                std::mt19937_64 rng = substream(cfg.seed, trial_key(n, t));
                GridFunction f = random_field(rng, g, t % 2 == 0);
                BlockDecomposition d = decompose_ml(f, cfg.p, cfg.s, w);
                double err = 0;
                if (d.terms.empty()) {
                    err = gf_max_abs(f);
                } else {
                    GridFunction rec = reconstruct(d);
                    for (std::size_t i = 0; i < rec.size(); ++i)
                        err = std::max(err, std::abs(rec.samples[i] - f.samples[i]));
                }
                recon[t] = err;
                double worst = 0;
                for (const BlockTerm& term : d.terms) {
                    double cap = 3.0 * std::ldexp(1.0, term.tag);
                    double peak = std::abs(term.lambda) * gf_max_abs(term.block.samples);
                    worst = std::max(worst, peak / cap);
                }
                excess[t] = worst;
                double ml = ml_quasinorm(f, cfg.p, *w);
                double qn = coefficient_quasinorm(d);
                ratios[t] = ml > 0 ? qn / ml : 0.0;
            }
        });
        double sup = 0;
        for (std::size_t t = 0; t < ratios.size(); ++t) {
            r.rows.push_back({double(n), double(t), recon[t], excess[t], ratios[t]});
            sup = std::max(sup, ratios[t]);
            max_recon = std::max(max_recon, recon[t]);
            max_excess = std::max(max_excess, excess[t]);
            all_ratios.push_back(ratios[t]);
        }
        r.per_resolution.emplace_back(n, sup);
        r.sup = std::max(r.sup, sup);
    }
    r.median = median_of(all_ratios);
    r.stability = ladder_ratio(r.per_resolution);
    fit_resolution_slope(r);
    r.pass = r.stability <= cfg.stability_factor && max_recon <= 1e-10 && max_excess <= 1.0 + 1e-9;
    {
        std::ostringstream os;
        os << "max recon err=" << max_recon << " max level excess=" << max_excess;
        r.notes.push_back(os.str());
    }
    note_summary(r);
    return r;
}

BoundReport duality_check(const ExperimentConfig& cfg) {
    BoundReport r;
    r.name = "duality_check";
    r.columns = {"N", "trial", "kind", "ratio"}; // kind 0 = single block, 1 = multi
    if (empty_experiment(cfg, r)) return r;
    r.gates = evaluate_gates(cfg, false);
    WeightBuilder builder = weight_from_descriptor(cfg.weight);
    const CubeFamilyOptions fam; // full family: block support cubes must be members
    std::vector<double> all_ratios;
    double single_sup = 0;
    for (int n : cfg.resolutions) {
        GridSpec g{cfg.dim, cfg.L, n};
        g.validate();
        auto w = std::make_shared<const Weight>(builder(g));
        std::vector<int> sides = scaled_sides(cfg, n);
        std::vector<double> singles(std::size_t(cfg.trials), 0.0);
        std::vector<double> multis(std::size_t(cfg.trials), 0.0);
        parallel_for(std::size_t(cfg.trials), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                std::mt19937_64 rng = substream(cfg.seed, trial_key(n, t));
                std::uniform_real_distribution<double> unit(0.5, 1.0);
                GridFunction gf = random_field(rng, g, false);
                BlockDecomposition ds;
                ds.p = cfg.p;
                ds.s = cfg.s;
                ds.weight = w;
                ds.terms.push_back({1.0, random_block(rng, g, w, cfg.p, cfg.s, sides, t % 2 == 0), 0});
                singles[t] = duality_pairing_check(ds, gf, fam).ratio;
                BlockDecomposition dm;
                dm.p = cfg.p;
                dm.s = cfg.s;
                dm.weight = w;
                const int k_count = 3 + int(t % 3);
                for (int k = 0; k < k_count; ++k) {
                    double lam = unit(rng) * std::ldexp(1.0, -k);
                    dm.terms.push_back(
                        {lam, random_block(rng, g, w, cfg.p, cfg.s, sides, (t + std::size_t(k)) % 2 == 0), k});
                }
                multis[t] = duality_pairing_check(dm, gf, fam).ratio;
            }
        });
        double sup = 0;
        for (std::size_t t = 0; t < singles.size(); ++t) {
            r.rows.push_back({double(n), double(t), 0.0, singles[t]});
            r.rows.push_back({double(n), double(t), 1.0, multis[t]});
            single_sup = std::max(single_sup, singles[t]);
            sup = std::max(sup, std::max(singles[t], multis[t]));
            all_ratios.push_back(singles[t]);
            all_ratios.push_back(multis[t]);
        }
        r.per_resolution.emplace_back(n, sup);
        r.sup = std::max(r.sup, sup);
    }
    r.median = median_of(all_ratios);
    r.stability = ladder_ratio(r.per_resolution);
    r.pass = single_sup <= 1.0 + 1e-9 && std::isfinite(r.sup) && r.stability <= cfg.stability_factor;
    {
        std::ostringstream os;
        os << "single-block sup=" << single_sup;
        r.notes.push_back(os.str());
    }
    note_summary(r);
    return r;
}

BoundReport sharpness_study(const ExperimentConfig& cfg) {
    BoundReport r;
    r.name = "sharpness_study";
    r.columns = {"study", "x", "l1", "l2"}; // study 0: L ladder; study 1: scale growth
    if (cfg.sharpness_L.empty()) throw std::invalid_argument("sharpness_study: empty L ladder");
    std::vector<double> xs, v1s, v2s;
    for (double L : cfg.sharpness_L) {
        double cells = double(cfg.cells_per_unit) * 2.0 * L;
        int n = int(std::lround(cells));
        if (std::abs(cells - double(n)) > 1e-9 || !is_pow2(std::uint64_t(n)))
            throw std::invalid_argument("sharpness_study: cells_per_unit * 2L must be a power of two");
        GridSpec g{1, L, n};
        g.validate();
        GridFunction f(g);
        for (int ix = 0; ix < n; ++ix)
            if (g.mid(ix) > 0 && g.mid(ix) < 1) f.at(ix) = 1.0;
        GridFunction M = hl_maximal(f);
        double v1 = integrate_all(M);
        double v2 = lpw_norm(M, 2.0, constant_weight(g, 1.0));
        r.rows.push_back({0.0, L, v1, v2});
        xs.push_back(std::log(L));
        v1s.push_back(v1);
        v2s.push_back(v2);
        r.per_resolution.emplace_back(n, v1);
    }
    double slope1 = fit_slope(xs, v1s);
    double slope2 = fit_slope(xs, v2s);
    r.slope = slope1;
    r.sup = *std::max_element(v1s.begin(), v1s.end());
    r.median = median_of(v1s);
    r.stability = ladder_ratio(r.per_resolution);

    // Growth study at q = p = 1, w identically 1: the sup of ||M b||_{L^1}
    // over blocks must grow as the support scale shrinks.
    int n2 = cfg.resolutions.empty() ? 512 : cfg.resolutions.back();
    GridSpec g2{1, cfg.L, n2};
    g2.validate();
    auto w2 = std::make_shared<const Weight>(constant_weight(g2, 1.0));
    OperatorHandle M_op = make_operator("hl_max");
    std::vector<int> sides = scaled_sides(cfg, n2);
    const int per_side = std::max(8, cfg.trials / std::max(1, int(sides.size())));
    double growth_lo = 0, growth_hi = 0;
    for (std::size_t si = 0; si < sides.size(); ++si) {
        std::vector<double> vals(std::size_t(per_side), 0.0);
        parallel_for(vals.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                std::mt19937_64 rng =
                    substream(cfg.seed, (std::uint64_t(0xA5) << 48) | (std::uint64_t(si) << 32) | t);
                Block b = random_block(rng, g2, w2, 1.0, cfg.s, {sides[si]}, t % 2 == 0);
                vals[t] = lpw_norm(M_op.apply(b.samples), 1.0, *w2);
            }
        });
        double sup = *std::max_element(vals.begin(), vals.end());
        r.rows.push_back({1.0, double(sides[si]), sup, 0.0});
        r.per_scale.emplace_back(sides[si], sup);
        if (si == 0) growth_lo = sup;
        if (si + 1 == sides.size()) growth_hi = sup;
    }
    double growth_ratio = growth_hi > 0 ? growth_lo / growth_hi : kInf;
    r.pass = std::abs(slope1 - 2.0) <= 0.3 && std::abs(slope2) <= 0.1 && growth_ratio > 1.0;
    std::ostringstream os;
    os << "L1 slope=" << slope1 << " L2 slope=" << slope2 << " scale growth=" << growth_ratio;
    r.notes.push_back(os.str());
    return r;
}

} // namespace wbench
