// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus the measured
// numbers, nonzero exit on any failure. Tolerances are pinned here, next to
// the criterion they guard.

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wbench/cli.hpp"
#include "wbench/io.hpp"

using namespace wbench;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kLadderFactor = 2.0;       // stability across ladders
constexpr double kReconTol = 1e-10;         // exact reconstruction budget
constexpr double kLevelSlack = 1.0 + 1e-9;  // cellwise level bound slack
constexpr double kFarFieldCap = 0.35;       // size condition budget (1/pi + slack)
constexpr double kPairingSlack = 1.0 + 1e-9;
constexpr double kSlopeTarget = 2.0, kSlopeRel = 0.15;
constexpr double kFlatSlopeBand = 0.1;
constexpr double kSpectralTol = 0.02;
constexpr double kBudget1 = 30.0, kBudget3 = 180.0; // seconds

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* name, bool ok, const std::string& detail, double secs) {
    std::printf("[%s] %2d %-22s %s (%.1fs)\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.dim = 1;
    cfg.L = 2.0;
    cfg.weight = "power:0.3";
    cfg.p = 2.0;
    cfg.s = 8.0;
    cfg.q = 1.5;
    cfg.resolutions = {512, 1024};
    cfg.block_sides = {4, 8, 16, 32, 64}; // four octaves of support scale
    cfg.trials = 200;
    cfg.seed = 20250822;
    return cfg;
}

// Runs the CLI with its stdout parked on /dev/null; the suite owns the tty.
int run_quiet(const std::vector<std::string>& args) {
    std::fflush(stdout);
    int saved = dup(1);
    int devnull = open("/dev/null", O_WRONLY);
    dup2(devnull, 1);
    int rc = run(args);
    std::fflush(stdout);
    dup2(saved, 1);
    close(devnull);
    close(saved);
    return rc;
}

double ratio_of(double a, double b) {
    if (a == b) return 1.0;
    if (a <= 0 || b <= 0 || !std::isfinite(a) || !std::isfinite(b)) return kInf;
    return a > b ? a / b : b / a;
}

GridFunction indicator01(const GridSpec& g) {
    return sample_function1(g, [](double x) { return x > 0 && x < 1 ? 1.0 : 0.0; });
}

// 1. Block size bound: sup ||b||_{L^p_w} over 200 blocks, N=512 vs N=1024.
void criterion1() {
    Timer t;
    ExperimentConfig cfg = base_config();
    BoundReport r = uniform_block_bound(make_operator("identity"), cfg);
    double res_ratio = ratio_of(r.per_resolution[0].second, r.per_resolution[1].second);
    bool ok = res_ratio <= kLadderFactor && std::isfinite(r.sup) && t.secs() <= kBudget1;
    report(1, "block size bound", ok,
           fmt("sup=%.4f res-ratio=%.3f budget=%.0fs", r.sup, res_ratio, kBudget1), t.secs());
}

// 2. Constructive decomposition: reconstruction, level bounds, norm ratio
//    stability between N=256 and N=512.
void criterion2() {
    Timer t;
    double p = 2.0;
    double worst_recon = 0, worst_excess = 0;
    double sup256 = 0, sup512 = 0;
    for (int N : {256, 512}) {
        GridSpec g{1, 2.0, N};
        auto w = std::make_shared<const Weight>(power_weight(g, 0.3));
        double sup = 0;
        for (int trial = 0; trial < 50; ++trial) {
            std::mt19937_64 rng = substream(777, (std::uint64_t(N) << 32) | trial);
            GridFunction f = random_field(rng, g, trial % 2 == 0);
            BlockDecomposition d = decompose_ml(f, p, 8.0, w);
            GridFunction rec = reconstruct(d);
            for (std::size_t i = 0; i < f.size(); ++i)
                worst_recon = std::max(worst_recon, std::abs(rec.samples[i] - f.samples[i]));
            for (const BlockTerm& term : d.terms) {
                double peak = std::abs(term.lambda) * gf_max_abs(term.block.samples);
                worst_excess =
                    std::max(worst_excess, peak / (3.0 * std::ldexp(1.0, term.tag)));
            }
            double qn = coefficient_quasinorm(d);
            double mn = ml_quasinorm(f, p, *w);
            if (mn > 0) sup = std::max(sup, qn / mn);
        }
        (N == 256 ? sup256 : sup512) = sup;
    }
    double stab = ratio_of(sup256, sup512);
    bool ok = worst_recon <= kReconTol && worst_excess <= kLevelSlack && stab <= kLadderFactor;
    report(2, "whitney decomposition", ok,
           fmt("recon=%.2e level-excess=%.4f ratio256/512=%.3f", worst_recon, worst_excess,
               stab),
           t.secs());
}

// 3. Uniform operator block bound for the four instances.
void criterion3() {
    Timer t;
    ExperimentConfig cfg = base_config();
    bool ok = true;
    std::string detail;
    for (const char* opname : {"hilbert:h", "hilbert_max", "hl_max", "fourier_max"}) {
        BoundReport r = uniform_block_bound(make_operator(opname), cfg);
        ok = ok && r.pass && r.stability <= kLadderFactor;
        if (!detail.empty()) detail += " ";
        detail += fmt("%s=%.3f", opname, r.stability);
    }
    ok = ok && t.secs() <= kBudget3;
    report(3, "operator block bound", ok, detail + fmt(" budget=%.0fs", kBudget3), t.secs());
}

// 4. Far-field size condition of the truncated transform on random blocks.
void criterion4() {
    Timer t;
    GridSpec g{1, 2.0, 1024};
    auto w = std::make_shared<const Weight>(power_weight(g, 0.3));
    OperatorHandle H = make_operator("hilbert:h");
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::mt19937_64 rng = substream(4242, trial);
        Block b = random_block(rng, g, w, 2.0, 8.0, {4, 8, 16, 32, 64}, trial % 2 == 0);
        if (gf_max_abs(b.samples) == 0) continue;
        SizeCheck sc = size_condition_check(H, b);
        worst = std::max(worst, sc.constant);
    }
    bool ok = worst <= kFarFieldCap;
    report(4, "size condition", ok, fmt("C=%.4f cap=%.2f", worst, kFarFieldCap), t.secs());
}

// 5. Molecule machinery: size functional of blocks bounded and stable;
//    split of the decaying family reconstructs and tracks the functional.
void criterion5() {
    Timer t;
    MoleculeParams mp{2.0, 8.0, 1.5, -1};

    // (a) R(b) over random blocks, stability across resolution and scale.
    std::vector<std::pair<int, double>> per_res;
    double scale_ratio = 1.0;
    for (int N : {512, 1024}) {
        GridSpec g{1, 2.0, N};
        auto w = std::make_shared<const Weight>(power_weight(g, 0.3));
        std::map<int, double> by_side;
        double sup = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::mt19937_64 rng = substream(555, (std::uint64_t(N) << 32) | trial);
            Block b = random_block(rng, g, w, 2.0, 8.0, {4, 8, 16, 32, 64}, trial % 2 == 0);
            if (gf_max_abs(b.samples) == 0) continue;
            Molecule m{b.samples, cube_center(g, b.support), mp, w};
            double R = molecule_R(m);
            sup = std::max(sup, R);
            int side = side_cells(g, b.support);
            by_side[side] = std::max(by_side[side], R);
        }
        per_res.push_back({N, sup});
        if (N == 1024) {
            double prev = -1;
            for (const auto& kv : by_side) {
                if (prev > 0) scale_ratio = std::max(scale_ratio, ratio_of(prev, kv.second));
                prev = kv.second;
            }
        }
    }
    double res_ratio = ratio_of(per_res[0].second, per_res[1].second);

    // (b) split of the synthetic decaying family.
    double worst_recon = 0;
    double c512 = 0, c1024 = 0;
    for (int N : {512, 1024}) {
        GridSpec g{1, 2.0, N};
        auto w = std::make_shared<const Weight>(power_weight(g, 0.3));
        double csup = 0;
        for (double gamma : {2.5, 3.0, 4.0})
            for (double ell : {0.05, 0.1, 0.25})
                for (double amp : {2.0, 5.0, 10.0}) {
                    GridFunction f = sample_function1(g, [&](double x) {
                        return amp * std::pow(1.0 + std::abs(x) / ell, -gamma);
                    });
                    Molecule m{f, {0.0, 0.0}, mp, w};
                    MoleculeSplit sp = molecule_to_blocks(m);
                    GridFunction rec = reconstruct(sp.decomp);
                    for (std::size_t i = 0; i < f.size(); ++i)
                        worst_recon =
                            std::max(worst_recon, std::abs(rec.samples[i] - f.samples[i]));
                    double R = molecule_R(m);
                    if (R > 0) csup = std::max(csup, coefficient_quasinorm(sp.decomp) / R);
                }
        (N == 512 ? c512 : c1024) = csup;
    }
    double c_ratio = ratio_of(c512, c1024);
    bool ok = std::isfinite(per_res[1].second) && res_ratio <= kLadderFactor &&
              scale_ratio <= kLadderFactor && worst_recon <= kReconTol &&
              c_ratio <= kLadderFactor;
    report(5, "molecule machinery", ok,
           fmt("R-res-ratio=%.3f R-scale-ratio=%.3f recon=%.2e C=%.3f C-ratio=%.3f", res_ratio,
               scale_ratio, worst_recon, c1024, c_ratio),
           t.secs());
}

// 6. Duality pairing: single-block exactness, multi-block stability.
void criterion6() {
    Timer t;
    double single_sup = 0;
    double multi256 = 0, multi512 = 0;
    for (int N : {256, 512}) {
        GridSpec g{1, 2.0, N};
        auto w = std::make_shared<const Weight>(power_weight(g, 0.3));
        double msup = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::mt19937_64 rng = substream(606, (std::uint64_t(N) << 32) | trial);
            BlockDecomposition d;
            d.p = 2.0;
            d.s = 8.0;
            d.weight = w;
            BlockTerm term;
            term.lambda = 1.0;
            term.block = random_block(rng, g, w, 2.0, 8.0, {4, 8, 16, 32}, trial % 2 == 0);
            d.terms = {term};
            GridFunction gfun = random_field(rng, g, false);
            if (N == 512) {
                PairingCheck pc = duality_pairing_check(d, gfun);
                if (pc.bound > 0) single_sup = std::max(single_sup, pc.ratio);
            }
            // Multi-block: 3..5 terms with dyadic coefficients.
            std::uniform_real_distribution<double> U(0.5, 1.0);
            for (int k = 1; k < 3 + int(trial % 3); ++k) {
                BlockTerm extra;
                extra.lambda = U(rng) * std::ldexp(1.0, -k);
                extra.block = random_block(rng, g, w, 2.0, 8.0, {4, 8, 16, 32}, k % 2 == 0);
                d.terms.push_back(extra);
            }
            PairingCheck pc = duality_pairing_check(d, gfun);
            if (pc.bound > 0) msup = std::max(msup, pc.ratio);
        }
        (N == 256 ? multi256 : multi512) = msup;
    }
    double stab = ratio_of(multi256, multi512);
    bool ok = single_sup <= kPairingSlack && std::isfinite(multi512) && stab <= kLadderFactor;
    report(6, "duality pairing", ok,
           fmt("single=%.6f multi=%.4f multi-ratio=%.3f", single_sup, multi512, stab),
           t.secs());
}

// 7. Sharpness of the maximal growth: L^1 slope near 2, L^2 slope flat.
void criterion7() {
    Timer t;
    std::vector<double> logL, v1, v2;
    for (double L : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        int N = int(32 * 2 * L);
        GridSpec g{1, L, N};
        GridFunction f = indicator01(g);
        GridFunction m = hl_maximal(f);
        Weight flatw = constant_weight(g);
        logL.push_back(std::log(L));
        v1.push_back(integrate_all(m));
        v2.push_back(lpw_norm(m, 2.0, flatw));
    }
    double s1 = fit_slope(logL, v1);
    double s2 = fit_slope(logL, v2);
    bool ok = std::abs(s1 - kSlopeTarget) <= kSlopeRel * kSlopeTarget &&
              std::abs(s2) <= kFlatSlopeBand;
    report(7, "sharpness slopes", ok, fmt("L1-slope=%.3f L2-slope=%.3f", s1, s2), t.secs());
}

// 8. Exact constants and greedy-vs-brute equivalence.
void criterion8() {
    Timer t;
    GridSpec g16{1, 2.0, 16};
    Weight flat16 = constant_weight(g16);
    double c1 = aplus_constant(flat16, 1.0).constant;
    double c2 = aplus_constant(flat16, 0.5).constant;

    // Brute force over every subset of every cube (all cubes here have
    // <= 12 cells at N = 8).
    GridSpec g8{1, 2.0, 8};
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> U(0.25, 4.0);
    GridFunction wf(g8);
    for (int i = 0; i < g8.N; ++i) wf.at(i) = U(rng);
    Weight w8{wf};
    double worst_gap = 0;
    for (double q : {0.5, 0.75, 1.0}) {
        double brute = 0;
        for (const DyadicCube& c : cube_family(g8)) {
            int mcells = side_cells(g8, c);
            double wq = w8.mass(c);
            for (unsigned mask = 1; mask < (1u << mcells); ++mask) {
                double we = 0;
                int k = 0;
                for (int b = 0; b < mcells; ++b)
                    if (mask & (1u << b)) {
                        we += w8.at(c.corner[0] + b) * g8.h();
                        ++k;
                    }
                brute = std::max(brute, std::pow(double(k) / mcells, q) / (we / wq));
            }
        }
        double greedy = aplus_constant(w8, q).constant;
        worst_gap = std::max(worst_gap, std::abs(greedy - brute) / brute);
    }
    bool ok = c1 == 1.0 && c2 == 4.0 && worst_gap <= 1e-12;
    report(8, "exact constants", ok,
           fmt("aplus(1,q=1)=%.17g aplus(1,q=.5)=%.17g greedy-gap=%.1e", c1, c2, worst_gap),
           t.secs());
}

// 9. Kernel-oracle equivalence: maximal brute force and spectral truncation.
void criterion9() {
    Timer t;
    bool bitwise = true;
    for (int N : {16, 32, 64}) {
        GridSpec g{1, 2.0, N};
        std::mt19937_64 rng = substream(909, N);
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        GridFunction f(g);
        for (double& v : f.samples) v = U(rng);
        GridFunction fast = hl_maximal(f);
        GridFunction slow = hl_maximal_brute(f);
        for (std::size_t i = 0; i < f.size(); ++i)
            if (fast.samples[i] != slow.samples[i]) bitwise = false;
    }

    const double pi = 3.14159265358979323846;
    GridSpec g{1, 2.0, 2048};
    double worst = 0;
    for (double carrier : {0.0, 1.0, 2.0}) {
        GridFunction f = sample_function1(g, [&](double x) {
            double env = std::abs(x) < 1 ? (1 - x * x) * (1 - x * x) : 0.0;
            return env * std::cos(2 * pi * carrier * x);
        });
        GridFunction s1 = fourier_partial_sum(f, 3.0 + carrier);
        GridFunction s2 = fourier_spectral_oracle(f, 3.0 + carrier);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            double d = s1.samples[i] - s2.samples[i];
            num += d * d;
            den += s2.samples[i] * s2.samples[i];
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    bool ok = bitwise && worst <= kSpectralTol;
    report(9, "kernel vs oracle", ok,
           fmt("maximal-bitwise=%s spectral-err=%.4f", bitwise ? "yes" : "no", worst), t.secs());
}

// 10. Determinism: every verify subcommand reproduces byte-identical CSVs.
void criterion10() {
    Timer t;
    fs::path dir = fs::temp_directory_path() / "wbench_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cfg = (dir / "small.cfg").string();
    atomic_write_text(cfg,
                      "exp.resolutions = 128,256\n"
                      "exp.trials = 8\n"
                      "exp.seed = 1234\n"
                      "sharp.L = 4,8,16\n"
                      "sharp.cells_per_unit = 16\n");
    bool ok = true;
    std::string detail;
    for (const char* sub : {"prop75", "thm71", "prop712", "whitney", "duality", "sharpness"}) {
        std::string a = (dir / (std::string(sub) + "_a.csv")).string();
        std::string b = (dir / (std::string(sub) + "_b.csv")).string();
        int r1 = run_quiet({"verify", sub, "--config", cfg, "--csv", a});
        int r2 = run_quiet({"verify", sub, "--config", cfg, "--csv", b});
        auto slurp = [](const std::string& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        std::string ta = slurp(a), tb = slurp(b);
        bool same = r1 == 0 && r2 == 0 && !ta.empty() && ta == tb;
        ok = ok && same;
        if (!same) detail += fmt(" %s!", sub);
    }
    fs::remove_all(dir);
    report(10, "determinism", ok, detail.empty() ? "all subcommands byte-identical" : detail,
           t.secs());
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d failure(s), %.1fs total\n", g_failures, total.secs());
    return g_failures == 0 ? 0 : 1;
}
