#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "wbench/operators.hpp"

using namespace wbench;

namespace {

constexpr double kPi = 3.14159265358979323846;

GridFunction bump(const GridSpec& g, double c, double width) {
    return sample_function1(g, [&](double x) {
        double u = (x - c) / width;
        return std::abs(u) < 1 ? (1 - u * u) * (1 - u * u) : 0.0;
    });
}

double rel_l2(const GridFunction& a, const GridFunction& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a.samples[i] - b.samples[i];
        num += d * d;
        den += b.samples[i] * b.samples[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("truncated transform is antisymmetric, bitwise") {
    // Even data about the grid center: the paired-kernel sum makes the
    // output an exact odd function, cell i against cell N-1-i.
    GridSpec g{1, 2.0, 256};
    GridFunction f = bump(g, 0.0, 0.8);
    GridFunction hf = hilbert_truncated(f, g.h());
    for (int i = 0; i < g.N; ++i) CHECK(hf.at(i) == -hf.at(g.N - 1 - i));
}

TEST_CASE("truncated transform doubles exactly with its input") {
    GridSpec g{1, 2.0, 128};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    GridFunction f(g);
    for (double& v : f.samples) v = U(rng);
    GridFunction h1 = hilbert_truncated(f, g.h());
    GridFunction h2 = hilbert_truncated(gf_scale(f, 2.0), g.h());
    for (int i = 0; i < g.N; ++i) CHECK(h2.at(i) == 2.0 * h1.at(i));
}

TEST_CASE("far field of a one signed bump decays like 1/x") {
    GridSpec g{1, 2.0, 512};
    GridFunction f = bump(g, 0.0, 0.1);
    double mass = integrate_all(f);
    GridFunction hf = hilbert_truncated(f, g.h());
    for (double x : {1.0, 1.5, -1.2}) {
        int i = int((x + g.L) / g.h());
        double expect = mass / (kPi * g.mid(i));
        CHECK(std::abs(hf.at(i) - expect) <= 0.02 * std::abs(expect));
    }
}

TEST_CASE("maximal truncation dominates every ladder rung") {
    GridSpec g{1, 2.0, 256};
    GridFunction f = bump(g, 0.3, 0.5);
    GridFunction hmax = hilbert_maximal(f);
    for (double mult : {1.0, 2.0, 4.0, 8.0}) {
        GridFunction h = hilbert_truncated(f, mult * g.h());
        for (int i = 0; i < g.N; ++i) CHECK(hmax.at(i) >= std::abs(h.at(i)) - 1e-15);
    }
}

TEST_CASE("spectral oracle reproduces band limited data exactly") {
    GridSpec g{1, 2.0, 256};
    // Bin frequencies k/(2L): 0.5 and 1.0 cycles per unit.
    GridFunction f = sample_function1(g, [&](double x) {
        return std::sin(2 * kPi * 0.5 * x) + 0.3 * std::cos(2 * kPi * 1.0 * x);
    });
    GridFunction back = fourier_spectral_oracle(f, 2.0);
    for (int i = 0; i < g.N; ++i) CHECK(back.at(i) == doctest::Approx(f.at(i)).epsilon(1e-10));
    CHECK_THROWS(fourier_spectral_oracle(f, 1e9)); // above Nyquist
}

TEST_CASE("partial sum reproduces concentrated band limited data") {
    // Smooth envelope on the central half: spectrum decays like xi^{-3}, so
    // a cutoff at 3 keeps essentially everything; the pass band gain of the
    // kernel route is 1 - R/Nyquist, which bounds the error floor.
    GridSpec g{1, 2.0, 2048};
    GridFunction f = bump(g, 0.0, 1.0);
    GridFunction s = fourier_partial_sum(f, 3.0);
    CHECK(rel_l2(s, f) <= 0.02);
}

TEST_CASE("partial sum agrees with the spectral oracle") {
    // Band limited data supported on the central half of the domain: the
    // kernel route and the periodized spectral route agree to the pass band
    // droop, well under 2%.
    GridSpec g{1, 2.0, 2048};
    GridFunction f = sample_function1(g, [&](double x) {
        double u = x;
        double env = std::abs(u) < 1 ? (1 - u * u) * (1 - u * u) : 0.0;
        return env * std::cos(2 * kPi * 1.0 * x);
    });
    GridFunction s1 = fourier_partial_sum(f, 3.0);
    GridFunction s2 = fourier_spectral_oracle(f, 3.0);
    CHECK(rel_l2(s1, s2) <= 0.02);
}

TEST_CASE("maximal partial sum dominates the ladder") {
    GridSpec g{1, 2.0, 256};
    GridFunction f = bump(g, -0.4, 0.7);
    GridFunction smax = fourier_maximal(f);
    for (double freq : {1.0, 2.0, 4.0}) {
        GridFunction s = fourier_partial_sum(f, freq);
        for (int i = 0; i < g.N; ++i) CHECK(smax.at(i) >= std::abs(s.at(i)) - 1e-12);
    }
}

TEST_CASE("operator factory") {
    GridSpec g{1, 2.0, 64};
    GridFunction f = bump(g, 0.0, 0.5);
    CHECK(make_operator("identity").apply(f).at(32) == f.at(32));
    CHECK_NOTHROW(make_operator("hilbert:h"));
    CHECK_NOTHROW(make_operator("hilbert:0.125"));
    CHECK_NOTHROW(make_operator("hilbert_max"));
    CHECK_NOTHROW(make_operator("fourier:2"));
    CHECK_NOTHROW(make_operator("fourier_max"));
    CHECK_NOTHROW(make_operator("hl_max"));
    CHECK_NOTHROW(make_operator("smooth_max"));
    CHECK_THROWS(make_operator("bogus"));
    // hilbert:h resolves the truncation to the grid cell width.
    GridFunction a = make_operator("hilbert:h").apply(f);
    GridFunction b = hilbert_truncated(f, g.h());
    for (int i = 0; i < g.N; ++i) CHECK(a.at(i) == b.at(i));
}

TEST_CASE("size conditions of the local and far field") {
    GridSpec g{1, 2.0, 512};
    auto w = std::make_shared<const Weight>(constant_weight(g));
    // One-signed indicator block on a small cube near the center.
    DyadicCube q{6, {256, 0}}; // 8 cells
    GridFunction chi(g);
    for (int i = 256; i < 264; ++i) chi.at(i) = 1.0;
    auto [lambda, b] = make_block(chi, q, 2.0, 8.0, w);

    // identity: zero outside the support, perfect locality.
    SizeCheck far_id = size_condition_check(make_operator("identity"), b);
    CHECK(far_id.constant == 0.0);
    SizeCheck loc_id = local_ls_check(make_operator("identity"), b, 8.0);
    CHECK(loc_id.constant == doctest::Approx(1.0).epsilon(1e-12));

    // truncated transform: the worst far-field cell sits half a cell past
    // the doubled cube, d = 8.5h against offsets -3.5h..3.5h, so the
    // constant is (8.5/8pi) * sum_{k=5}^{12} 1/k = 0.34493.
    SizeCheck far_h = size_condition_check(make_operator("hilbert:h"), b);
    CHECK(far_h.constant == doctest::Approx(0.344929).epsilon(0.005));
    CHECK(far_h.cells_outside > 0);
}
