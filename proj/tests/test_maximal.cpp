#include <doctest.h>

#include <cmath>
#include <random>

#include "wbench/maximal.hpp"

using namespace wbench;

namespace {

GridFunction random_samples(const GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    GridFunction f(g);
    for (double& v : f.samples) v = U(rng);
    return f;
}

} // namespace

TEST_CASE("maximal function of an indicator, closed form") {
    // M chi_[0,1] = 1 on [0,1], 1/x to the right, 1/(1-x) to the left.
    GridSpec g{1, 2.0, 512};
    GridFunction f = sample_function1(g, [](double x) { return x > 0 && x < 1 ? 1.0 : 0.0; });
    GridFunction m = hl_maximal(f);
    for (int i = 0; i < g.N; ++i) {
        double x = g.mid(i);
        double exact = x <= 0 ? 1.0 / (1.0 - x) : (x >= 1 ? 1.0 / x : 1.0);
        CHECK(std::abs(m.at(i) - exact) <= 0.02 * exact);
    }
    CHECK(gf_max_abs(m) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("maximal dominates the function and its averages") {
    GridSpec g{1, 2.0, 128};
    GridFunction f = random_samples(g, 3);
    GridFunction m = hl_maximal(gf_abs(f));
    // Prefix-sum windows round at the last few bits; allow that much.
    for (int i = 0; i < g.N; ++i) CHECK(m.at(i) >= std::abs(f.at(i)) - 1e-12);
    // Constants are fixed points.
    GridFunction c(g, 0.7);
    GridFunction mc = hl_maximal(c);
    for (int i = 0; i < g.N; ++i) CHECK(mc.at(i) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("sliding window maximal equals brute enumeration, 1d") {
    GridSpec g{1, 2.0, 64};
    GridFunction f = random_samples(g, 17);
    GridFunction fast = hl_maximal(f);
    GridFunction slow = hl_maximal_brute(f);
    for (int i = 0; i < g.N; ++i) CHECK(fast.at(i) == slow.at(i)); // bitwise
}

TEST_CASE("sliding window maximal equals brute enumeration, 2d") {
    GridSpec g{2, 1.0, 16};
    GridFunction f = random_samples(g, 23);
    GridFunction fast = hl_maximal(f);
    GridFunction slow = hl_maximal_brute(f);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(fast.samples[i] == slow.samples[i]);
}

TEST_CASE("smooth maximal is controlled by the rough one") {
    // |phi_t * f| <= sup(phi) * t^{-n} int_{|y-x|<=t} |f| <= 2^n sup(phi) Mf.
    SmoothKernel k = SmoothKernel::quartic_bump();
    CHECK(k.sup == doctest::Approx(1.0).epsilon(1e-12));
    for (int dim : {1, 2}) {
        GridSpec g{dim, 1.0, dim == 1 ? 128 : 32};
        GridFunction f = random_samples(g, 29 + dim);
        GridFunction sm = smooth_maximal(f, k);
        GridFunction m = hl_maximal(gf_abs(f));
        double c = std::pow(2.0, dim) * k.sup;
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK(sm.samples[i] <= c * m.samples[i] * (1 + 1e-9) + 1e-15);
    }
    // Unit-mass normalization: constants map to their absolute value where
    // the window fits; zero extension clips cells near the boundary.
    GridSpec g{1, 1.0, 64};
    GridFunction c(g, -1.3);
    GridFunction sc = smooth_maximal(c, k);
    CHECK(sc.at(31) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(sc.at(32) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(gf_max_abs(sc) == doctest::Approx(1.3).epsilon(1e-12));
    for (int i = 0; i < g.N; ++i) CHECK(sc.at(i) <= 1.3 * (1 + 1e-12));
}

TEST_CASE("weighted norms") {
    GridSpec g{1, 2.0, 64};
    Weight flat = constant_weight(g);
    GridFunction f(g, 3.0);
    // (int 3^2 over [-2,2])^{1/2} = 3 * 2.
    CHECK(lpw_norm(f, 2.0, flat) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(lpw_norm(f, kInf, flat) == doctest::Approx(3.0).epsilon(1e-15));

    Weight w = step_weight(g, 1.0, 3.0);
    CHECK(lpw_norm(f, 1.0, w) == doctest::Approx(3.0 * 8.0).epsilon(1e-13));

    CHECK(ls_norm(f, 2.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(ls_norm(f, kInf) == doctest::Approx(3.0).epsilon(1e-15));
    // Quasinorm range s < 1 still integrates.
    CHECK(ls_norm(f, 0.5) == doctest::Approx(3.0 * 16.0).epsilon(1e-12));
}
