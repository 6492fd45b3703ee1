#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "wbench/util.hpp"

using namespace wbench;

TEST_CASE("power of two helpers") {
    CHECK(is_pow2(1));
    CHECK(is_pow2(64));
    CHECK(!is_pow2(0));
    CHECK(!is_pow2(48));
    CHECK(ilog2(1) == 0);
    CHECK(ilog2(2) == 1);
    CHECK(ilog2(1024) == 10);
}

TEST_CASE("splitmix64 is deterministic") {
    CHECK(splitmix64(0) == splitmix64(0));
    CHECK(splitmix64(1) != splitmix64(2));
    // Substreams with distinct indices decorrelate immediately.
    std::mt19937_64 a = substream(42, 0);
    std::mt19937_64 b = substream(42, 1);
    std::mt19937_64 a2 = substream(42, 0);
    CHECK(a() == a2());
    CHECK(a() != b());
}

TEST_CASE("parallel_for covers the range once, any thread count") {
    const std::size_t n = 1000;
    for (int t : {1, 4}) {
        set_threads(t);
        std::vector<int> hits(n, 0);
        parallel_for(n, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) hits[i] += 1;
        });
        for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
    }
    set_threads(0);
}

TEST_CASE("fit_slope recovers an exact line") {
    std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
    std::vector<double> y;
    for (double v : x) y.push_back(3.5 * v + 2.0);
    CHECK(fit_slope(x, y) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK_THROWS(fit_slope({1.0}, {2.0}));
    CHECK_THROWS(fit_slope({1.0, 1.0}, {2.0, 3.0})); // degenerate abscissae
}
