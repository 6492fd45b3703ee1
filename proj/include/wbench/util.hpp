#pragma once

// Small shared helpers: deterministic RNG substreams, a chunked parallel_for,
// and numeric odds and ends used across the library.

#include <cstdint>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wbench {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64; used to decorrelate seeds for per-trial substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Independent stream for (seed, index). Results do not depend on the order
// in which substreams are drawn, so parallel trials stay reproducible.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = splitmix64(seed ^ splitmix64(index + 1));
    return std::mt19937_64(s);
}

// Global worker count. 1 means serial; set_threads(0) picks hardware width.
int threads();
void set_threads(int n);

// Chunked parallel loop over [0, n). The body must write only to disjoint
// slots so that results are independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body_range);

inline bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int ilog2(std::uint64_t v) {
    int k = 0;
    while ((1ull << (k + 1)) <= v) ++k;
    return k;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return num / den;
}

} // namespace wbench
