#include "wbench/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_1d(const GridFunction& f, const char* who) {
    if (f.spec.dim != 1) throw std::invalid_argument(std::string(who) + ": 1D grids only");
}

// First and last nonzero sample; {-1,-1} when f == 0.
std::pair<int, int> support_range(const GridFunction& f) {
    int j0 = -1, j1 = -1;
    for (int i = 0; i < f.spec.N; ++i)
        if (f.at(i) != 0.0) {
            if (j0 < 0) j0 = i;
            j1 = i;
        }
    return {j0, j1};
}

} // namespace

GridFunction hilbert_truncated(const GridFunction& f, double eps) {
    require_1d(f, "hilbert_truncated");
    if (!(eps > 0)) throw std::invalid_argument("hilbert_truncated: eps must be positive");
    const GridSpec& g = f.spec;
    const int N = g.N;
    double h = g.h();
    int kmin = std::max(1, int(std::ceil(eps / h - 1e-12)));
    GridFunction out(g);
    auto [j0, j1] = support_range(f);
    if (j0 < 0) return out;
    parallel_for(std::size_t(N), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ii = lo; ii < hi; ++ii) {
            int i = int(ii);
            int kdom = std::max(i, N - 1 - i);
            int khi = std::min(std::max(i - j0, j1 - i), kdom);
            int klo = kmin;
            if (i > j1) klo = std::max(klo, i - j1);
            if (i < j0) klo = std::max(klo, j0 - i);
            if (khi < klo) continue;
            // kernel pairs at equal distance: (f(x-kh) - f(x+kh)) / k,
            // summed far to near, so even data about x cancels term by term
            double acc = 0;
            for (int k = khi; k >= klo; --k) {
                double left = i - k >= 0 ? f.at(i - k) : 0.0;
                double right = i + k < N ? f.at(i + k) : 0.0;
                acc += (left - right) / double(k);
            }
            out.at(i) = acc / kPi;
        }
    });
    return out;
}

GridFunction hilbert_maximal(const GridFunction& f) {
    require_1d(f, "hilbert_maximal");
    const GridSpec& g = f.spec;
    const int N = g.N;
    GridFunction out(g);
    auto [j0, j1] = support_range(f);
    if (j0 < 0) return out;
    parallel_for(std::size_t(N), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ii = lo; ii < hi; ++ii) {
            int i = int(ii);
            int kdom = std::max(i, N - 1 - i);
            int khi = std::min(std::max(i - j0, j1 - i), kdom);
            int klo = 1;
            if (i > j1) klo = i - j1;
            if (i < j0) klo = j0 - i;
            if (khi < klo) continue;
            // running sum from far to near; |partial| at k = 2^m equals
            // |T^{eps}| for eps = 2^m h, and every smaller ladder eps sees the
            // completed sum
            double acc = 0, best = 0;
            for (int k = khi; k >= klo; --k) {
                double left = i - k >= 0 ? f.at(i - k) : 0.0;
                double right = i + k < N ? f.at(i + k) : 0.0;
                acc += (left - right) / double(k);
                if ((k & (k - 1)) == 0) best = std::max(best, std::abs(acc));
            }
            best = std::max(best, std::abs(acc));
            out.at(i) = best / kPi;
        }
    });
    return out;
}

GridFunction fourier_partial_sum(const GridFunction& f, double freq) {
    require_1d(f, "fourier_partial_sum");
    const GridSpec& g = f.spec;
    double h = g.h();
    double nyquist = 1.0 / (2.0 * h);
    if (!(freq > 0)) throw std::invalid_argument("fourier_partial_sum: frequency must be positive");
    if (freq > nyquist * (1.0 + 1e-12))
        throw std::invalid_argument("fourier_partial_sum: frequency above the Nyquist limit");
    GridFunction u(g), v(g), out(g);
    std::vector<double> ct(std::size_t(g.N)), st(std::size_t(g.N));
    for (int i = 0; i < g.N; ++i) {
        double th = 2.0 * kPi * freq * g.mid(i);
        ct[std::size_t(i)] = std::cos(th);
        st[std::size_t(i)] = std::sin(th);
        u.at(i) = f.at(i) * ct[std::size_t(i)];
        v.at(i) = f.at(i) * st[std::size_t(i)];
    }
    GridFunction Hu = hilbert_truncated(u, h);
    GridFunction Hv = hilbert_truncated(v, h);
    // modulation identity, sign fixed so band-limited inputs reproduce
    for (int i = 0; i < g.N; ++i)
        out.at(i) = st[std::size_t(i)] * Hu.at(i) - ct[std::size_t(i)] * Hv.at(i);
    return out;
}

GridFunction fourier_maximal(const GridFunction& f) {
    require_1d(f, "fourier_maximal");
    const GridSpec& g = f.spec;
    double nyquist = 1.0 / (2.0 * g.h());
    GridFunction out(g);
    for (double freq = 1.0; freq <= nyquist * (1.0 + 1e-12); freq *= 2.0) {
        GridFunction s = fourier_partial_sum(f, std::min(freq, nyquist));
        for (int i = 0; i < g.N; ++i) out.at(i) = std::max(out.at(i), std::abs(s.at(i)));
    }
    return out;
}

namespace {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * kPi / double(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> x = a[i + k];
                std::complex<double> y = a[i + k + len / 2] * w;
                a[i + k] = x + y;
                a[i + k + len / 2] = x - y;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= double(n);
}

} // namespace

GridFunction fourier_spectral_oracle(const GridFunction& f, double freq) {
    require_1d(f, "fourier_spectral_oracle");
    const GridSpec& g = f.spec;
    double nyquist = 1.0 / (2.0 * g.h());
    if (!(freq > 0)) throw std::invalid_argument("fourier_spectral_oracle: frequency must be positive");
    if (freq > nyquist * (1.0 + 1e-12))
        throw std::invalid_argument("fourier_spectral_oracle: frequency above the Nyquist limit");
    const int N = g.N;
    std::vector<std::complex<double>> a(std::size_t(N), std::complex<double>(0.0, 0.0));
    for (int i = 0; i < N; ++i) a[std::size_t(i)] = f.at(i);
    fft_inplace(a, false);
    double period = 2.0 * g.L;
    for (int j = 0; j < N; ++j) {
        int sj = j <= N / 2 ? j : j - N; // signed bin
        double xi = std::abs(double(sj)) / period;
        double keep;
        if (xi < freq * (1.0 - 1e-12)) keep = 1.0;
        else if (xi <= freq * (1.0 + 1e-12)) keep = 0.5;
        else keep = 0.0;
        a[std::size_t(j)] *= keep;
    }
    fft_inplace(a, true);
    GridFunction out(g);
    for (int i = 0; i < N; ++i) out.at(i) = a[std::size_t(i)].real();
    return out;
}

OperatorHandle make_operator(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    std::string name = descriptor.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    OperatorHandle op;
    op.name = descriptor;
    if (name == "identity") {
        op.apply = [](const GridFunction& f) { return f; };
    } else if (name == "hilbert") {
        if (arg.empty() || arg == "h") {
            op.apply = [](const GridFunction& f) { return hilbert_truncated(f, f.spec.h()); };
        } else {
            double eps = std::stod(arg);
            op.apply = [eps](const GridFunction& f) { return hilbert_truncated(f, eps); };
        }
    } else if (name == "hilbert_max") {
        op.apply = [](const GridFunction& f) { return hilbert_maximal(f); };
    } else if (name == "fourier") {
        if (arg.empty()) throw std::invalid_argument("make_operator: fourier needs a frequency");
        double freq = std::stod(arg);
        op.apply = [freq](const GridFunction& f) { return fourier_partial_sum(f, freq); };
    } else if (name == "fourier_max") {
        op.apply = [](const GridFunction& f) { return fourier_maximal(f); };
    } else if (name == "hl_max") {
        op.apply = [](const GridFunction& f) { return hl_maximal(f); };
    } else if (name == "smooth_max") {
        op.apply = [](const GridFunction& f) {
            return smooth_maximal(f, SmoothKernel::quartic_bump());
        };
    } else {
        throw std::invalid_argument("make_operator: unknown operator '" + descriptor + "'");
    }
    return op;
}

SizeCheck size_condition_check(const OperatorHandle& op, const Block& b) {
    const GridSpec& g = b.samples.spec;
    GridFunction Tb = op.apply(b.samples);
    double l1 = ls_norm(b.samples, 1.0);
    SizeCheck out;
    if (l1 == 0) return out;
    auto c = cube_center(g, b.support);
    double rho = std::sqrt(double(g.dim)) * side_length(g, b.support); // half-side of 2 sqrt(n) Q
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            double dx = g.mid(ix) - c[0];
            double dy = g.dim == 2 ? g.mid(iy) - c[1] : 0.0;
            if (std::max(std::abs(dx), std::abs(dy)) <= rho) continue; // inside the dilate
            out.cells_outside++;
            double dist = g.dim == 1 ? std::abs(dx) : std::hypot(dx, dy);
            double ratio = std::abs(Tb.at(ix, iy)) * std::pow(dist, double(g.dim)) / l1;
            if (ratio > out.constant) {
                out.constant = ratio;
                out.argmax_cell = {ix, iy};
            }
        }
    return out;
}

SizeCheck local_ls_check(const OperatorHandle& op, const Block& b, double s) {
    if (!(s > 0)) throw std::invalid_argument("local_ls_check: s must be positive");
    const GridSpec& g = b.samples.spec;
    GridFunction Tb = op.apply(b.samples);
    auto c = cube_center(g, b.support);
    double rho = std::sqrt(double(g.dim)) * side_length(g, b.support);
    double num = 0, den = 0;
    bool use_sup = std::isinf(s);
    for (int iy = 0; iy < (g.dim == 2 ? g.N : 1); ++iy)
        for (int ix = 0; ix < g.N; ++ix) {
            double dx = g.mid(ix) - c[0];
            double dy = g.dim == 2 ? g.mid(iy) - c[1] : 0.0;
            bool in_dilate = std::max(std::abs(dx), std::abs(dy)) <= rho;
            if (in_dilate) {
                double v = std::abs(Tb.at(ix, iy));
                num = use_sup ? std::max(num, v) : num + std::pow(v, s);
            }
            if (cube_contains_cell(g, b.support, ix, iy)) {
                double v = std::abs(b.samples.at(ix, iy));
                den = use_sup ? std::max(den, v) : den + std::pow(v, s);
            }
        }
    SizeCheck out;
    out.constant = den > 0 ? num / den : 0.0; // h^n cancels in the ratio
    return out;
}

} // namespace wbench
