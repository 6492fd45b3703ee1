#include "wbench/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace wbench {

namespace {

GridFunction hl_maximal_1d(const GridFunction& f) {
    const GridSpec& g = f.spec;
    const int N = g.N;
    std::vector<double> P(std::size_t(N) + 1, 0.0);
    for (int i = 0; i < N; ++i) P[i + 1] = P[i] + std::abs(f.at(i));
    GridFunction out(g);
    // For window length len, cell i sees start positions a in
    // [i-len+1, i] clipped to [0, N-len]; take a sliding max of the window
    // averages A[a] = (P[a+len]-P[a])/len.
    std::vector<double> A, best(std::size_t(N), 0.0);
    std::deque<int> dq;
    for (int len = 1; len <= N; ++len) {
        int starts = N - len + 1;
        A.resize(std::size_t(starts));
        double inv = 1.0 / double(len);
        for (int a = 0; a < starts; ++a) A[a] = (P[a + len] - P[a]) * inv;
        dq.clear();
        for (int i = 0; i < N; ++i) {
            if (i < starts) {
                while (!dq.empty() && A[dq.back()] <= A[i]) dq.pop_back();
                dq.push_back(i);
            }
            int lo = i - len + 1;
            while (!dq.empty() && dq.front() < lo) dq.pop_front();
            if (!dq.empty()) best[i] = std::max(best[i], A[dq.front()]);
        }
    }
    for (int i = 0; i < N; ++i) out.at(i) = best[i];
    return out;
}

GridFunction hl_maximal_2d(const GridFunction& f) {
    const GridSpec& g = f.spec;
    const int N = g.N;
    std::vector<double> P(std::size_t(N + 1) * (N + 1), 0.0);
    auto Pat = [&](int x, int y) -> double& { return P[std::size_t(y) * (N + 1) + x]; };
    for (int y = 0; y < N; ++y)
        for (int x = 0; x < N; ++x)
            Pat(x + 1, y + 1) = std::abs(f.at(x, y)) + Pat(x, y + 1) + Pat(x + 1, y) - Pat(x, y);
    GridFunction out(g);
    std::vector<double> best(g.cell_count(), 0.0);
    std::vector<double> A, rowmax;
    for (int s = 1; s <= N; s <<= 1) {
        int starts = N - s + 1;
        double inv = 1.0 / (double(s) * double(s));
        A.assign(std::size_t(starts) * starts, 0.0);
        for (int ay = 0; ay < starts; ++ay)
            for (int ax = 0; ax < starts; ++ax)
                A[std::size_t(ay) * starts + ax] =
                    (Pat(ax + s, ay + s) - Pat(ax, ay + s) - Pat(ax + s, ay) + Pat(ax, ay)) * inv;
        // max over ax in [ix-s+1, ix] for each row, then over ay per column
        rowmax.assign(std::size_t(starts) * N, 0.0);
        std::vector<double> line(std::size_t(starts), 0.0), outline(std::size_t(N), 0.0);
        for (int ay = 0; ay < starts; ++ay) {
            for (int ax = 0; ax < starts; ++ax) line[ax] = A[std::size_t(ay) * starts + ax];
            std::deque<int> dq;
            for (int ix = 0; ix < N; ++ix) {
                if (ix < starts) {
                    while (!dq.empty() && line[dq.back()] <= line[ix]) dq.pop_back();
                    dq.push_back(ix);
                }
                int lo = ix - s + 1;
                while (!dq.empty() && dq.front() < lo) dq.pop_front();
                outline[ix] = dq.empty() ? 0.0 : line[dq.front()];
            }
            for (int ix = 0; ix < N; ++ix) rowmax[std::size_t(ay) * N + ix] = outline[ix];
        }
        std::vector<double> col(std::size_t(starts), 0.0);
        for (int ix = 0; ix < N; ++ix) {
            for (int ay = 0; ay < starts; ++ay) col[ay] = rowmax[std::size_t(ay) * N + ix];
            std::deque<int> dq;
            for (int iy = 0; iy < N; ++iy) {
                if (iy < starts) {
                    while (!dq.empty() && col[dq.back()] <= col[iy]) dq.pop_back();
                    dq.push_back(iy);
                }
                int lo = iy - s + 1;
                while (!dq.empty() && dq.front() < lo) dq.pop_front();
                if (!dq.empty())
                    best[std::size_t(iy) * N + ix] = std::max(best[std::size_t(iy) * N + ix], col[dq.front()]);
            }
        }
    }
    out.samples = best;
    return out;
}

} // namespace

GridFunction hl_maximal(const GridFunction& f) {
    f.spec.validate();
    return f.spec.dim == 1 ? hl_maximal_1d(f) : hl_maximal_2d(f);
}

GridFunction hl_maximal_brute(const GridFunction& f) {
    const GridSpec& g = f.spec;
    GridFunction out(g);
    if (g.dim == 1) {
        const int N = g.N;
        std::vector<double> P(std::size_t(N) + 1, 0.0);
        for (int i = 0; i < N; ++i) P[i + 1] = P[i] + std::abs(f.at(i));
        for (int i = 0; i < N; ++i) {
            double best = 0;
            for (int len = 1; len <= N; ++len) {
                double inv = 1.0 / double(len);
                for (int a = std::max(0, i - len + 1); a <= std::min(i, N - len); ++a)
                    best = std::max(best, (P[a + len] - P[a]) * inv);
            }
            out.at(i) = best;
        }
        return out;
    }
    const int N = g.N;
    std::vector<double> P(std::size_t(N + 1) * (N + 1), 0.0);
    auto Pat = [&](int x, int y) -> double& { return P[std::size_t(y) * (N + 1) + x]; };
    for (int y = 0; y < N; ++y)
        for (int x = 0; x < N; ++x)
            Pat(x + 1, y + 1) = std::abs(f.at(x, y)) + Pat(x, y + 1) + Pat(x + 1, y) - Pat(x, y);
    for (int iy = 0; iy < N; ++iy)
        for (int ix = 0; ix < N; ++ix) {
            double best = 0;
            for (int s = 1; s <= N; s <<= 1) {
                double inv = 1.0 / (double(s) * double(s));
                for (int ay = std::max(0, iy - s + 1); ay <= std::min(iy, N - s); ++ay)
                    for (int ax = std::max(0, ix - s + 1); ax <= std::min(ix, N - s); ++ax)
                        best = std::max(best,
                                        (Pat(ax + s, ay + s) - Pat(ax, ay + s) - Pat(ax + s, ay) + Pat(ax, ay)) * inv);
            }
            out.at(ix, iy) = best;
        }
    return out;
}

SmoothKernel SmoothKernel::quartic_bump(int samples) {
    if (samples < 2) throw std::invalid_argument("SmoothKernel: need >= 2 profile samples");
    SmoothKernel k;
    k.profile.resize(std::size_t(samples));
    for (int i = 0; i < samples; ++i) {
        double r = double(i) / double(samples - 1);
        double v = 1.0 - r * r;
        k.profile[i] = v * v;
    }
    k.sup = 1.0;
    return k;
}

double SmoothKernel::eval(double r) const {
    if (r >= 1.0 || r < 0.0) return 0.0;
    double u = r * double(profile.size() - 1);
    std::size_t i = std::size_t(u);
    if (i + 1 >= profile.size()) return profile.back();
    double t = u - double(i);
    return profile[i] * (1.0 - t) + profile[i + 1] * t;
}

GridFunction smooth_maximal(const GridFunction& f, const SmoothKernel& k) {
    const GridSpec& g = f.spec;
    g.validate();
    double h = g.h();
    GridFunction out(g);
    for (double t = g.L; t >= 2.0 * h; t *= 0.5) {
        int rad = int(std::floor(t / h)) + 1; // offsets with |d|*h < t
        // sample the dilate on index offsets and renormalize to unit mass
        if (g.dim == 1) {
            std::vector<double> ker(std::size_t(2 * rad + 1));
            double mass = 0;
            for (int d = -rad; d <= rad; ++d) {
                double v = k.eval(std::abs(d) * h / t) / t;
                ker[std::size_t(d + rad)] = v;
                mass += v * h;
            }
            if (mass <= 0) continue;
            double inv = 1.0 / mass;
            for (auto& v : ker) v *= inv;
            for (int i = 0; i < g.N; ++i) {
                double acc = 0;
                int dlo = std::max(-rad, -i), dhi = std::min(rad, g.N - 1 - i);
                for (int d = dlo; d <= dhi; ++d) acc += ker[std::size_t(d + rad)] * f.at(i + d);
                acc *= h;
                out.at(i) = std::max(out.at(i), std::abs(acc));
            }
        } else {
            int W = 2 * rad + 1;
            std::vector<double> ker(std::size_t(W) * W);
            double mass = 0;
            for (int dy = -rad; dy <= rad; ++dy)
                for (int dx = -rad; dx <= rad; ++dx) {
                    double r = std::hypot(dx * h, dy * h) / t;
                    double v = k.eval(r) / (t * t);
                    ker[std::size_t(dy + rad) * W + (dx + rad)] = v;
                    mass += v * h * h;
                }
            if (mass <= 0) continue;
            double inv = 1.0 / mass;
            for (auto& v : ker) v *= inv;
            for (int iy = 0; iy < g.N; ++iy)
                for (int ix = 0; ix < g.N; ++ix) {
                    double acc = 0;
                    int ylo = std::max(-rad, -iy), yhi = std::min(rad, g.N - 1 - iy);
                    int xlo = std::max(-rad, -ix), xhi = std::min(rad, g.N - 1 - ix);
                    for (int dy = ylo; dy <= yhi; ++dy)
                        for (int dx = xlo; dx <= xhi; ++dx)
                            acc += ker[std::size_t(dy + rad) * W + (dx + rad)] * f.at(ix + dx, iy + dy);
                    acc *= h * h;
                    out.at(ix, iy) = std::max(out.at(ix, iy), std::abs(acc));
                }
        }
    }
    return out;
}

double lpw_norm(const GridFunction& f, double p, const Weight& w) {
    if (!(f.spec == w.spec())) throw std::invalid_argument("lpw_norm: grid mismatch");
    if (!(p > 0)) throw std::invalid_argument("lpw_norm: p must be positive");
    if (std::isinf(p)) return gf_max_abs(f);
    double h = f.spec.h();
    double vol = f.spec.dim == 1 ? h : h * h;
    double acc = 0;
    const auto& ws = w.values().samples;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        acc += std::pow(std::abs(f.samples[i]), p) * ws[i];
    return std::pow(acc * vol, 1.0 / p);
}

double ls_norm(const GridFunction& f, double s) {
    if (!(s > 0)) throw std::invalid_argument("ls_norm: s must be positive");
    if (std::isinf(s)) return gf_max_abs(f);
    double h = f.spec.h();
    double vol = f.spec.dim == 1 ? h : h * h;
    double acc = 0;
    for (double v : f.samples) acc += std::pow(std::abs(v), s);
    return std::pow(acc * vol, 1.0 / s);
}

} // namespace wbench
