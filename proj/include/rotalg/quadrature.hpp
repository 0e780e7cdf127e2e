#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "rotalg/errors.hpp"

namespace rotalg {

// Gauss-Legendre rule on [-1,1]; nodes by Newton iteration on P_n, cached
// per order. Order 16 is the workhorse; other orders appear in refinement
// studies.
struct GaussLegendre {
    std::vector<double> nodes, weights;

    static const GaussLegendre& get(int n) {
        static std::map<int, GaussLegendre> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        GaussLegendre g;
        g.compute(n);
        return cache.emplace(n, std::move(g)).first->second;
    }

private:
    void compute(int n) {
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

struct QuadResult {
    double value = 0.0;
    double err = 0.0; // one-refinement estimate |I_h - I_{h/2}|
};

struct QuadPoints {
    std::vector<double> x, w;
};

// composite GL nodes on [a,b]; panel count chosen from a points-per-unit
// budget and the fastest oscillation present in the integrand
inline QuadPoints composite_gl(double a, double b, double pts_per_unit,
                               double max_freq = 0.0, int order = 16) {
    QuadPoints q;
    if (b <= a) return q;
    double len = b - a;
    double pts = std::max(len * pts_per_unit, 2.0 * order / 3.0);
    if (max_freq > 0.0) pts = std::max(pts, len * max_freq / (2.0 * M_PI) * 6.0);
    int panels = std::max(1, (int)std::ceil(pts / order));
    const auto& gl = GaussLegendre::get(order);
    double h = len / panels;
    q.x.reserve((size_t)panels * order);
    q.w.reserve((size_t)panels * order);
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h, s = 0.5 * h;
        for (int k = 0; k < order; ++k) {
            q.x.push_back(c + s * gl.nodes[k]);
            q.w.push_back(s * gl.weights[k]);
        }
    }
    return q;
}

template <typename F>
double apply_quad(const QuadPoints& q, F&& f) {
    double s = 0.0;
    for (size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(q.x[i]);
    return s;
}

// integral with a one-halving error estimate
template <typename F>
QuadResult integrate_1d(F&& f, double a, double b, double pts_per_unit,
                        double max_freq = 0.0, int order = 16) {
    QuadResult r;
    if (b <= a) return r;
    auto q1 = composite_gl(a, b, pts_per_unit, max_freq, order);
    auto q2 = composite_gl(a, b, 2.0 * pts_per_unit, max_freq, order);
    double v1 = apply_quad(q1, f), v2 = apply_quad(q2, std::forward<F>(f));
    r.value = v2;
    r.err = std::fabs(v2 - v1);
    return r;
}

// trapezoid on one full period: spectrally accurate for smooth periodic f
template <typename F>
double integrate_periodic(F&& f, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f((double)i / n);
    return s / n;
}

} // namespace rotalg
