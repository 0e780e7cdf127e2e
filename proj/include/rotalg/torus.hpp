#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "rotalg/errors.hpp"
#include "rotalg/session.hpp"

namespace rotalg {

inline double mod1(double x) {
    double r = x - std::floor(x);
    return r == 1.0 ? 0.0 : r;
}

// Point of the 2-torus in angle coordinates: (x,y) stands for
// (e^{2 pi i x}, e^{2 pi i y}}), both coordinates reduced to [0,1).
struct TorusPoint {
    double x = 0.0, y = 0.0;

    TorusPoint() = default;
    TorusPoint(double x_, double y_) : x(mod1(x_)), y(mod1(y_)) {}

    TorusPoint operator+(const TorusPoint& o) const { return {x + o.x, y + o.y}; }
    TorusPoint operator-() const { return {-x, -y}; }
    TorusPoint operator-(const TorusPoint& o) const { return {x - o.x, y - o.y}; }
};

// The irrational-rotation flow: g.t in the groupoid notation.
inline TorusPoint flow(const TorusPoint& p, double t, double lambda) {
    return {p.x + t, p.y + lambda * t};
}

inline double circle_dist(double a, double b) {
    double d = std::fabs(mod1(a) - mod1(b));
    return std::min(d, 1.0 - d);
}

// Flat metric on the torus: Euclidean distance minimized over the nine
// integer translates (equivalently, componentwise circle distances).
inline double torus_dist(const TorusPoint& a, const TorusPoint& b) {
    double dx = circle_dist(a.x, b.x), dy = circle_dist(a.y, b.y);
    return std::hypot(dx, dy);
}

// C-infinity step: 0 for t<=0, 1 for t>=1, and step(t)+step(1-t)=1 exactly.
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

// Open square in angle coordinates, kept unwrapped: [lower, lower+side) may
// extend past 1 and is reduced mod 1 when mapped to the torus.
struct Chart {
    int id = 0;
    double lower_x = 0.0, lower_y = 0.0;
    double side = 0.6;

    // unwrap a torus point into this chart's coordinates, if it lies inside
    bool unwrap(const TorusPoint& p, double& u, double& v, double margin = 0.0) const {
        u = lower_x + mod1(p.x - lower_x);
        v = lower_y + mod1(p.y - lower_y);
        return u > lower_x + margin && u < lower_x + side - margin &&
               v > lower_y + margin && v < lower_y + side - margin;
    }
    bool contains(const TorusPoint& p, double margin = 0.0) const {
        double u, v;
        return unwrap(p, u, v, margin);
    }
    TorusPoint to_torus(double u, double v) const { return {u, v}; }
};

// The fixed 4-chart cover of the torus with its partition of unity.
// Charts are squares of side 0.6 with lower corners on the half-integer
// grid; the overlap strips have width 0.1.
class Atlas {
public:
    static constexpr int chart_count = 4;

    Atlas() {
        static const double corners[4][2] = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}};
        for (int i = 0; i < 4; ++i)
            charts_[i] = Chart{i, corners[i][0], corners[i][1], 0.6};
    }

    const Chart& chart(int i) const { return charts_[i]; }
    const std::array<Chart, 4>& charts() const { return charts_; }

    // 1D partition weights on the circle for the cover {[0,0.6],[0.5,1.1]}
    static double weight_low(double x) {
        x = mod1(x);
        if (x < 0.1) return smooth_step(x / 0.1);
        if (x <= 0.5) return 1.0;
        if (x < 0.6) return smooth_step((0.6 - x) / 0.1);
        return 0.0;
    }
    static double weight_high(double x) { return 1.0 - weight_low(x); }

    // smooth weight of chart i at p; the four weights sum to 1 identically
    double pou(int i, const TorusPoint& p) const {
        double wx = (i % 2 == 0) ? weight_low(p.x) : weight_high(p.x);
        double wy = (i < 2) ? weight_low(p.y) : weight_high(p.y);
        return wx * wy;
    }

    // pick a chart containing p with the largest interior margin
    int chart_of(const TorusPoint& p) const {
        int best = -1;
        double best_margin = -1.0;
        for (int i = 0; i < 4; ++i) {
            double u, v;
            if (!charts_[i].unwrap(p, u, v)) continue;
            double m = std::min(std::min(u - charts_[i].lower_x, charts_[i].lower_x + charts_[i].side - u),
                                std::min(v - charts_[i].lower_y, charts_[i].lower_y + charts_[i].side - v));
            if (m > best_margin) { best_margin = m; best = i; }
        }
        return best;
    }

    // startup self-check: covering at resolution side/10, weights sum to 1
    void verify(double tol = 1e-12) const {
        const int n = 40;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                TorusPoint p{(i + 0.5) / n, (j + 0.5) / n};
                if (chart_of(p) < 0) fail(errc::bad_input, "atlas does not cover the torus");
                double s = 0;
                for (int c = 0; c < 4; ++c) {
                    double w = pou(c, p);
                    if (w < 0) fail(errc::bad_input, "negative partition weight");
                    if (w > 0 && !charts_[c].contains(p)) fail(errc::bad_input, "weight outside chart");
                    s += w;
                }
                if (std::fabs(s - 1.0) > tol) fail(errc::bad_input, "partition weights do not sum to 1");
            }
    }

private:
    std::array<Chart, 4> charts_;
};

inline const Atlas& fixed_atlas() {
    static const Atlas atlas = [] { Atlas a; a.verify(); return a; }();
    return atlas;
}

} // namespace rotalg
