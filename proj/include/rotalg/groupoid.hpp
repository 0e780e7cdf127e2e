#pragma once

#include <cmath>

#include "rotalg/density.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

// Arrow (g,t) of the action groupoid: source g, range g.t.
struct GroupoidElement {
    TorusPoint base;
    double time = 0.0;

    TorusPoint source() const { return base; }
    TorusPoint range(double lambda) const { return flow(base, time, lambda); }
};

inline GroupoidElement groupoid_unit(const TorusPoint& p) { return {p, 0.0}; }

inline GroupoidElement groupoid_inverse(const GroupoidElement& g, double lambda) {
    return {flow(g.base, g.time, lambda), -g.time};
}

// (g1,t)(g2,s) = (g2, s+t), defined when g1 = g2.s
inline GroupoidElement groupoid_compose(const GroupoidElement& g1, const GroupoidElement& g2,
                                        double lambda, double tol = 1e-12) {
    if (torus_dist(g1.source(), g2.range(lambda)) > tol)
        fail(errc::not_composable, "source of the first arrow must match range of the second");
    return {g2.base, g1.time + g2.time};
}

// Path-holonomy bisubmersion O_i x (-eps, eps): source is the projection,
// range is the flow. The source window is an unwrapped sub-box of a chart;
// the range window is the flow-smeared box, an open subset of the torus in
// its own right (not necessarily one of the four atlas charts).
struct Bisubmersion {
    int chart = 0;          // atlas chart carrying the source window
    Box window;             // 2D sub-box in unwrapped chart coordinates
    double eps = 0.2;
    double time_center = 0.0; // composites carry shifted/stacked windows
    double lambda = 0.0;

    Box domain() const {
        Box d = window;
        d.iv.push_back({time_center - eps, time_center + eps});
        return d;
    }
    Box range_window() const {
        Box r = window;
        double lo = time_center - eps, hi = time_center + eps;
        r.iv[0] = {window.iv[0][0] + lo, window.iv[0][1] + hi};
        r.iv[1] = {window.iv[1][0] + lambda * lo, window.iv[1][1] + lambda * hi};
        return r;
    }
    TorusPoint source_map(double x, double y, double) const { return {x, y}; }
    TorusPoint range_map(double x, double y, double t) const { return flow({x, y}, t, lambda); }

    // sampled invariant: the range of the domain lies in the range window
    bool range_contained(int samples = 8) const {
        Box rw = range_window();
        for (int i = 0; i < samples; ++i)
            for (int j = 0; j < samples; ++j)
                for (int k = 0; k < samples; ++k) {
                    double x = window.iv[0][0] + window.len(0) * (i + 0.5) / samples;
                    double y = window.iv[1][0] + window.len(1) * (j + 0.5) / samples;
                    double t = time_center - eps + 2 * eps * (k + 0.5) / samples;
                    TorusPoint r = range_map(x, y, t);
                    double u = rw.iv[0][0] + mod1(r.x - rw.iv[0][0]);
                    double v = rw.iv[1][0] + mod1(r.y - rw.iv[1][0]);
                    if (u > rw.iv[0][1] || v > rw.iv[1][1]) return false;
                }
        return true;
    }
};

inline Bisubmersion inverse_bisubmersion(const Bisubmersion& u) {
    // the inverse carries (p,t) -> (p.t, -t); as a chart window this is the
    // flow-translated window with the time interval reflected
    Bisubmersion v = u;
    Box rw = u.range_window();
    v.window = Box{{rw.iv[0], rw.iv[1]}};
    v.time_center = -u.time_center;
    return v;
}

// U o V = U x_{s_U, r_V} V; the composite window carries total time
// (t + s) and is realized over V's source window
inline Bisubmersion compose_bisubmersion(const Bisubmersion& u, const Bisubmersion& v) {
    Box vr = v.range_window();
    // fibered product nonempty iff V's range meets U's source window (mod 1)
    double ulox = u.window.iv[0][0], uhix = u.window.iv[0][1];
    double vlox = vr.iv[0][0], vhix = vr.iv[0][1];
    double shift = std::round(((ulox + uhix) - (vlox + vhix)) / 2.0);
    if (vhix - shift <= ulox || vlox - shift >= uhix)
        fail(errc::empty_fibered_product, "range of V misses the source window of U");
    Bisubmersion w = v;
    w.eps = u.eps + v.eps;
    w.time_center = u.time_center + v.time_center;
    return w;
}

} // namespace rotalg
