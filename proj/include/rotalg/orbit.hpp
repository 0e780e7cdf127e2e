#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rotalg/errors.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

struct Convergent {
    std::int64_t p = 0, q = 1;
    double rem = 0.0; // |q*lambda - p|
};

// continued-fraction convergents of lambda (numeric; desk scale)
inline std::vector<Convergent> convergents(double lambda, std::int64_t qmax = 100000000) {
    std::vector<Convergent> out;
    double x = lambda;
    std::int64_t p0 = 1, q0 = 0, p1 = (std::int64_t)std::floor(x), q1 = 1;
    out.push_back({p1, q1, std::fabs(q1 * lambda - p1)});
    x -= std::floor(x);
    for (int it = 0; it < 60 && x > 1e-13; ++it) {
        x = 1.0 / x;
        std::int64_t a = (std::int64_t)std::floor(x);
        x -= std::floor(x);
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax || q2 <= 0) break;
        out.push_back({p2, q2, std::fabs(q2 * lambda - p2)});
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return out;
}

// Time horizon certifying delta-density of the orbit segment from the
// origin: by the three-distance theorem the q_k wrap lines have vertical
// gaps at most |q_{k-1} lambda| + |q_k lambda| (distances to the nearest
// integer), so the flat distance to the segment is bounded by half that,
// projected perpendicular to the slope.
inline double orbit_density_horizon(double delta, double lambda) {
    if (!(delta > 0.0 && delta < 0.5)) fail(errc::invalid_delta, "delta must be in (0, 1/2)");
    auto cs = convergents(lambda);
    double proj = 1.0 / std::sqrt(1.0 + lambda * lambda);
    for (size_t k = 1; k < cs.size(); ++k) {
        double bound = (cs[k - 1].rem + cs[k].rem) * 0.5 * proj;
        double T = (double)cs[k].q;
        if (T >= 1.0 && bound <= 0.95 * delta) return T;
    }
    fail(errc::invalid_delta, "no convergent certifies the requested density");
}

// Max over an n x n grid of the distance to the sampled orbit segment
// {flow(origin, t) : t in [0,T]}, sampling step <= 1/(4n). Equals the brute
// force min over samples; candidates are localized per integer translate,
// where samples lie on a straight line.
inline double orbit_distance_field(double T, int grid_n, double lambda,
                                   TorusPoint origin = TorusPoint{0.0, 0.0}) {
    if (grid_n < 10) fail(errc::bad_input, "grid_n must be at least 10");
    double step = 1.0 / (4.0 * grid_n);
    std::int64_t nsamp = (std::int64_t)std::floor(T / step) + 1; // t_j = j*step, j=0..nsamp-1
    double maxd = 0.0;
    double norm2 = 1.0 + lambda * lambda;
    for (int gi = 0; gi < grid_n; ++gi) {
        for (int gj = 0; gj < grid_n; ++gj) {
            double a = (gi + 0.5) / grid_n - origin.x;
            double b = (gj + 0.5) / grid_n - origin.y;
            double best = 1e30;
            for (std::int64_t u = -1; u <= (std::int64_t)std::ceil(T) + 1; ++u) {
                double ax = a + u;
                if (ax < -0.75 || ax > T + 0.75) continue;
                double vb = lambda * ax - b;
                std::int64_t v0 = (std::int64_t)std::llround(vb);
                for (std::int64_t v = v0 - 1; v <= v0 + 1; ++v) {
                    double by = b + v;
                    // nearest samples to the projection onto the line (t, lambda t),
                    // clamped into the segment so endpoints are candidates
                    double tproj = (ax + lambda * by) / norm2;
                    std::int64_t j0 = (std::int64_t)std::llround(tproj / step);
                    if (j0 < 0) j0 = 0;
                    if (j0 >= nsamp) j0 = nsamp - 1;
                    for (std::int64_t j = j0 - 1; j <= j0 + 1; ++j) {
                        if (j < 0 || j >= nsamp) continue;
                        double t = j * step;
                        double dx = t - ax, dy = lambda * t - by;
                        double d2 = dx * dx + dy * dy;
                        if (d2 < best) best = d2;
                    }
                }
            }
            double d = std::sqrt(best);
            if (d > maxd) maxd = d;
        }
    }
    return maxd;
}

// plain brute-force oracle (used by tests at small sizes)
inline double orbit_distance_field_brute(double T, int grid_n, double lambda) {
    double step = 1.0 / (4.0 * grid_n);
    std::int64_t nsamp = (std::int64_t)std::floor(T / step) + 1;
    std::vector<TorusPoint> orbit;
    orbit.reserve(nsamp);
    for (std::int64_t j = 0; j < nsamp; ++j)
        orbit.push_back(flow({0.0, 0.0}, j * step, lambda));
    double maxd = 0.0;
    for (int gi = 0; gi < grid_n; ++gi)
        for (int gj = 0; gj < grid_n; ++gj) {
            TorusPoint p{(gi + 0.5) / grid_n, (gj + 0.5) / grid_n};
            double best = 1e30;
            for (const auto& o : orbit) best = std::min(best, torus_dist(p, o));
            maxd = std::max(maxd, best);
        }
    return maxd;
}

} // namespace rotalg
