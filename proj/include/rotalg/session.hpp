#pragma once

#include <cmath>
#include <cstdint>

namespace rotalg {

inline double golden_lambda() { return (std::sqrt(5.0) - 1.0) / 2.0; }

// Session-wide parameters. lambda plays a double role: a formal symbol in
// exact period arithmetic and a numeric slope everywhere else. The default
// is the golden-ratio conjugate, the worst-approximable slope.
struct Session {
    double lambda = golden_lambda();
    int bandlimit = 16;          // Fourier modes per torus direction
    double quad_points = 256.0;  // Gauss-Legendre points per unit length
    double epsilon = 0.2;        // bisubmersion time half-window
    double mollifier_width = 3e-6; // half-width of factorization time bumps
    std::uint64_t seed = 0;
    double tolerance_scale = 1.0;

    Session() = default;
    explicit Session(double lam) : lambda(lam) {}

    // orbit frequency of the (m,n) Fourier mode under the slope-lambda flow
    double theta(int m, int n) const { return 2.0 * M_PI * (m + lambda * n); }

    Session refined(double factor = 2.0) const {
        Session s = *this;
        s.quad_points *= factor;
        return s;
    }
};

} // namespace rotalg
