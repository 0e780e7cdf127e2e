#pragma once

#include <cmath>
#include <cstring>
#include <mutex>
#include <unordered_map>

#include "rotalg/quadrature.hpp"

namespace rotalg {

// the standard C-infinity bump profile as a function of r^2
inline double bump_r2(double r2) {
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}
inline double bump1(double s) { return bump_r2(s * s); }

namespace bumptab {

// total mass of the unit bump in dimension d (d <= 3 arises here)
inline double mass(int d) {
    static double c[4] = {0, 0, 0, 0};
    if (d < 1 || d > 3) fail(errc::bad_input, "bump mass dimension");
    if (c[d] == 0.0) {
        if (d == 1) {
            c[1] = integrate_1d([](double s) { return bump1(s); }, -1.0, 1.0, 4096.0).value;
        } else if (d == 2) {
            c[2] = 2.0 * M_PI *
                   integrate_1d([](double r) { return bump_r2(r * r) * r; }, 0.0, 1.0, 4096.0).value;
        } else {
            c[3] = 4.0 * M_PI *
                   integrate_1d([](double r) { return bump_r2(r * r) * r * r; }, 0.0, 1.0, 4096.0).value;
        }
    }
    return c[d];
}

struct Memo {
    std::unordered_map<long long, double> map;
    std::mutex mtx;
    double get(double kappa, double (*f)(double)) {
        long long key;
        static_assert(sizeof(key) == sizeof(kappa));
        std::memcpy(&key, &kappa, sizeof(key));
        {
            std::lock_guard<std::mutex> lock(mtx);
            auto it = map.find(key);
            if (it != map.end()) return it->second;
        }
        double v = f(kappa);
        std::lock_guard<std::mutex> lock(mtx);
        map.emplace(key, v);
        return v;
    }
};

inline double b1_direct(double kappa) {
    return integrate_1d([kappa](double s) { return bump1(s) * std::cos(kappa * s); },
                        -1.0, 1.0, 256.0, std::fabs(kappa)).value;
}

inline double b2_direct(double kappa) {
    return 2.0 * M_PI *
           integrate_1d([kappa](double r) { return bump_r2(r * r) * std::cyl_bessel_j(0.0, kappa * r) * r; },
                        0.0, 1.0, 256.0, std::fabs(kappa)).value;
}

} // namespace bumptab

// Fourier transform of the 1D unit bump: int b(s) e^{-i kappa s} ds.
// Real and even; memoized since the same frequencies recur constantly.
inline double bump_ft1(double kappa) {
    kappa = std::fabs(kappa);
    static bumptab::Memo memo;
    return memo.get(kappa, bumptab::b1_direct);
}

// radial Fourier transform of the 2D unit bump at |xi| = kappa
inline double bump_ft2(double kappa) {
    kappa = std::fabs(kappa);
    static bumptab::Memo memo;
    return memo.get(kappa, bumptab::b2_direct);
}

} // namespace rotalg
