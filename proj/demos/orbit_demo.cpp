// Orbit density certificates: continued-fraction horizons against the
// brute-force grid scan.
#include <cstdio>

#include "rotalg/orbit.hpp"

using namespace rotalg;

int main() {
    double lam = golden_lambda();
    std::printf("slope lambda = %.12f\n", lam);
    std::printf("%8s %10s %14s\n", "delta", "horizon", "max distance");
    for (double delta : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        double T = orbit_density_horizon(delta, lam);
        double d = orbit_distance_field(T, 200, lam);
        std::printf("%8.3f %10.1f %14.6f\n", delta, T, d);
    }
    return 0;
}
