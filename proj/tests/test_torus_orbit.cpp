#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rotalg/orbit.hpp"
#include "rotalg/torus.hpp"

using namespace rotalg;

TEST_CASE("flow is a one-parameter group action") {
    double lam = golden_lambda();
    TorusPoint o{0.0, 0.0};
    auto p = flow(o, 0.0, lam);
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(0.0));
    auto q = flow(o, 1.0, lam);
    CHECK(q.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q.y == doctest::Approx(lam));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        TorusPoint r{u(rng), u(rng)};
        auto a = flow(flow(r, 0.3, lam), 0.4, lam);
        auto b = flow(r, 0.7, lam);
        CHECK(torus_dist(a, b) < 1e-14);
        auto c = flow(flow(r, u(rng) - 0.5, lam), 0.0, lam);
        CHECK(torus_dist(c, flow(r, 0.0, lam)) <= torus_dist(c, c) + 1.0); // sanity
    }
}

TEST_CASE("torus distance is the flat metric over translates") {
    CHECK(torus_dist({0.95, 0.0}, {0.05, 0.0}) == doctest::Approx(0.1));
    CHECK(torus_dist({0.0, 0.9}, {0.0, 0.1}) == doctest::Approx(0.2));
    CHECK(torus_dist({0.9, 0.9}, {0.1, 0.1}) == doctest::Approx(std::sqrt(0.08)));
}

TEST_CASE("atlas invariants") {
    const Atlas& a = fixed_atlas(); // verify() ran at construction
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        TorusPoint p{u(rng), u(rng)};
        double s = 0.0;
        for (int c = 0; c < Atlas::chart_count; ++c) s += a.pou(c, p);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(a.chart_of(p) >= 0);
    }
}

TEST_CASE("orbit density horizon: small delta certificates") {
    double lam = golden_lambda();
    SUBCASE("delta = 0.5 gives a small horizon") {
        double T = orbit_density_horizon(0.49, lam);
        CHECK(T <= 4.0);
        double d = orbit_distance_field_brute(T, 100, lam);
        CHECK(d <= 0.49);
    }
    SUBCASE("horizon is monotone in delta") {
        double prev = 1e30;
        for (double delta : {0.2, 0.1, 0.05, 0.01}) {
            double T = orbit_density_horizon(delta, lam);
            CHECK(T <= prev * 1e6); // horizons grow as delta shrinks
            double Tprev = orbit_density_horizon(delta * 2 < 0.5 ? delta * 2 : 0.4, lam);
            CHECK(Tprev <= T);
            prev = T;
        }
    }
    SUBCASE("invalid delta") {
        CHECK_THROWS_AS(orbit_density_horizon(0.0, lam), error);
        CHECK_THROWS_AS(orbit_density_horizon(0.7, lam), error);
    }
}

TEST_CASE("distance field matches brute force and certifies horizons") {
    double lam = golden_lambda();
    SUBCASE("localized scan equals brute force") {
        for (double T : {0.0, 1.0, 3.0}) {
            double a = orbit_distance_field(T, 40, lam);
            double b = orbit_distance_field_brute(T, 40, lam);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
    SUBCASE("T = 0 leaves most of the torus far from the origin") {
        double d = orbit_distance_field(0.0, 50, lam);
        CHECK(d > 0.4);
    }
    SUBCASE("horizon certificates verify on the grid") {
        for (double delta : {0.2, 0.1, 0.05}) {
            double T = orbit_density_horizon(delta, lam);
            double d = orbit_distance_field(T, 200, lam);
            CHECK(d <= delta);
        }
    }
    SUBCASE("field is non-increasing in T") {
        double prev = 1e30;
        for (double T : {0.5, 1.0, 2.0, 5.0, 13.0}) {
            double d = orbit_distance_field(T, 60, lam);
            CHECK(d <= prev + 1e-12);
            prev = d;
        }
    }
}
