#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rotalg/representation.hpp"

using namespace rotalg;

namespace {

std::mt19937_64 rng(77);
double unif(double a, double b) {
    return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

GroupoidKernel random_kernel(const Session& s, int nmodes = 3, int maxmode = 2) {
    GroupoidKernel k(s);
    for (int i = 0; i < nmodes; ++i) {
        int m = (int)(rng() % (2 * maxmode + 1)) - maxmode;
        int n = (int)(rng() % (2 * maxmode + 1)) - maxmode;
        k.mode(m, n).terms.push_back(
            {cplx(unif(-1, 1), unif(-1, 1)), unif(-0.04, 0.04), unif(0.06, 0.1), 0.0});
    }
    return k;
}

double hom_gap(const GroupoidKernel& k1, const GroupoidKernel& k2, const TorusPoint& p, int n,
               double window) {
    auto lhs = regular_representation(convolve_groupoid(k1, k2), p, n, window);
    auto rhs = regular_representation(k1, p, n, window).mul(regular_representation(k2, p, n, window));
    return (lhs - rhs).norm2();
}

} // namespace

TEST_CASE("zero kernel represents as the zero matrix") {
    Session s;
    auto m = regular_representation(GroupoidKernel(s), {0.1, 0.2}, 32, 1.0);
    double sup = 0.0;
    for (auto& v : m.a) sup = std::max(sup, std::abs(v));
    CHECK(sup == 0.0);
}

TEST_CASE("adjoint compatibility: rho(k*) = rho(k) dagger") {
    Session s;
    auto k = random_kernel(s);
    TorusPoint p{0.37, 0.81};
    auto a = regular_representation(involution_groupoid(k), p, 48, 1.0);
    auto b = regular_representation(k, p, 48, 1.0).adjoint();
    double dev = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) dev = std::max(dev, std::abs(a.a[i] - b.a[i]));
    CHECK(dev < 1e-12);
}

TEST_CASE("rho(k* conv k) is positive semidefinite up to the floor") {
    Session s;
    auto k = random_kernel(s);
    auto kk = convolve_groupoid(involution_groupoid(k), k);
    TorusPoint p{0.2, 0.6};
    auto m = regular_representation(kk, p, 48, 1.0);
    // hermitize against quadrature noise and inspect the spectrum
    auto mh = m;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            mh.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
    auto ev = mh.hermitian_eigenvalues();
    double lo = 1e30, hi = -1e30;
    for (double e : ev) { lo = std::min(lo, e); hi = std::max(hi, e); }
    CHECK(hi > 0.0);
    CHECK(lo > -1e-8 * std::max(1.0, hi));
}

TEST_CASE("representation homomorphism gap shrinks under refinement") {
    Session s;
    auto k1 = random_kernel(s), k2 = random_kernel(s);
    TorusPoint p{0.55, 0.15};
    double w = 1.0; // supports stay well inside the window
    double g1 = hom_gap(k1, k2, p, 32, w);
    double g2 = hom_gap(k1, k2, p, 64, w);
    MESSAGE("gap(32) = ", g1, " gap(64) = ", g2);
    CHECK(g2 < g1);
}

TEST_CASE("C*-identity trend improves as the window resolution doubles") {
    Session s;
    for (int trial = 0; trial < 3; ++trial) {
        auto k = random_kernel(s);
        auto kk = convolve_groupoid(involution_groupoid(k), k);
        TorusPoint p{unif(0, 1), unif(0, 1)};
        double prev = 1e30;
        for (int n : {16, 32, 64}) {
            auto rk = regular_representation(k, p, n, 1.0);
            auto rkk = regular_representation(kk, p, n, 1.0);
            double nk = rk.norm2(), nkk = rkk.norm2();
            double rel = std::fabs(nkk - nk * nk) / std::max(nk * nk, 1e-300);
            CHECK(rel < prev + 1e-12);
            prev = rel;
        }
    }
}
