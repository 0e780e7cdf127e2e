#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rotalg/bump.hpp"
#include "rotalg/density.hpp"
#include "rotalg/fit.hpp"
#include "rotalg/quadrature.hpp"

using namespace rotalg;

// frozen oracle values, computed once by an independent dense midpoint rule
static const double kMass1 = 0.4439938161680794;
static const double kMass2 = 0.4665123931783676;
static const double kMass3 = 0.4410888872766043;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    const auto& gl = GaussLegendre::get(16);
    // degree-31 monomial on [-1,1]
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += gl.weights[k] * std::pow(gl.nodes[k], 30);
    CHECK(s == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
    double w = 0.0;
    for (int k = 0; k < 16; ++k) w += gl.weights[k];
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("composite quadrature with refinement estimate") {
    auto r = integrate_1d([](double x) { return std::sin(3.0 * x); }, 0.0, 2.0, 64.0);
    CHECK(r.value == doctest::Approx((1.0 - std::cos(6.0)) / 3.0).epsilon(1e-12));
    CHECK(r.err < 1e-10);
    // oscillation-aware panels keep high-frequency integrals accurate
    double om = 300.0;
    auto ro = integrate_1d([om](double x) { return std::cos(om * x); }, 0.0, 1.0, 64.0, om);
    CHECK(ro.value == doctest::Approx(std::sin(om) / om).epsilon(1e-9));
}

TEST_CASE("bump masses match the frozen oracle") {
    CHECK(bumptab::mass(1) == doctest::Approx(kMass1).epsilon(1e-12));
    CHECK(bumptab::mass(2) == doctest::Approx(kMass2).epsilon(1e-12));
    CHECK(bumptab::mass(3) == doctest::Approx(kMass3).epsilon(1e-12));
}

TEST_CASE("bump Fourier transforms") {
    CHECK(bump_ft1(0.0) == doctest::Approx(kMass1).epsilon(1e-12));
    CHECK(bump_ft2(0.0) == doctest::Approx(kMass2).epsilon(1e-12));
    // independent check at a nonzero frequency
    double kappa = 17.3;
    double direct = integrate_1d([kappa](double s) { return bump1(s) * std::cos(kappa * s); },
                                 -1.0, 1.0, 2048.0, kappa).value;
    CHECK(bump_ft1(kappa) == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("density integrate: closed form vs quadrature") {
    SUBCASE("unit-amplitude 1D bump of radius r has mass r * C1") {
        double r = 0.37;
        auto d = bump_density(Box::interval(-1.0, 1.0), {0.1}, {r}, 1.0);
        CHECK(d.integral().real() == doctest::Approx(r * kMass1).epsilon(1e-12));
        CHECK(integrate_quad(d, 512.0).real() == doctest::Approx(r * kMass1).epsilon(1e-10));
    }
    SUBCASE("zero density") {
        auto z = Density::zero(Box::interval(0.0, 1.0));
        CHECK(std::abs(z.integral()) == 0.0);
    }
    SUBCASE("linearity: scaling amplitude scales the integral") {
        auto d = bump_density(Box::interval(-1.0, 1.0), {0.0}, {0.5}, 1.0);
        cplx c{2.5, -1.0};
        auto dc = c * d;
        CHECK(std::abs(dc.integral() - c * d.integral()) < 1e-14);
    }
}

TEST_CASE("tensor products") {
    auto f1 = bump_density(Box::interval(0.0, 1.0), {0.5}, {0.2}, 1.0);
    auto f2 = bump_density(Box::interval(0.0, 1.0), {0.4}, {0.3}, cplx(0.0, 2.0));
    auto t = tensor(f1, f2);
    SUBCASE("integral factorizes") {
        CHECK(std::abs(t.integral() - f1.integral() * f2.integral()) < 1e-10);
    }
    SUBCASE("support is the product (sampled)") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            double x = u(rng), y = u(rng);
            bool in1 = std::abs(f1.eval({x})) > 0.0, in2 = std::abs(f2.eval({y})) > 0.0;
            bool in = std::abs(t.eval({x, y})) > 0.0;
            CHECK(in == (in1 && in2));
        }
    }
    SUBCASE("tensor with zero is zero") {
        auto z = Density::zero(Box::interval(0.0, 1.0));
        auto tz = tensor(f1, z);
        CHECK(tz.atoms.empty());
    }
}

TEST_CASE("modulated atoms have the closed-form transform") {
    // e^{i w x} times a bump: integral = rho * B1(rho w) * e^{i w c}
    double rho = 0.23, om = 41.0, c = 0.3;
    Density d = bump_density(Box::interval(-1.0, 1.0), {c}, {rho}, 1.0);
    d.atoms[0].freq = {om};
    cplx expect = rho * bump_ft1(rho * om) * cplx(std::cos(om * c), std::sin(om * c));
    CHECK(std::abs(d.integral() - expect) < 1e-12);
    cplx byquad = integrate_quad(d, 1024.0);
    CHECK(std::abs(d.integral() - byquad) < 1e-9);
}

TEST_CASE("bump lattice fit: reproduces smooth data with reported residual") {
    Box box = Box::interval(-0.5, 0.5);
    auto target = [](const std::vector<double>& x) -> cplx {
        return bump1(x[0] / 0.4) * std::cos(6.0 * x[0]);
    };
    BumpFitter::Options opt{0.025, 2.0, 3, 1e9};
    Density fitd = BumpFitter::fit(box, target, opt);
    CHECK(fitd.err < 5e-3); // stored residual is honest and modest
    double maxdev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        std::vector<double> x{-0.45 + 0.9 * i / 100.0};
        maxdev = std::max(maxdev, std::abs(fitd.eval(x) - target(x)));
    }
    CHECK(maxdev < 10.0 * std::max(fitd.err, 1e-12));
    SUBCASE("an unreachable residual threshold is rejected") {
        BumpFitter::Options strict{0.2, 2.0, 3, 1e-12};
        CHECK_THROWS_AS(BumpFitter::fit(box, target, strict), error);
    }
    SUBCASE("fit is linear in the data") {
        auto t2 = [&](const std::vector<double>& x) { return 2.0 * target(x); };
        Density f2 = BumpFitter::fit(box, t2, opt);
        double dev = 0.0;
        for (int i = 0; i <= 50; ++i) {
            std::vector<double> x{-0.45 + 0.9 * i / 50.0};
            dev = std::max(dev, std::abs(f2.eval(x) - 2.0 * fitd.eval(x)));
        }
        CHECK(dev < 1e-12);
    }
}
