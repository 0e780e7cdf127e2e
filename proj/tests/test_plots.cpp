#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rotalg/diffeology.hpp"
#include "rotalg/plots.hpp"

using namespace rotalg;

namespace {
std::mt19937_64 rng(11);
double unif(double a, double b) {
    return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}
Density small_bump_on_chart(int chart) {
    const Chart& c = fixed_atlas().chart(chart);
    Box box{{{c.lower_x, c.lower_x + c.side}, {c.lower_y, c.lower_y + c.side}}};
    return bump_density(box, {c.lower_x + unif(0.2, 0.4), c.lower_y + unif(0.2, 0.4)},
                        {unif(0.07, 0.1), unif(0.07, 0.1)}, cplx(unif(-1, 1), unif(-1, 1)));
}
} // namespace

TEST_CASE("plot factor maps compose as expected") {
    Session s;
    auto p0 = chart_restriction_plot(0);
    // restriction plots read their coordinates
    for (int i = 0; i < 20; ++i) {
        std::vector<double> y{unif(0.0, 0.6), unif(0.0, 0.6)};
        auto g = p0.h.eval(y, s.lambda);
        CHECK(torus_dist(g, TorusPoint{y[0], y[1]}) < 1e-15);
    }
}

TEST_CASE("product plots") {
    Session s;
    SUBCASE("product of two constant plots is the constant at the product") {
        auto c1 = constant_plot({0.2, 0.3}, Box{{{0.0, 0.1}}});
        auto c2 = constant_plot({0.15, 0.25}, Box{{{0.0, 0.1}}});
        auto p = plot_product(c1, c2, s.lambda);
        CHECK(p.kind == PlotKind::constant);
        auto g = p.h.eval({0.05, 0.05}, s.lambda);
        CHECK(torus_dist(g, TorusPoint{0.35, 0.55}) < 1e-14);
    }
    SUBCASE("product with the constant identity equals the factor (classes)") {
        auto chi = chart_restriction_plot(0);
        auto e = constant_plot({0.0, 0.0}, Box{{{-0.05, 0.05}}});
        auto prod = plot_product(chi, e, s.lambda);
        auto f = small_bump_on_chart(0);
        Density w = unit_mass_bump(0.0, 0.04);
        auto lhs = q_plot(prod, tensor(f, w), s);
        auto rhs = q_plot(chi, f, s);
        CHECK(lhs.distance(rhs) < 1e-10);
    }
    SUBCASE("product of chart restrictions: pointwise factorization") {
        auto p1 = chart_restriction_plot(0);
        auto p2 = chart_restriction_plot(1);
        auto prod = plot_product(p1, p2, s.lambda);
        for (int i = 0; i < 50; ++i) {
            std::vector<double> y{unif(0.0, 0.6), unif(0.0, 0.6), unif(0.5, 1.1), unif(0.0, 0.6)};
            auto lhs = prod.h.eval(y, s.lambda);
            auto a = p1.h.eval({y[0], y[1]}, s.lambda);
            auto b = p2.h.eval({y[2], y[3]}, s.lambda);
            CHECK(torus_dist(lhs, a + b) < 1e-13);
        }
        // a full-chart product straddles, so pieces must cover it
        CHECK(prod.target_chart == -1);
        CHECK(!prod.pieces.empty());
        std::function<void(const Plot&)> leaves = [&](const Plot& q) {
            if (q.pieces.empty()) {
                CHECK(q.target_chart >= 0);
                return;
            }
            for (auto& piece : q.pieces) leaves(*piece);
        };
        leaves(prod);
    }
}

TEST_CASE("inverse plots") {
    Session s;
    SUBCASE("inverse of a constant plot inverts the point") {
        auto c = constant_plot({0.2, 0.35}, Box{{{0.0, 0.1}}});
        auto ci = plot_inverse(c, s.lambda);
        auto g = ci.h.eval({-0.05}, s.lambda);
        CHECK(torus_dist(g, TorusPoint{-0.2, -0.35}) < 1e-14);
    }
    SUBCASE("inverse of inverse is the original (classes)") {
        auto chi = chart_restriction_plot(2);
        auto ii = plot_inverse(plot_inverse(chi, s.lambda), s.lambda);
        auto f = small_bump_on_chart(2);
        auto a = q_plot(chi, f, s);
        auto b = q_plot(ii, f, s);
        CHECK(a.distance(b) < 1e-12);
    }
    SUBCASE("sampled identity chi^{-1}(iota(u)) = chi(u)^{-1}") {
        auto chi = chart_restriction_plot(0);
        auto inv = plot_inverse(chi, s.lambda);
        for (int i = 0; i < 50; ++i) {
            std::vector<double> u{unif(0.0, 0.6), unif(0.0, 0.6)};
            auto lhs = inv.h.eval({-u[0], -u[1]}, s.lambda);
            auto rhs = -chi.h.eval(u, s.lambda);
            CHECK(torus_dist(lhs, rhs) < 1e-13);
        }
    }
}

TEST_CASE("plot products associate at the class level") {
    Session s;
    auto p1 = chart_restriction_plot(0);
    auto c2 = constant_plot({0.05, 0.1}, Box{{{-0.04, 0.04}}});
    auto c3 = constant_plot({0.1, 0.05}, Box{{{-0.04, 0.04}}});
    auto left = plot_product(plot_product(p1, c2, s.lambda), c3, s.lambda);
    auto right = plot_product(p1, plot_product(c2, c3, s.lambda), s.lambda);
    auto f = small_bump_on_chart(0);
    Density w2 = unit_mass_bump(0.0, 0.03), w3 = unit_mass_bump(0.0, 0.03);
    auto a = q_plot(left, tensor(tensor(f, w2), w3), s);
    auto b = q_plot(right, tensor(tensor(f, w2), w3), s);
    CHECK(a.distance(b) < 1e-8);
}

TEST_CASE("fiber product realization") {
    Session s;
    SUBCASE("constant plot: p flows the point") {
        auto c = constant_plot({0.0, 0.0}, Box{{{0.1, 0.3}, {0.1, 0.3}}});
        auto fp = fiber_product_plot(c, {0.2, 0.2}, 0.1, s.lambda);
        CHECK(fp.target_chart >= 0);
        for (int i = 0; i < 30; ++i) {
            double t = unif(-0.1, 0.1);
            auto p = fp.p.eval({0.15, 0.25, t}, s.lambda);
            CHECK(torus_dist(p, flow({0.0, 0.0}, t, s.lambda)) < 1e-13);
        }
    }
    SUBCASE("chart restriction: p = flow, q = projection, identities hold") {
        auto chi = chart_restriction_plot(0);
        auto fp = fiber_product_plot(chi, {0.3, 0.3}, 0.1, s.lambda);
        CHECK(fp.target_chart >= 0);
        CHECK(fp.q.fiber_consistency() < 1e-14);
        // pi|_{O_i} o p = psi = chi o q at the level of torus lifts:
        // p(y,s) = flow(h(q(y,s)), s)
        int dev_count = 0;
        for (int i = 0; i < 100; ++i) {
            std::vector<double> ys{unif(fp.psi.domain.iv[0][0], fp.psi.domain.iv[0][1]),
                                   unif(fp.psi.domain.iv[1][0], fp.psi.domain.iv[1][1]),
                                   unif(-0.1, 0.1)};
            auto pv = fp.p.eval(ys, s.lambda);
            auto qv = fp.q.map(ys);
            auto rhs = flow(chi.h.eval(qv, s.lambda), ys[2], s.lambda);
            if (torus_dist(pv, rhs) > 1e-10) ++dev_count;
            // and the image stays in the target chart
            CHECK(fixed_atlas().chart(fp.target_chart).contains(pv, 1e-6));
        }
        CHECK(dev_count == 0);
    }
    SUBCASE("oversized epsilon is rejected") {
        auto chi = chart_restriction_plot(0);
        CHECK_THROWS_AS(fiber_product_plot(chi, {0.3, 0.3}, 0.45, s.lambda), error);
    }
}
