#pragma once

#include <random>
#include <string>
#include <vector>

#include "rotalg/nc_torus.hpp"
#include "rotalg/orbit.hpp"
#include "rotalg/periods.hpp"
#include "rotalg/phi.hpp"
#include "rotalg/representation.hpp"

namespace rotalg {

struct CheckResult {
    std::string check;
    double value = 0.0;     // measured deviation (or worst ratio for multi-part checks)
    double tolerance = 0.0; // pass iff value <= tolerance
    bool pass = false;
};

inline CheckResult make_check(std::string name, double value, double tolerance) {
    CheckResult r{std::move(name), value, tolerance, value <= tolerance};
    return r;
}

namespace verifydetail {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double unif(double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    }
    int uniform_int(int lo, int hi) { return lo + (int)(gen() % (std::uint64_t)(hi - lo + 1)); }
};

inline NcElement random_nc(Rng& rng, int support, int terms) {
    NcElement e;
    for (int i = 0; i < terms; ++i)
        e.c[{rng.uniform_int(-support, support), rng.uniform_int(-support, support)}] +=
            cplx(rng.unif(-1, 1), rng.unif(-1, 1));
    e.prune();
    return e;
}

inline GroupoidKernel random_kernel(const Session& s, Rng& rng, int nmodes, int maxmode) {
    GroupoidKernel k(s);
    for (int i = 0; i < nmodes; ++i)
        k.mode(rng.uniform_int(-maxmode, maxmode), rng.uniform_int(-maxmode, maxmode))
            .terms.push_back({cplx(rng.unif(-1, 1), rng.unif(-1, 1)), rng.unif(-0.05, 0.05),
                              rng.unif(0.06, 0.12), 0.0});
    return k;
}

inline double kernel_sample_dev(const GroupoidKernel& a, const GroupoidKernel& b, Rng& rng,
                                int samples = 120) {
    double T = std::max(a.time_halfwidth(), b.time_halfwidth()) + 0.01;
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        TorusPoint g{rng.unif(0, 1), rng.unif(0, 1)};
        double t = rng.unif(-T, T);
        dev = std::max(dev, std::abs(a.eval(g, t) - b.eval(g, t)));
    }
    return dev;
}

inline Box chart_box(int i) {
    const Chart& c = fixed_atlas().chart(i);
    return Box{{{c.lower_x, c.lower_x + c.side}, {c.lower_y, c.lower_y + c.side}}};
}

inline Density random_chart_density(Rng& rng, int chart, int atoms = 2) {
    Box box = chart_box(chart);
    Density d = Density::zero(box);
    for (int i = 0; i < atoms; ++i)
        d = d + bump_density(box,
                             {box.iv[0][0] + rng.unif(0.15, 0.45), box.iv[1][0] + rng.unif(0.15, 0.45)},
                             {rng.unif(0.07, 0.12), rng.unif(0.07, 0.12)},
                             cplx(rng.unif(-1, 1), rng.unif(-1, 1)));
    return d;
}

} // namespace verifydetail

// ---- criterion 1: the commutation relation ----
inline CheckResult criterion_commutation(const Session& s) {
    auto u = NcElement::monomial(1, 0), v = NcElement::monomial(0, 1);
    auto uv = multiply(u, v, s.lambda);
    auto vu = multiply(v, u, s.lambda);
    auto diff = uv - (cis_lambda(s.lambda, 1) * vu);
    return make_check("commutation-relation", diff.norm_inf(), 1e-15);
}

// ---- criterion 2: *-algebra axioms on seeded random elements ----
inline CheckResult criterion_star_algebra(const Session& s) {
    verifydetail::Rng rng(s.seed + 2);
    std::vector<NcElement> pool;
    for (int i = 0; i < 100; ++i) pool.push_back(verifydetail::random_nc(rng, 5, 6));
    double worst = 0.0;
    for (int i = 0; i + 2 < 100; i += 3) {
        auto lhs = multiply(multiply(pool[i], pool[i + 1], s.lambda), pool[i + 2], s.lambda);
        auto rhs = multiply(pool[i], multiply(pool[i + 1], pool[i + 2], s.lambda), s.lambda);
        worst = std::max(worst, (lhs - rhs).norm_inf() / 1e-12);
    }
    for (int i = 0; i + 1 < 100; i += 2) {
        auto lhs = star(multiply(pool[i], pool[i + 1], s.lambda), s.lambda);
        auto rhs = multiply(star(pool[i + 1], s.lambda), star(pool[i], s.lambda), s.lambda);
        worst = std::max(worst, (lhs - rhs).norm_inf() / 1e-14);
        cplx tab = trace(multiply(pool[i], pool[i + 1], s.lambda));
        cplx tba = trace(multiply(pool[i + 1], pool[i], s.lambda));
        worst = std::max(worst, std::abs(tab - tba) / 1e-15);
    }
    for (int i = 0; i < 100; ++i) {
        cplx taa = trace(multiply(star(pool[i], s.lambda), pool[i], s.lambda));
        if (taa.real() < 0.0) worst = std::max(worst, 2.0);
        worst = std::max(worst, std::abs(taa.imag()) / 1e-15);
    }
    return make_check("star-algebra-axioms", worst, 1.0);
}

// ---- criterion 3: the trace-lambda projection ----
inline CheckResult criterion_projection(const Session& s) {
    double worst = 0.0;
    double prev = 1e30;
    double res48 = 0.0;
    for (int B : {16, 32, 48}) {
        auto e = ncdetail::build_projection(s.lambda, 0.95, B);
        double res = (multiply(e, e, s.lambda) - e).norm1();
        if (res >= prev) worst = std::max(worst, 2.0); // must decrease monotonically
        prev = res;
        if (B == 48) res48 = res;
        auto d = star(e, s.lambda) - e;
        worst = std::max(worst, d.norm_inf() / 1e-14);
        worst = std::max(worst, std::abs(trace(e).real() - s.lambda) / 1e-6);
    }
    worst = std::max(worst, res48 / 1e-3);
    return make_check("powers-rieffel-projection", worst, 1.0);
}

// ---- criterion 4: groupoid convolution algebra ----
inline CheckResult criterion_groupoid_algebra(const Session& s) {
    verifydetail::Rng rng(s.seed + 4);
    auto k1 = verifydetail::random_kernel(s, rng, 3, 2);
    auto k2 = verifydetail::random_kernel(s, rng, 3, 2);
    auto k3 = verifydetail::random_kernel(s, rng, 3, 2);
    double scale = std::max({k1.sup_bound(), k2.sup_bound(), 1.0});

    auto lhs = convolve_groupoid(convolve_groupoid(k1, k2), k3);
    auto rhs = convolve_groupoid(k1, convolve_groupoid(k2, k3));
    double assoc = verifydetail::kernel_sample_dev(lhs, rhs, rng) / scale;

    auto istar = involution_groupoid(convolve_groupoid(k1, k2));
    auto istar2 = convolve_groupoid(involution_groupoid(k2), involution_groupoid(k1));
    double anti = verifydetail::kernel_sample_dev(istar, istar2, rng) / scale;
    auto dbl = involution_groupoid(involution_groupoid(k1));
    double invol = verifydetail::kernel_sample_dev(dbl, k1, rng) / scale;

    // one grid refinement must reduce the association deviation 4x
    Session fine = s.refined();
    auto f1 = k1, f2 = k2, f3 = k3;
    f1.session = fine;
    f2.session = fine;
    f3.session = fine;
    auto flhs = convolve_groupoid(convolve_groupoid(f1, f2), f3);
    auto frhs = convolve_groupoid(f1, convolve_groupoid(f2, f3));
    double fassoc = verifydetail::kernel_sample_dev(flhs, frhs, rng) / scale;

    double worst = std::max({assoc / 1e-6, anti / 1e-6, invol / 1e-10});
    if (fassoc > assoc / 4.0) worst = std::max(worst, 2.0);
    return make_check("groupoid-convolution-algebra", worst, 1.0);
}

// ---- criterion 5: the diffeological algebra ----
inline CheckResult criterion_diffeology_algebra(const Session& s) {
    verifydetail::Rng rng(s.seed + 5);
    std::vector<DiffClass> cls;
    for (int i = 0; i < 20; ++i) {
        int ch = rng.uniform_int(0, 3);
        cls.push_back(q_chart(ch, verifydetail::random_chart_density(rng, ch), s));
    }
    double worst = 0.0;
    // product axioms: associativity, distributivity, scalar bilinearity
    for (int i = 0; i + 2 < 9; i += 3) {
        auto lhs = convolve_diff(convolve_diff(cls[i], cls[i + 1]), cls[i + 2]);
        auto rhs = convolve_diff(cls[i], convolve_diff(cls[i + 1], cls[i + 2]));
        worst = std::max(worst, lhs.distance(rhs) / 1e-6);
    }
    for (int i = 0; i + 2 < 20; i += 5) {
        auto l1 = convolve_diff(cls[i], cls[i + 1] + cls[i + 2]);
        auto r1 = convolve_diff(cls[i], cls[i + 1]) + convolve_diff(cls[i], cls[i + 2]);
        worst = std::max(worst, l1.distance(r1) / 1e-8);
        auto l2 = convolve_diff(cls[i] + cls[i + 1], cls[i + 2]);
        auto r2 = convolve_diff(cls[i], cls[i + 2]) + convolve_diff(cls[i + 1], cls[i + 2]);
        worst = std::max(worst, l2.distance(r2) / 1e-8);
        cplx a{rng.unif(-1, 1), rng.unif(-1, 1)}, b{rng.unif(-1, 1), rng.unif(-1, 1)};
        auto l3 = convolve_diff(a * cls[i], b * cls[i + 1]);
        auto r3 = (a * b) * convolve_diff(cls[i], cls[i + 1]);
        worst = std::max(worst, l3.distance(r3) / 1e-8);
    }
    // involution axioms
    for (int i = 0; i + 1 < 20; i += 4) {
        worst = std::max(worst,
                         involution_diff(involution_diff(cls[i])).distance(cls[i]) / 1e-10);
        auto lhs = involution_diff(convolve_diff(cls[i], cls[i + 1]));
        auto rhs = convolve_diff(involution_diff(cls[i + 1]), involution_diff(cls[i]));
        worst = std::max(worst, lhs.distance(rhs) / 1e-6);
        auto l4 = involution_diff(cls[i] + cls[i + 1]);
        auto r4 = involution_diff(cls[i]) + involution_diff(cls[i + 1]);
        worst = std::max(worst, l4.distance(r4) / 1e-12);
        cplx a{rng.unif(-1, 1), rng.unif(-1, 1)};
        auto l5 = involution_diff(a * cls[i]);
        auto r5 = std::conj(a) * involution_diff(cls[i]);
        worst = std::max(worst, l5.distance(r5) / 1e-12);
    }
    // constructive ideal generators vanish
    for (int i = 0; i < 3; ++i) {
        Box dom = verifydetail::chart_box(0);
        dom.iv.push_back({-s.epsilon, s.epsilon});
        double w0 = s.mollifier_width;
        Density u2 = bump_density(verifydetail::chart_box(0),
                                  {rng.unif(0.2, 0.4), rng.unif(0.2, 0.4)},
                                  {rng.unif(0.09, 0.13), rng.unif(0.09, 0.13)}, 1.0);
        Density odd = bump_density(Box::interval(-w0, w0), {w0 / 2}, {w0 / 4}, 1.0) +
                      bump_density(Box::interval(-w0, w0), {-w0 / 2}, {w0 / 4}, -1.0);
        IdealWitness w{dom, TorusMap::coord_pair(0, 1), tensor(u2, odd)};
        auto zero_cls = ideal_generator(w, s);
        DiffClass zero(s);
        worst = std::max(worst, zero_cls.distance(zero) / (1e-6 * w.g.sup_bound()));
    }
    return make_check("diffeological-algebra", worst, 1.0);
}

// ---- criterion 6: Q-map coherence ----
inline CheckResult criterion_q_coherence(const Session& s) {
    verifydetail::Rng rng(s.seed + 6);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        int chart = rng.uniform_int(0, 3);
        auto chi = chart_restriction_plot(chart);
        Box dom = chi.domain;
        double klen = rng.unif(0.05, 0.2);
        dom.iv.push_back({-klen, klen});
        auto q = SubmersionDescriptor::projection(dom, {0, 1});
        Plot psi;
        psi.kind = PlotKind::composed;
        psi.domain = dom;
        psi.h = chi.h;
        psi.target_chart = chart;
        auto g = tensor(verifydetail::random_chart_density(rng, chart),
                        bump_density(Box::interval(-klen, klen), {0.0}, {klen * 0.7},
                                     cplx(rng.unif(-1, 1), rng.unif(-1, 1))));
        auto lhs = q_plot(psi, g, s);
        auto rhs = q_plot(chi, pushforward(q, g), s);
        worst = std::max(worst, lhs.distance(rhs) / 1e-7);
    }
    // chart-overlap consistency of q_chart
    for (int trial = 0; trial < 5; ++trial) {
        double cx = 0.55, cy = rng.unif(0.2, 0.4);
        cplx amp{rng.unif(-1, 1), rng.unif(-1, 1)};
        auto f0 = bump_density(verifydetail::chart_box(0), {cx, cy}, {0.04, 0.08}, amp);
        auto f1 = bump_density(verifydetail::chart_box(1), {cx, cy}, {0.04, 0.08}, amp);
        worst = std::max(worst, q_chart(0, f0, s).distance(q_chart(1, f1, s)) / 1e-8);
    }
    return make_check("q-map-coherence", worst, 1.0);
}

// ---- criterion 7: the Phi bridge ----
inline CheckResult criterion_phi_bridge(const Session& s) {
    verifydetail::Rng rng(s.seed + 7);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        int ch = rng.uniform_int(0, 3);
        auto c = q_chart(ch, verifydetail::random_chart_density(rng, ch), s);
        auto round = phi(phi_section(c));
        worst = std::max(worst, round.distance(c) / 1e-7);
    }
    // injectivity witnesses
    for (int i = 0; i < 3; ++i) {
        Box dom = verifydetail::chart_box(0);
        dom.iv.push_back({-s.epsilon, s.epsilon});
        double w0 = s.mollifier_width;
        Density u2 = bump_density(verifydetail::chart_box(0),
                                  {rng.unif(0.2, 0.4), rng.unif(0.2, 0.4)}, {0.12, 0.12}, 1.0);
        Density odd = bump_density(Box::interval(-w0, w0), {w0 / 2}, {w0 / 4}, 1.0) +
                      bump_density(Box::interval(-w0, w0), {-w0 / 2}, {w0 / 4}, -1.0);
        PhiWitness w{dom, TorusMap::coord_pair(0, 1), tensor(u2, odd), rng.unif(-0.1, 0.1),
                     s.epsilon};
        auto rep = injectivity_witness(w, s);
        if (!rep.pass) worst = std::max(worst, 2.0);
        worst = std::max(worst, rep.transport_residual / 1e-7);
        worst = std::max(worst, rep.class_residual / 1e-7);
    }
    // star-homomorphism and the commuting squares, with refinement
    auto k1 = verifydetail::random_kernel(s, rng, 3, 2);
    auto k2 = verifydetail::random_kernel(s, rng, 3, 2);
    auto rep = star_hom_check(k1, k2, "group");
    worst = std::max({worst, rep.product_dev / 1e-6, rep.involution_dev / 1e-6,
                      rep.diagram_inv_dev / 1e-12, rep.diagram_mul_dev / 1e-12});
    Session fine = s.refined();
    auto f1 = k1, f2 = k2;
    f1.session = fine;
    f2.session = fine;
    auto repf = star_hom_check(f1, f2, "group");
    if (repf.product_dev > rep.product_dev / 2.0 + 1e-15) worst = std::max(worst, 2.0);
    auto repg = star_hom_check(k1, k2, "groupoid");
    worst = std::max(worst, repg.product_dev / 1e-6);
    return make_check("phi-bridge", worst, 1.0);
}

// ---- criterion 8: orbit density witness ----
inline CheckResult criterion_orbit_density(const Session& s) {
    double worst = 0.0;
    double T = orbit_density_horizon(0.01, s.lambda);
    double d = orbit_distance_field(T, 200, s.lambda);
    worst = std::max(worst, d / 0.01);
    double prev = 1e30;
    for (double delta : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        double Ti = orbit_density_horizon(delta, s.lambda);
        double di = orbit_distance_field(Ti, 200, s.lambda);
        if (di > prev + 1e-12) worst = std::max(worst, 2.0); // non-increasing in T
        if (di > delta) worst = std::max(worst, 2.0);
        prev = di;
    }
    return make_check("orbit-density-witness", worst, 1.0);
}

// ---- criterion 9: the period analyzer ----
inline CheckResult criterion_periods(const Session& s) {
    using R = Rational;
    auto mk = [&](std::vector<PeriodValue> v) { return PeriodGroup{std::move(v), s.lambda}; };
    double worst = 0.0;
    auto expect = [&](bool cond) {
        if (!cond) worst = 2.0;
    };
    expect(is_discrete(mk({{R(1), R(0)}})));
    expect(!is_discrete(mk({{R(1), R(0)}, {R(0), R(1)}})));
    expect(is_discrete(mk({})));
    expect(is_discrete(mk({{R(1, 2), R(0)}, {R(3, 2), R(0)}})));
    expect(cyclic_generator(mk({{R(1, 2), R(0)}, {R(3, 2), R(0)}})) == PeriodValue{R(1, 2), R(0)});

    // rank decisions against the enumeration oracle on 50 seeded sets
    verifydetail::Rng rng(s.seed + 9);
    int done = 0;
    while (done < 50) {
        bool rank1 = done % 2 == 0;
        PeriodValue base{R(rng.uniform_int(-5, 5), rng.uniform_int(1, 3)),
                         R(rng.uniform_int(-5, 5), rng.uniform_int(1, 3))};
        if (base.is_zero()) continue;
        std::vector<PeriodValue> gens;
        if (rank1) {
            for (int i = 0; i < 2; ++i) {
                R t(rng.uniform_int(-5, 5), rng.uniform_int(1, 3));
                gens.push_back({t * base.a, t * base.b});
            }
        } else {
            PeriodValue other{R(rng.uniform_int(-5, 5), rng.uniform_int(1, 3)),
                              R(rng.uniform_int(-5, 5), rng.uniform_int(1, 3))};
            if ((base.a * other.b - other.a * base.b).is_zero()) continue;
            gens = {base, other};
        }
        auto g = mk(gens);
        if (g.generators.empty()) continue;
        // oracle: every integer combination is a multiple of the minimal
        // positive one iff the group is discrete
        std::vector<PeriodValue> combos;
        const int range = 20;
        for (int c0 = -range; c0 <= range; ++c0)
            for (int c1 = -range; c1 <= range; ++c1) {
                if (g.generators.size() < 2 && c1 != 0) continue;
                R a = R(c0) * g.generators[0].a;
                R b = R(c0) * g.generators[0].b;
                if (g.generators.size() > 1) {
                    a = a + R(c1) * g.generators[1].a;
                    b = b + R(c1) * g.generators[1].b;
                }
                PeriodValue v{a, b};
                if (!v.is_zero()) combos.push_back(v);
            }
        bool oracle = true;
        if (!combos.empty()) {
            const PeriodValue* minp = nullptr;
            for (const auto& v : combos) {
                double x = v.value(s.lambda);
                if (x > 0 && (!minp || x < minp->value(s.lambda))) minp = &v;
            }
            for (const auto& v : combos) {
                R k = minp->a.is_zero() ? v.b / minp->b : v.a / minp->a;
                if (k.den() != 1 || !(v.a == k * minp->a && v.b == k * minp->b)) {
                    oracle = false;
                    break;
                }
            }
        }
        expect(is_discrete(g) == oracle);
        ++done;
    }
    return make_check("period-analyzer", worst, 1.0);
}

// ---- criterion 10: completion trend ----
// The C*-identity defect is a spectral-norm quantity and wobbles by a few
// percent at adjacent resolutions (eigenvalue crossings), so the decrease
// is asserted per kernel across the doubled sweep and on the mean at each
// doubling step.
inline CheckResult criterion_completion_trend(const Session& s) {
    verifydetail::Rng rng(s.seed + 10);
    double worst = 0.0;
    double mean[3] = {0.0, 0.0, 0.0};
    for (int trial = 0; trial < 10; ++trial) {
        auto k = verifydetail::random_kernel(s, rng, 3, 2);
        auto kk = convolve_groupoid(involution_groupoid(k), k);
        TorusPoint p{rng.unif(0, 1), rng.unif(0, 1)};
        double rel[3];
        int idx = 0;
        for (int n : {16, 32, 64}) {
            double nk = regular_representation(k, p, n, 1.0).norm2();
            double nkk = regular_representation(kk, p, n, 1.0).norm2();
            rel[idx] = std::fabs(nkk - nk * nk) / std::max(nk * nk, 1e-300);
            mean[idx] += rel[idx] / 10.0;
            ++idx;
        }
        // doubling twice must shrink the defect for every kernel
        if (rel[2] >= rel[0]) worst = 2.0;
        worst = std::max(worst, rel[2] / std::max(rel[0], 1e-300));
    }
    if (mean[1] >= mean[0] || mean[2] >= mean[1]) worst = std::max(worst, 2.0);
    return make_check("completion-trend", worst, 1.0);
}

inline std::vector<CheckResult> acceptance_criteria(const Session& s) {
    return {criterion_commutation(s),      criterion_star_algebra(s),
            criterion_projection(s),       criterion_groupoid_algebra(s),
            criterion_diffeology_algebra(s), criterion_q_coherence(s),
            criterion_phi_bridge(s),       criterion_orbit_density(s),
            criterion_periods(s),          criterion_completion_trend(s)};
}

// ---- named suites for the CLI ----

inline std::vector<CheckResult> checks_density(const Session& s) {
    verifydetail::Rng rng(s.seed + 20);
    std::vector<CheckResult> out;
    Box oxe{{{0.0, 0.6}, {0.0, 0.6}, {-0.2, 0.2}}};
    auto proj = SubmersionDescriptor::projection(oxe, {0, 1});
    auto f = tensor(bump_density(Box{{oxe.iv[0], oxe.iv[1]}}, {0.3, 0.3}, {0.1, 0.12}, cplx(0.7, -0.2)),
                    bump_density(Box{{oxe.iv[2]}}, {0.0}, {0.15}, 1.3));
    auto g = tensor(bump_density(Box{{oxe.iv[0], oxe.iv[1]}}, {0.4, 0.25}, {0.09, 0.1}, cplx(-0.4, 0.9)),
                    bump_density(Box{{oxe.iv[2]}}, {0.04}, {0.1}, 0.8));
    // linearity (coefficientwise after exact transport)
    cplx a{2.0, 1.0}, b{-0.7, 0.3};
    auto combo = pushforward(proj, a * f + b * g);
    auto parts = a * pushforward(proj, f) + b * pushforward(proj, g);
    double lin = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> y{rng.unif(0.0, 0.6), rng.unif(0.0, 0.6)};
        lin = std::max(lin, std::abs(combo.eval(y) - parts.eval(y)));
    }
    out.push_back(make_check("pushforward-linearity", lin, 1e-12));
    // mass preservation
    out.push_back(make_check("pushforward-mass",
                             std::abs(pushforward(proj, f).integral() - f.integral()), 1e-9));
    // functoriality on nested projections
    Box oij{{{0.0, 0.6}, {0.0, 0.6}, {-0.2, 0.2}, {-0.1, 0.1}}};
    auto psi = SubmersionDescriptor::projection(oij, {0, 1, 2});
    auto phi2 = SubmersionDescriptor::projection(psi.target, {0, 1});
    auto comp = SubmersionDescriptor::projection(oij, {0, 1});
    double fun = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        auto h3 = tensor(tensor(verifydetail::random_chart_density(rng, 0),
                                bump_density(Box{{oij.iv[2]}}, {0.0}, {rng.unif(0.05, 0.1)}, 1.0)),
                         bump_density(Box{{oij.iv[3]}}, {0.0}, {rng.unif(0.03, 0.08)}, 1.0));
        auto lhs = pushforward(comp, h3);
        auto rhs = pushforward(phi2, pushforward(psi, h3));
        for (int i = 0; i < 10; ++i) {
            std::vector<double> y{rng.unif(0.05, 0.55), rng.unif(0.05, 0.55)};
            fun = std::max(fun, std::abs(lhs.eval(y) - rhs.eval(y)));
        }
    }
    out.push_back(make_check("pushforward-functoriality", fun, 1e-9));
    // integrate: frozen unit-bump oracle
    auto d1 = bump_density(Box::interval(-1.0, 1.0), {0.0}, {0.37}, 1.0);
    out.push_back(make_check("integrate-unit-bump",
                             std::abs(d1.integral().real() - 0.37 * 0.4439938161680794), 1e-12));
    // tensor mass factorization
    auto t = tensor(f, g);
    out.push_back(
        make_check("tensor-mass", std::abs(t.integral() - f.integral() * g.integral()), 1e-10));
    return out;
}

inline std::vector<CheckResult> checks_algebra(const Session& s) {
    std::vector<CheckResult> out{criterion_commutation(s), criterion_star_algebra(s),
                                 criterion_projection(s)};
    // unitarity of the generators
    auto u = NcElement::monomial(1, 0), v = NcElement::monomial(0, 1);
    double dev = 0.0;
    for (const auto& gen : {u, v}) {
        auto gs = star(gen, s.lambda);
        dev = std::max(dev, (multiply(gen, gs, s.lambda) - NcElement::one()).norm_inf());
        dev = std::max(dev, (multiply(gs, gen, s.lambda) - NcElement::one()).norm_inf());
    }
    out.push_back(make_check("generator-unitarity", dev, 1e-15));
    return out;
}

inline std::vector<CheckResult> checks_groupoid(const Session& s) {
    std::vector<CheckResult> out{criterion_groupoid_algebra(s), criterion_completion_trend(s)};
    // mollifier trend
    verifydetail::Rng rng(s.seed + 21);
    auto k = verifydetail::random_kernel(s, rng, 3, 2);
    double first = -1.0, prev = 1e30, worst = 0.0;
    for (double eta : {0.2, 0.1, 0.05}) {
        auto ke = convolve_groupoid(k, unit_mollifier(s, eta));
        double dev = verifydetail::kernel_sample_dev(ke, k, rng, 160);
        if (dev >= prev) worst = 2.0;
        if (first < 0) first = dev;
        prev = dev;
    }
    if (prev > first / 2.0) worst = std::max(worst, 2.0);
    out.push_back(make_check("mollifier-identity-trend", worst, 1.0));
    return out;
}

inline std::vector<CheckResult> checks_diffeology(const Session& s) {
    return {criterion_diffeology_algebra(s), criterion_q_coherence(s)};
}

inline std::vector<CheckResult> checks_phi(const Session& s) {
    return {criterion_phi_bridge(s)};
}

inline std::vector<CheckResult> run_suite(const std::string& name, const Session& s) {
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    if (name == "algebra") append(checks_algebra(s));
    else if (name == "groupoid") append(checks_groupoid(s));
    else if (name == "diffeology") append(checks_diffeology(s));
    else if (name == "phi") append(checks_phi(s));
    else if (name == "density") append(checks_density(s));
    else if (name == "all") {
        append(checks_algebra(s));
        append(checks_groupoid(s));
        append(checks_diffeology(s));
        append(checks_phi(s));
        append(checks_density(s));
        out.push_back(criterion_orbit_density(s));
        out.push_back(criterion_periods(s));
    } else {
        fail(errc::bad_input, "unknown suite '" + name + "'");
    }
    std::sort(out.begin(), out.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.check < b.check; });
    return out;
}

} // namespace rotalg
