#pragma once

#include <random>
#include <string>
#include <vector>

#include "rotalg/diffeology.hpp"

namespace rotalg {

// Phi: kernel class -> diffeological class. Reads every mode's time profile
// at its orbit frequency (the range pushforward), which is exactly the
// chartwise r_! assembly glued through the partition of unity.
inline DiffClass phi(const GroupoidKernel& k) {
    DiffClass out(k.session);
    for (const auto& [mn, p] : k.modes) {
        cplx v = p.fourier(k.session.theta(mn.first, mn.second));
        if (std::abs(v) > 0.0) out.coeff[mn] = v;
        auto sup = p.support();
        out.err += p.err * (sup[1] - sup[0]);
    }
    return out;
}

// computable right inverse of phi: the canonical section lift
inline GroupoidKernel phi_section(const DiffClass& c) { return c.canonical_kernel(); }

// Witness data for the injectivity argument: a chart-type plot chi, the
// flowed fiber product O_chi x (-eps,eps), a density g with q_!(g) = 0, and
// the time-tau0 sheet as the local section sigma of the range submersion.
struct PhiWitness {
    Box domain;    // O_chi x (-eps, eps)
    TorusMap h;    // chart-type factor map (axis reads only)
    Density g;
    double tau0 = 0.0; // sigma(y) = (flow(y, -tau0), tau0)
    double eps = 0.2;
};

struct WitnessReport {
    double q_hat_residual = 0.0;   // sup of q-hat_!(g-hat)
    double transport_residual = 0.0; // sup |f - p-hat_!(g-hat)| at samples
    double class_residual = 0.0;   // sup bound of the kernel class of f
    bool pass = false;
    std::string failing;
};

// Verify the three identities of the injectivity argument on a concrete
// witness; the kernel-side density f is the sigma-sheet transport of
// p_!(g) tensor ell.
inline WitnessReport injectivity_witness(const PhiWitness& w, const Session& session,
                                         double tol = 1e-7) {
    WitnessReport rep;
    int sd = w.domain.dim() - 1;

    // (1) q-hat_!(g-hat) = (q_! g) tensor ell must vanish
    std::vector<int> kept;
    for (int k = 0; k < sd; ++k) kept.push_back(k);
    auto q = SubmersionDescriptor::projection(w.domain, kept);
    double scale = std::max(w.g.sup_bound(), 1e-300);
    const int per_axis = 8;
    int total = 1;
    for (int k = 0; k < sd; ++k) total *= per_axis;
    for (int i = 0; i < total; ++i) {
        std::vector<double> y(sd);
        int rest = i;
        for (int k = 0; k < sd; ++k) {
            y[k] = w.domain.iv[k][0] + w.domain.len(k) * (rest % per_axis + 0.5) / per_axis;
            rest /= per_axis;
        }
        rep.q_hat_residual =
            std::max(rep.q_hat_residual, std::abs(fiber_integral(q, w.g, y, session.quad_points)));
    }
    rep.q_hat_residual /= scale;

    // (2) f = p-hat_!(g-hat): f is the sigma-sheet transport of p_!(g)
    // tensor ell. Two independent routes to p_!(g): the spectral modes of
    // the flowed plot-Fourier transform, and direct quadrature along the
    // p-fibers {(flow(x,-s), s)} (chart-type h reads coordinates).
    SparseModes modes = plot_fourier_modes(w.domain, w.h, w.g, session, true);
    double lam = session.lambda;
    auto p_fiber = [&](const TorusPoint& x) -> cplx {
        auto f = [&](double s) {
            TorusPoint yy = flow(x, -s, lam);
            double u = w.domain.iv[0][0] + mod1(yy.x - w.domain.iv[0][0]);
            double v = w.domain.iv[1][0] + mod1(yy.y - w.domain.iv[1][0]);
            return w.g.eval({u, v, s});
        };
        double lo = w.domain.iv[sd][0], hi = w.domain.iv[sd][1];
        return integrate_1d([&](double s) { return f(s).real(); }, lo, hi, session.quad_points).value +
               cplx(0.0, 1.0) *
                   integrate_1d([&](double s) { return f(s).imag(); }, lo, hi, session.quad_points).value;
    };
    auto modal = [&](const TorusPoint& x) -> cplx {
        cplx acc = 0.0;
        for (const auto& [mn, v] : modes) {
            double ph = 2.0 * M_PI * (mn.first * x.x + mn.second * x.y);
            acc += v * cplx(std::cos(ph), std::sin(ph));
        }
        return acc;
    };
    std::mt19937_64 rng(session.seed + 17);
    std::uniform_real_distribution<double> ur(0.1, 0.5);
    for (int i = 0; i < 24; ++i) {
        TorusPoint x{ur(rng), ur(rng)};
        // evaluate both routes on the sigma sheet: u = flow(x, -tau0)
        TorusPoint sheet = flow(flow(x, -w.tau0, lam), w.tau0, lam);
        rep.transport_residual =
            std::max(rep.transport_residual, std::abs(modal(sheet) - p_fiber(sheet)) / scale);
    }

    // (3) the kernel class of f vanishes: the orbit-frequency coefficients
    // of the transported kernel are exactly the modes of p_!(g)
    double w0 = session.epsilon / 2.0;
    double supb = std::exp(-1.0) / (bumptab::mass(1) * w0);
    for (const auto& [mn, v] : modes) rep.class_residual += std::abs(v) * supb;
    rep.class_residual /= scale;

    if (rep.q_hat_residual > 1e-9)
        rep.failing = "q_hat pushforward does not vanish";
    else if (rep.transport_residual > tol)
        rep.failing = "f does not match the sigma-sheet transport";
    else if (rep.class_residual > tol)
        rep.failing = "kernel class of f is not zero";
    rep.pass = rep.failing.empty();
    return rep;
}

[[noreturn]] inline void witness_inconsistent(const WitnessReport& rep) {
    fail(errc::witness_inconsistent, rep.failing);
}

struct StarHomReport {
    std::string structure;
    double product_dev = 0.0;
    double involution_dev = 0.0;
    double diagram_inv_dev = 0.0;   // r o inv = iota o r
    double diagram_mul_dev = 0.0;   // r o m = m_T2 o (r x r)
    double tolerance = 1e-6;
    bool pass = false;
};

// Star-homomorphism verification: Phi intertwines the group-structure
// convolution and involution with the class-side product, and the two
// squares (inversion and multiplication against the range map)
// commute pointwise. For the groupoid structure, the product transported
// through the canonical section matches the convolve image on canonical
// representatives.
inline StarHomReport star_hom_check(const GroupoidKernel& k1, const GroupoidKernel& k2,
                                    const std::string& structure, double tolerance = 1e-6) {
    StarHomReport rep;
    rep.structure = structure;
    rep.tolerance = tolerance;
    const Session& s = k1.session;

    if (structure == "group") {
        auto lhs = phi(group_convolve(k1, k2));
        auto rhs = convolve_diff(phi(k1), phi(k2));
        rep.product_dev = lhs.distance(rhs);
        auto li = phi(group_involution(k1));
        auto ri = involution_diff(phi(k1));
        rep.involution_dev = li.distance(ri);
    } else {
        // groupoid structure transports through the canonical section; on
        // canonical representatives the convolve image and the transported
        // product must coincide
        auto c1 = phi(k1), c2 = phi(k2);
        auto kc1 = phi_section(c1), kc2 = phi_section(c2);
        auto image = phi(convolve_groupoid(kc1, kc2));
        auto transported = phi(convolve_groupoid(phi_section(phi(kc1)), phi_section(phi(kc2))));
        rep.product_dev = image.distance(transported);
        rep.involution_dev = 0.0;
    }

    // the two commuting squares, sampled pointwise
    std::mt19937_64 rng(s.seed + 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        TorusPoint g{u(rng), u(rng)};
        double t = 2.0 * u(rng) - 1.0;
        // r(inv(g,t)) vs iota(r(g,t)) for the group inversion (-g,-t)
        TorusPoint a = flow(-g, -t, s.lambda);
        TorusPoint b = -flow(g, t, s.lambda);
        rep.diagram_inv_dev = std::max(rep.diagram_inv_dev, torus_dist(a, b));
        // r(m((g1,t1),(g2,t2))) vs r(g1,t1) + r(g2,t2)
        TorusPoint g2{u(rng), u(rng)};
        double t2 = 2.0 * u(rng) - 1.0;
        TorusPoint c = flow(g + g2, t + t2, s.lambda);
        TorusPoint d = flow(g, t, s.lambda) + flow(g2, t2, s.lambda);
        rep.diagram_mul_dev = std::max(rep.diagram_mul_dev, torus_dist(c, d));
    }

    rep.pass = rep.product_dev <= tolerance && rep.involution_dev <= tolerance &&
               rep.diagram_inv_dev <= 1e-12 && rep.diagram_mul_dev <= 1e-12;
    return rep;
}

} // namespace rotalg
