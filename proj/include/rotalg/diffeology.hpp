#pragma once

#include <map>
#include <vector>

#include "rotalg/fft.hpp"
#include "rotalg/fit.hpp"
#include "rotalg/kernel.hpp"
#include "rotalg/plots.hpp"
#include "rotalg/pushforward.hpp"

namespace rotalg {

using SparseModes = std::map<std::pair<int, int>, cplx>;

namespace diffdetail {

// Fourier integral of an atom against e^{-2 pi i (m X(y) + n Y(y))} where
// (X,Y) = h(y), optionally composed with the flow read off the last axis.
// The plot algebra is affine in domain coordinates, so the integral
// factorizes into closed forms per atom; a tensor Gauss-Legendre fallback
// covers maps outside the algebra.
struct PlotFourier {
    const Box& domain;
    const TorusMap& h;
    bool with_time; // last axis is flow time
    const Session& session;

    void accumulate(const Atom& atom, SparseModes& out) const {
        TorusMap total = with_time ? TorusMap::flowed(h, domain.dim() - 1) : h;
        auto aff = total.affine(domain.dim(), session.lambda);
        if (aff.ok) {
            accumulate_affine(atom, aff, out);
            return;
        }
        accumulate_quad(atom, out);
    }

    void accumulate_affine(const Atom& atom, const TorusMap::Affine& aff, SparseModes& out) const {
        int N = session.bandlimit;
        int d = domain.dim();
        std::vector<bool> covered(d, false);
        for (const auto& f : atom.factors)
            for (int ax : f.axes) covered[ax] = true;
        for (int m = -N; m <= N; ++m)
            for (int n = -N; n <= N; ++n) {
                // per-axis modulation from the mode through the affine map
                cplx val = atom.amp;
                double ph0 = -2.0 * M_PI * (m * aff.c0[0] + n * aff.c0[1]);
                val *= cplx(std::cos(ph0), std::sin(ph0));
                auto axis_freq = [&](int ax) {
                    double w = atom.freq.empty() ? 0.0 : atom.freq[ax];
                    return w - 2.0 * M_PI * (m * aff.v[ax][0] + n * aff.v[ax][1]);
                };
                for (const auto& f : atom.factors) {
                    double scale = 1.0, ph = 0.0, k2 = 0.0;
                    for (size_t k = 0; k < f.axes.size(); ++k) {
                        double w = axis_freq(f.axes[k]);
                        scale *= f.radii[k];
                        ph += w * f.center[k];
                        double u = w * f.radii[k];
                        k2 += u * u;
                    }
                    double kap = std::sqrt(k2);
                    double base;
                    switch (f.axes.size()) {
                        case 1: base = bump_ft1(kap); break;
                        case 2: base = bump_ft2(kap); break;
                        default:
                            if (kap > 1e-12) fail(errc::bad_input, "modulated 3D radial factor");
                            base = bumptab::mass((int)f.axes.size());
                    }
                    val *= scale * base * cplx(std::cos(ph), std::sin(ph));
                }
                for (int ax = 0; ax < d; ++ax) {
                    if (covered[ax]) continue;
                    double w = axis_freq(ax);
                    double lo = domain.iv[ax][0], hi = domain.iv[ax][1];
                    if (std::fabs(w) < 1e-14)
                        val *= (hi - lo);
                    else
                        val *= (cplx(std::cos(w * hi), std::sin(w * hi)) -
                                cplx(std::cos(w * lo), std::sin(w * lo))) /
                               cplx(0.0, w);
                }
                if (std::abs(val) > 1e-17 * std::abs(atom.amp)) out[{m, n}] += val;
            }
    }

    void accumulate_quad(const Atom& atom, SparseModes& out) const {
        int N = session.bandlimit;
        int d = domain.dim();
        int taxis = d - 1;

        // split the atom across space/time when possible
        const RadialFactor* timef = nullptr;
        bool splits = true;
        if (with_time) {
            for (const auto& f : atom.factors) {
                bool touches = false;
                for (int ax : f.axes) touches |= (ax == taxis);
                if (!touches) continue;
                if (f.axes.size() != 1) { splits = false; break; }
                timef = &f;
            }
        }

        // quadrature nodes over the spatial support of the atom
        int sd = with_time && splits ? d - 1 : d;
        std::vector<QuadPoints> axes(sd);
        double maxfreq = 2.0 * M_PI * N * (1.0 + session.lambda) * 1.2;
        for (int k = 0; k < sd; ++k) {
            double lo = domain.iv[k][0], hi = domain.iv[k][1];
            for (const auto& f : atom.factors)
                for (size_t j = 0; j < f.axes.size(); ++j)
                    if (f.axes[j] == k) {
                        lo = std::max(lo, f.center[j] - f.radii[j]);
                        hi = std::min(hi, f.center[j] + f.radii[j]);
                    }
            if (hi <= lo) return;
            axes[k] = composite_gl(lo, hi, session.quad_points, maxfreq);
        }

        std::vector<double> y(d, 0.0);
        std::vector<int> idx(sd, 0);
        std::vector<cplx> xpow(2 * N + 1), ypow(2 * N + 1);
        bool done = false;
        while (!done) {
            double wgt = 1.0;
            for (int k = 0; k < sd; ++k) {
                y[k] = axes[k].x[idx[k]];
                wgt *= axes[k].w[idx[k]];
            }
            // atom value without the time factor (time handled separately)
            cplx val = atom.amp;
            double ph = 0.0;
            bool dead = false;
            for (const auto& f : atom.factors) {
                if (f.axes.size() == 1 && f.axes[0] == taxis && with_time && splits) continue;
                double r2 = f.r2(y);
                if (r2 >= 1.0) { dead = true; break; }
                val *= bump_r2(r2);
            }
            if (!dead) {
                if (!atom.freq.empty())
                    for (int k = 0; k < sd; ++k) ph += atom.freq[k] * y[k];
                val *= wgt * cplx(std::cos(ph), std::sin(ph));
                auto XY = h.eval_raw(y, session.lambda);
                cplx ux(std::cos(-2.0 * M_PI * XY[0]), std::sin(-2.0 * M_PI * XY[0]));
                cplx uy(std::cos(-2.0 * M_PI * XY[1]), std::sin(-2.0 * M_PI * XY[1]));
                xpow[0] = std::pow(std::conj(ux), N);
                for (int i = 1; i <= 2 * N; ++i) xpow[i] = xpow[i - 1] * ux;
                ypow[0] = std::pow(std::conj(uy), N);
                for (int i = 1; i <= 2 * N; ++i) ypow[i] = ypow[i - 1] * uy;
                for (int mi = 0; mi <= 2 * N; ++mi) {
                    cplx vm = val * xpow[mi];
                    for (int ni = 0; ni <= 2 * N; ++ni)
                        out[{mi - N, ni - N}] += vm * ypow[ni];
                }
            }
            int k = 0;
            for (; k < sd; ++k) {
                if (++idx[k] < (int)axes[k].x.size()) break;
                idx[k] = 0;
            }
            done = (k == sd) || sd == 0;
        }

        // closed-form time integral per mode: the flow contributes the
        // orbit frequency theta(m,n); modulation and bump data fold in
        if (with_time && splits) {
            double wmod = atom.freq.empty() ? 0.0 : atom.freq[taxis];
            double lo = domain.iv[taxis][0], hi = domain.iv[taxis][1];
            for (auto& [mn, v] : out) {
                double theta = session.theta(mn.first, mn.second);
                if (timef) {
                    double kap = timef->radii[0] * (theta - wmod);
                    double phc = (wmod - theta) * timef->center[0];
                    v *= timef->radii[0] * bump_ft1(kap) * cplx(std::cos(phc), std::sin(phc));
                } else {
                    double w = wmod - theta;
                    if (std::fabs(w) < 1e-14)
                        v *= (hi - lo);
                    else
                        v *= (cplx(std::cos(w * hi), std::sin(w * hi)) -
                              cplx(std::cos(w * lo), std::sin(w * lo))) /
                             cplx(0.0, w);
                }
            }
        }
    }
};

} // namespace diffdetail

// Fourier mode array of the class of p_!(density) where p is the flowed
// factor map of the plot (or the plot map itself when with_time = false).
inline SparseModes plot_fourier_modes(const Box& domain, const TorusMap& h, const Density& f,
                                      const Session& session, bool with_time) {
    SparseModes total;
    diffdetail::PlotFourier pf{domain, h, with_time, session};
    for (const auto& atom : f.atoms) {
        SparseModes part;
        pf.accumulate(atom, part);
        for (auto& [mn, v] : part) total[mn] += v;
    }
    // prune negligible entries
    double scale = 0.0;
    for (auto& [mn, v] : total) scale = std::max(scale, std::abs(v));
    for (auto it = total.begin(); it != total.end();)
        it = (std::abs(it->second) < 1e-16 * scale) ? total.erase(it) : ++it;
    return total;
}

// Element of the quotient C^inf_c(G(M,omega)): canonically represented by
// the Fourier coefficients of the summed cover tuple; the cover tuple and
// the canonical kernel (the Phi-preimage section lift) are derived views.
class DiffClass {
public:
    Session session;
    SparseModes coeff;
    double err = 0.0;

    DiffClass() = default;
    explicit DiffClass(Session s) : session(s) {}

    bool zero_object() const { return coeff.empty(); }

    DiffClass& operator+=(const DiffClass& o) {
        for (auto& [mn, v] : o.coeff) coeff[mn] += v;
        err += o.err;
        return *this;
    }
    friend DiffClass operator+(DiffClass a, const DiffClass& b) { return a += b; }
    void scale(cplx c) {
        for (auto& [mn, v] : coeff) v *= c;
        err *= std::abs(c);
    }
    friend DiffClass operator*(cplx c, DiffClass d) {
        d.scale(c);
        return d;
    }

    // the summed cover tuple as a function on the torus
    cplx lifted_eval(const TorusPoint& z) const {
        cplx s = 0.0;
        for (const auto& [mn, v] : coeff) {
            double ph = 2.0 * M_PI * (mn.first * z.x + mn.second * z.y);
            s += v * cplx(std::cos(ph), std::sin(ph));
        }
        return s;
    }

    // canonical kernel: unit-mass time bump of half-width eps/2 at the
    // orbit frequency of each mode; Phi reads the coefficients back exactly
    GroupoidKernel canonical_kernel() const {
        GroupoidKernel k(session);
        double w = session.epsilon / 2.0;
        double amp0 = 1.0 / (bumptab::mass(1) * w);
        for (const auto& [mn, v] : coeff) {
            double theta = session.theta(mn.first, mn.second);
            k.mode(mn.first, mn.second).terms.push_back({v * amp0, 0.0, w, theta});
        }
        return k;
    }

    // sup-type distance between canonical kernels (class equality metric)
    double distance(const DiffClass& o) const {
        double w = session.epsilon / 2.0;
        double supb = std::exp(-1.0) / (bumptab::mass(1) * w);
        double s = 0.0;
        SparseModes d = coeff;
        for (const auto& [mn, v] : o.coeff) d[mn] -= v;
        for (const auto& [mn, v] : d) s += std::abs(v) * supb;
        return s;
    }

    double combined_err(const DiffClass& o) const { return err + o.err; }

    // per-chart densities with the partition of unity, fitted on the
    // fixed lattice (pitch = chart side / 16); serialization view
    std::array<Density, 4> cover_tuple() const {
        std::array<Density, 4> out;
        const Atlas& atlas = fixed_atlas();
        for (int j = 0; j < 4; ++j) {
            const Chart& c = atlas.chart(j);
            Box box{{{c.lower_x, c.lower_x + c.side}, {c.lower_y, c.lower_y + c.side}}};
            auto fn = [&](const std::vector<double>& y) -> cplx {
                TorusPoint z{y[0], y[1]};
                return atlas.pou(j, z) * lifted_eval(z);
            };
            BumpFitter::Options opt{c.side / 16.0, 2.0, 3, 1e9};
            out[j] = BumpFitter::fit(box, fn, opt);
        }
        return out;
    }

    static DiffClass zero(Session s) { return DiffClass(s); }
};

// class of a chart density placed in slot i
inline DiffClass q_chart(int chart_index, const Density& f, const Session& session) {
    const Chart& c = fixed_atlas().chart(chart_index);
    Box chart_box{{{c.lower_x, c.lower_x + c.side}, {c.lower_y, c.lower_y + c.side}}};
    for (const auto& a : f.atoms)
        for (const auto& fac : a.factors)
            for (size_t k = 0; k < fac.axes.size(); ++k) {
                double lo = fac.center[k] - fac.radii[k], hi = fac.center[k] + fac.radii[k];
                if (lo < chart_box.iv[fac.axes[k]][0] - 1e-12 ||
                    hi > chart_box.iv[fac.axes[k]][1] + 1e-12)
                    fail(errc::support_escape, "density support escapes the chart");
            }
    DiffClass out(session);
    int N = session.bandlimit;
    for (const auto& a : f.atoms) {
        for (int m = -N; m <= N; ++m)
            for (int n = -N; n <= N; ++n) {
                Atom tmp = a;
                if (tmp.freq.empty()) tmp.freq.assign(2, 0.0);
                tmp.freq[0] -= 2.0 * M_PI * m;
                tmp.freq[1] -= 2.0 * M_PI * n;
                cplx v = tmp.integral();
                if (std::abs(v) > 1e-17 * std::abs(a.amp)) out.coeff[{m, n}] += v;
            }
    }
    out.err = f.err;
    return out;
}

// Q_chi(f) through the mollified factorization g = f (x) time-bump and the
// flowed fiber product; the class only depends on f up to the mollifier
// width, which is far below every stated tolerance.
inline DiffClass q_plot(const Plot& chi, const Density& f, const Session& session) {
    DiffClass out(session);
    SparseModes space = plot_fourier_modes(chi.domain, chi.h, f, session, false);
    double w0 = session.mollifier_width;
    for (auto& [mn, v] : space) {
        double theta = session.theta(mn.first, mn.second);
        cplx c = v * (bump_ft1(w0 * theta) / bumptab::mass(1));
        if (std::abs(c) > 0.0) out.coeff[mn] = c;
    }
    out.err = f.err;
    return out;
}

// Witness data for an ideal generator: a density g on the flowed fiber
// product O_chi x (-eps, eps) with q_!(g) = 0.
struct IdealWitness {
    Box domain;   // O_chi x (-eps, eps)
    TorusMap h;   // factor map of chi (time axis appended by the flow)
    Density g;
};

// verified transport of an ideal generator: returns the class of p_!(g),
// which must be numerically zero when q_!(g) = 0
inline DiffClass ideal_generator(const IdealWitness& w, const Session& session,
                                 double precheck_tol = 1e-9) {
    // precondition: q_!(g) = 0, checked by fiber quadrature on samples
    int sd = w.domain.dim() - 1;
    std::vector<int> kept;
    for (int k = 0; k < sd; ++k) kept.push_back(k);
    auto q = SubmersionDescriptor::projection(w.domain, kept);
    double sup = 0.0, scale = std::max(w.g.sup_bound(), 1e-300);
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
        sup = std::max(sup, std::abs(fiber_integral(q, w.g, y, session.quad_points)));
    }
    if (sup > precheck_tol * scale)
        fail(errc::precondition_violated, "q_!(g) is not numerically zero");
    DiffClass out(session);
    out.coeff = plot_fourier_modes(w.domain, w.h, w.g, session, true);
    out.err = w.g.err;
    return out;
}

// Appendix product: tensor the lifted densities and push forward along the
// torus multiplication, realized as the cyclic convolution on an alias-free
// grid (the Fubini evaluation of the fibered integral, via FFT).
inline DiffClass convolve_diff(const DiffClass& c1, const DiffClass& c2) {
    const Session& s = c1.session;
    int b1 = 0, b2 = 0;
    for (auto& [mn, v] : c1.coeff) b1 = std::max({b1, std::abs(mn.first), std::abs(mn.second)});
    for (auto& [mn, v] : c2.coeff) b2 = std::max({b2, std::abs(mn.first), std::abs(mn.second)});
    int outband = b1 + b2;
    if (outband > 2 * s.bandlimit)
        fail(errc::bandlimit_overflow, "product bandlimit exceeds twice the session bandlimit");
    int cap = std::min(outband, 2 * s.bandlimit);
    int M = 2;
    while (M <= outband + cap + 2) M <<= 1; // alias-free needs M > outband + cap
    auto grid_of = [&](const DiffClass& c) {
        std::vector<cplx> g((size_t)M * M, cplx(0.0));
        for (const auto& [mn, v] : c.coeff)
            g[(size_t)(((mn.first % M) + M) % M) * M + (((mn.second % M) + M) % M)] += v;
        fft2_inplace(g, M, +1); // values on the grid
        return g;
    };
    auto F1 = grid_of(c1), F2 = grid_of(c2);
    // cyclic convolution via the transform; 1/M^2 for the transform pair and
    // 1/M^2 for the quadrature average over the fiber
    fft2_inplace(F1, M, -1);
    fft2_inplace(F2, M, -1);
    double inv = 1.0 / ((double)M * M);
    for (size_t i = 0; i < F1.size(); ++i) F1[i] *= F2[i] * inv * inv;
    fft2_inplace(F1, M, +1);
    // mode extraction: one forward transform of G
    fft2_inplace(F1, M, -1);
    DiffClass out(s);
    for (int m = -cap; m <= cap; ++m)
        for (int n = -cap; n <= cap; ++n) {
            cplx acc = F1[(size_t)(((m % M) + M) % M) * M + (((n % M) + M) % M)] * inv;
            if (std::abs(acc) > 1e-15) out.coeff[{m, n}] = acc;
        }
    double sup1 = 0.0, sup2 = 0.0;
    for (auto& [mn, v] : c1.coeff) sup1 += std::abs(v);
    for (auto& [mn, v] : c2.coeff) sup2 += std::abs(v);
    out.err = c1.err * sup2 + c2.err * sup1;
    return out;
}

// involution: (Q_chi(f))* = Q_{chi^{-1}}(f*); on coefficients, conjugation
inline DiffClass involution_diff(const DiffClass& c) {
    DiffClass out(c.session);
    for (const auto& [mn, v] : c.coeff) out.coeff[mn] = std::conj(v);
    out.err = c.err;
    return out;
}

} // namespace rotalg
