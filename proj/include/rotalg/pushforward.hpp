#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "rotalg/density.hpp"
#include "rotalg/fit.hpp"

namespace rotalg {

// Fiberwise-affine submersion between chart-product boxes: each target axis
// reads one source axis through y_j = scale_j * x_{kept_j} + shift_j, and
// the remaining source axes are the fiber, parameterized by their box
// ranges. Projections are the scale=1, shift=0 case. Flow-type maps into
// the torus are handled at the Fourier level elsewhere, not here.
struct SubmersionDescriptor {
    Box source, target;
    std::vector<int> kept;
    std::vector<double> scale, shift;

    static SubmersionDescriptor projection(Box src, std::vector<int> kept_axes) {
        SubmersionDescriptor d;
        d.source = std::move(src);
        d.kept = std::move(kept_axes);
        d.scale.assign(d.kept.size(), 1.0);
        d.shift.assign(d.kept.size(), 0.0);
        for (int j : d.kept) d.target.iv.push_back(d.source.iv[j]);
        return d;
    }

    static SubmersionDescriptor axis_affine(Box src, std::vector<int> kept_axes,
                                            std::vector<double> sc, std::vector<double> sh) {
        SubmersionDescriptor d;
        d.source = std::move(src);
        d.kept = std::move(kept_axes);
        d.scale = std::move(sc);
        d.shift = std::move(sh);
        for (size_t j = 0; j < d.kept.size(); ++j) {
            double a = d.scale[j] * d.source.iv[d.kept[j]][0] + d.shift[j];
            double b = d.scale[j] * d.source.iv[d.kept[j]][1] + d.shift[j];
            d.target.iv.push_back({std::min(a, b), std::max(a, b)});
        }
        return d;
    }

    std::vector<int> fiber_axes() const {
        std::vector<int> dropped;
        for (int k = 0; k < source.dim(); ++k)
            if (std::find(kept.begin(), kept.end(), k) == kept.end()) dropped.push_back(k);
        return dropped;
    }

    std::vector<double> map(const std::vector<double>& x) const {
        std::vector<double> y(kept.size());
        for (size_t j = 0; j < kept.size(); ++j) y[j] = scale[j] * x[kept[j]] + shift[j];
        return y;
    }

    // section of the fiber over y with the fiber coordinate s filled in
    std::vector<double> section(const std::vector<double>& y, const std::vector<double>& s) const {
        std::vector<double> x(source.dim());
        auto dropped = fiber_axes();
        for (size_t j = 0; j < kept.size(); ++j) x[kept[j]] = (y[j] - shift[j]) / scale[j];
        for (size_t j = 0; j < dropped.size(); ++j) x[dropped[j]] = s[j];
        return x;
    }

    // invariant: map is constant along the parameterized fibers
    double fiber_consistency(int samples = 64) const {
        double worst = 0.0;
        auto dropped = fiber_axes();
        std::vector<double> y(kept.size()), s(dropped.size());
        for (int it = 0; it < samples; ++it) {
            for (size_t j = 0; j < y.size(); ++j) {
                double t = (it * 37 % samples + 0.5) / samples;
                y[j] = target.iv[j][0] + t * target.len((int)j);
            }
            for (size_t j = 0; j < s.size(); ++j) {
                double t = (it * 53 % samples + 0.5) / samples;
                s[j] = source.iv[dropped[j]][0] + t * source.len(dropped[j]);
            }
            auto x = section(y, s);
            auto z = map(x);
            for (size_t j = 0; j < y.size(); ++j) worst = std::max(worst, std::fabs(z[j] - y[j]));
        }
        return worst;
    }
};

struct PushforwardOptions {
    double quad_points = 256.0;
    double fit_pitch = 0.0375; // chart side / 16
    double fit_beta = 2.0;
    double residual_threshold = 1e9;
};

namespace detail {

// true if every radial factor of the atom lives entirely in kept or
// entirely in dropped axes (then the fiber integral is a closed form)
inline bool atom_splits(const Atom& a, const std::vector<int>& kept) {
    for (const auto& f : a.factors) {
        int in = 0;
        for (int ax : f.axes)
            if (std::find(kept.begin(), kept.end(), ax) != kept.end()) ++in;
        if (in != 0 && in != (int)f.axes.size()) return false;
    }
    return true;
}

inline Atom transport_atom(const Atom& a, const SubmersionDescriptor& d) {
    // integrate dropped factors, remap kept ones through the affine change
    Atom out;
    out.amp = a.amp;
    for (const auto& f : a.factors) {
        bool kept_factor = std::find(d.kept.begin(), d.kept.end(), f.axes[0]) != d.kept.end();
        if (!kept_factor) {
            out.amp *= a.factor_integral(f);
            continue;
        }
        RadialFactor g;
        for (size_t k = 0; k < f.axes.size(); ++k) {
            int tj = (int)(std::find(d.kept.begin(), d.kept.end(), f.axes[k]) - d.kept.begin());
            g.axes.push_back(tj);
            g.center.push_back(d.scale[tj] * f.center[k] + d.shift[tj]);
            g.radii.push_back(std::fabs(d.scale[tj]) * f.radii[k]);
        }
        out.factors.push_back(std::move(g));
    }
    if (!a.freq.empty()) {
        out.freq.assign(d.kept.size(), 0.0);
        double ph = 0.0;
        for (size_t j = 0; j < d.kept.size(); ++j) {
            double w = a.freq[d.kept[j]];
            out.freq[j] = w / d.scale[j];
            ph -= w * d.shift[j] / d.scale[j];
        }
        out.amp *= cplx(std::cos(ph), std::sin(ph));
    }
    // dropped axes carrying no radial factor integrate to an interval factor
    std::vector<bool> covered(d.source.dim(), false);
    for (const auto& f : a.factors)
        for (int ax : f.axes) covered[ax] = true;
    for (int ax : d.fiber_axes()) {
        if (covered[ax]) continue;
        double lo = d.source.iv[ax][0], hi = d.source.iv[ax][1];
        double w = a.freq.empty() ? 0.0 : a.freq[ax];
        if (std::fabs(w) < 1e-300) {
            out.amp *= (hi - lo);
        } else {
            cplx ei(std::cos(w * hi), std::sin(w * hi)), el(std::cos(w * lo), std::sin(w * lo));
            out.amp *= (ei - el) / cplx(0.0, w);
        }
    }
    for (double sc : d.scale) out.amp /= std::fabs(sc);
    return out;
}

} // namespace detail

// Pointwise fiber integral, the quadrature route shared by the fallback
// path and the test oracles. Nodes are placed per atom over the atom's own
// fiber support, so narrow mollifier bumps are resolved.
inline cplx fiber_integral(const SubmersionDescriptor& d, const Density& f,
                           const std::vector<double>& y, double pts_per_unit) {
    auto dropped = d.fiber_axes();
    cplx total = 0.0;
    for (const auto& atom : f.atoms) {
        double maxfreq = 0.0;
        if (!atom.freq.empty())
            for (int ax : dropped) maxfreq = std::max(maxfreq, std::fabs(atom.freq[ax]));
        std::vector<QuadPoints> q;
        bool dead = false;
        for (int ax : dropped) {
            double lo = f.domain.iv[ax][0], hi = f.domain.iv[ax][1];
            for (const auto& fac : atom.factors)
                for (size_t k = 0; k < fac.axes.size(); ++k)
                    if (fac.axes[k] == ax) {
                        lo = std::max(lo, fac.center[k] - fac.radii[k]);
                        hi = std::min(hi, fac.center[k] + fac.radii[k]);
                    }
            if (hi <= lo) { dead = true; break; }
            double ppu = std::max(pts_per_unit, 64.0 / (hi - lo));
            q.push_back(composite_gl(lo, hi, ppu, maxfreq));
        }
        if (dead) continue;
        std::vector<double> s(dropped.size());
        std::function<cplx(size_t)> rec = [&](size_t k) -> cplx {
            if (k == dropped.size()) return atom.eval(d.section(y, s));
            cplx acc = 0.0;
            for (size_t i = 0; i < q[k].x.size(); ++i) {
                s[k] = q[k].x[i];
                acc += q[k].w[i] * rec(k + 1);
            }
            return acc;
        };
        total += rec(0);
    }
    for (double sc : d.scale) total /= std::fabs(sc);
    return total;
}

// Integration along the fibers. Atoms that split across kept/dropped axes
// transport in closed form; anything else goes through quadrature plus a
// bump-lattice refit with the residual reported on the result.
inline Density pushforward(const SubmersionDescriptor& d, const Density& f,
                           const PushforwardOptions& opt = {}) {
    Density exact;
    exact.domain = d.target;
    Density rest; // atoms needing the quadrature route
    rest.domain = f.domain;
    for (const auto& a : f.atoms) {
        if (detail::atom_splits(a, d.kept))
            exact.atoms.push_back(detail::transport_atom(a, d));
        else
            rest.atoms.push_back(a);
    }
    exact.err = f.err * [&] {
        double flen = 1.0;
        for (int ax : d.fiber_axes()) flen *= f.domain.len(ax);
        return flen;
    }();
    if (!rest.atoms.empty()) {
        // refinement ratio test at the domain center guards the quadrature
        std::vector<double> probe(d.target.dim());
        for (int k = 0; k < d.target.dim(); ++k)
            probe[k] = 0.5 * (d.target.iv[k][0] + d.target.iv[k][1]);
        cplx coarse = fiber_integral(d, rest, probe, opt.quad_points);
        cplx fine = fiber_integral(d, rest, probe, 2.0 * opt.quad_points);
        double scale = std::max(rest.sup_bound(), 1e-300);
        if (!std::isfinite(std::abs(fine)) || std::abs(fine - coarse) > 1e-6 * scale)
            fail(errc::quadrature_failure, "fiber quadrature did not converge under refinement");
        auto fn = [&](const std::vector<double>& y) -> cplx {
            return fiber_integral(d, rest, y, opt.quad_points);
        };
        BumpFitter::Options fopt{opt.fit_pitch, opt.fit_beta, 3, opt.residual_threshold};
        Density fitted = BumpFitter::fit(d.target, fn, fopt);
        exact = exact + fitted;
    }
    return exact;
}

} // namespace rotalg
