#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <vector>

#include "rotalg/bump.hpp"
#include "rotalg/density.hpp"
#include "rotalg/groupoid.hpp"
#include "rotalg/quadrature.hpp"
#include "rotalg/session.hpp"

namespace rotalg {

// One term of a time profile: amp * bump((t-center)/width) * e^{i freq t}.
// The frequency chip is what a bisubmersion transport of an oscillating
// space mode looks like in time; width/center are plain bump data.
struct TimeTerm {
    cplx amp = 0.0;
    double center = 0.0, width = 1.0, freq = 0.0;

    cplx eval(double t) const {
        double u = (t - center) / width;
        double b = bump_r2(u * u);
        if (b == 0.0) return 0.0;
        cplx v = amp * b;
        if (freq != 0.0) v *= cplx(std::cos(freq * t), std::sin(freq * t));
        return v;
    }
    // int term(t) e^{-i theta t} dt, closed form through the bump transform
    cplx fourier(double theta) const {
        double k = width * (theta - freq);
        double ph = (freq - theta) * center;
        return amp * width * bump_ft1(k) * cplx(std::cos(ph), std::sin(ph));
    }
};

// Compactly supported smooth function of time as a finite bump sum.
struct TimeProfile {
    std::vector<TimeTerm> terms;
    double err = 0.0;

    bool empty() const { return terms.empty(); }
    cplx eval(double t) const {
        cplx s = 0.0;
        for (const auto& tt : terms) s += tt.eval(t);
        return s;
    }
    cplx fourier(double theta) const {
        cplx s = 0.0;
        for (const auto& tt : terms) s += tt.fourier(theta);
        return s;
    }
    double sup_bound() const {
        double s = 0.0;
        for (const auto& tt : terms) s += std::abs(tt.amp) * std::exp(-1.0);
        return s;
    }
    std::array<double, 2> support() const {
        double lo = 1e300, hi = -1e300;
        for (const auto& tt : terms) {
            lo = std::min(lo, tt.center - tt.width);
            hi = std::max(hi, tt.center + tt.width);
        }
        if (lo > hi) return {0.0, 0.0};
        return {lo, hi};
    }
    double max_freq() const {
        double f = 0.0;
        for (const auto& tt : terms) f = std::max(f, std::fabs(tt.freq));
        return f;
    }
    TimeProfile& operator+=(const TimeProfile& o) {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        err += o.err;
        return *this;
    }
    void scale(cplx c) {
        for (auto& t : terms) t.amp *= c;
        err *= std::abs(c);
    }

    // drop negligible terms, merging identical bump data first
    void compress(double tol_abs) {
        std::sort(terms.begin(), terms.end(), [](const TimeTerm& a, const TimeTerm& b) {
            if (a.center != b.center) return a.center < b.center;
            if (a.width != b.width) return a.width < b.width;
            return a.freq < b.freq;
        });
        std::vector<TimeTerm> out;
        for (const auto& t : terms) {
            if (!out.empty() && out.back().center == t.center && out.back().width == t.width &&
                out.back().freq == t.freq) {
                out.back().amp += t.amp;
            } else {
                out.push_back(t);
            }
        }
        double dropped = 0.0;
        std::vector<TimeTerm> kept;
        for (const auto& t : out) {
            if (std::abs(t.amp) * std::exp(-1.0) <= tol_abs)
                dropped += std::abs(t.amp) * std::exp(-1.0);
            else
                kept.push_back(t);
        }
        terms = std::move(kept);
        err += dropped;
    }
};

// Element of the groupoid convolution algebra: a smooth compactly
// supported function on T^2 x [-T,T], stored in reduced (atlas-glued)
// form as sparse Fourier modes in space, bump profiles in time.
class GroupoidKernel {
public:
    Session session;
    int band_cap = 0; // 0 = session bandlimit; doubles at most once
    std::map<std::pair<int, int>, TimeProfile> modes;

    int effective_cap() const { return band_cap ? band_cap : session.bandlimit; }

    GroupoidKernel() = default;
    explicit GroupoidKernel(Session s) : session(s) {}

    bool zero() const { return modes.empty(); }

    TimeProfile& mode(int m, int n) { return modes[{m, n}]; }
    const TimeProfile* find(int m, int n) const {
        auto it = modes.find({m, n});
        return it == modes.end() ? nullptr : &it->second;
    }

    double time_halfwidth() const {
        double T = 0.0;
        for (const auto& [mn, p] : modes) {
            auto s = p.support();
            T = std::max({T, std::fabs(s[0]), std::fabs(s[1])});
        }
        return T;
    }

    cplx eval(const TorusPoint& g, double t) const {
        cplx s = 0.0;
        for (const auto& [mn, p] : modes) {
            double ph = 2.0 * M_PI * (mn.first * g.x + mn.second * g.y);
            s += p.eval(t) * cplx(std::cos(ph), std::sin(ph));
        }
        return s;
    }

    double sup_bound() const {
        double s = 0.0;
        for (const auto& [mn, p] : modes) s += p.sup_bound();
        return s;
    }

    double err_bound() const {
        double s = 0.0;
        for (const auto& [mn, p] : modes) s += p.err;
        return s;
    }

    GroupoidKernel& operator+=(const GroupoidKernel& o) {
        for (const auto& [mn, p] : o.modes) modes[mn] += p;
        return *this;
    }
    friend GroupoidKernel operator+(GroupoidKernel a, const GroupoidKernel& b) { return a += b; }
    friend GroupoidKernel operator-(GroupoidKernel a, const GroupoidKernel& b) {
        GroupoidKernel nb = b;
        nb.scale(-1.0);
        return a += nb;
    }
    void scale(cplx c) {
        for (auto& [mn, p] : modes) p.scale(c);
    }

    void compress(double rel_tol = 1e-14) {
        double s = std::max(sup_bound(), 1e-300);
        for (auto it = modes.begin(); it != modes.end();) {
            it->second.compress(rel_tol * s);
            if (it->second.empty() && it->second.err == 0.0)
                it = modes.erase(it);
            else
                ++it;
        }
    }

    // orbit-frequency functional: the (m,n) coefficient of the pushforward
    // of the kernel along the range map (the Phi direction)
    cplx range_coefficient(int m, int n) const {
        const TimeProfile* p = find(m, n);
        if (!p) return 0.0;
        return p->fourier(session.theta(m, n));
    }
};

namespace kerneldetail {

// twisted line convolution (p ** q)(t) = int e^{i theta s} p(t-s) q(s) ds,
// realized exactly as the Gauss-Legendre discretization in s: a finite sum
// of translated copies of p's bump terms.
inline TimeProfile twisted_convolve(const TimeProfile& p, const TimeProfile& q, double theta,
                                    double pts_per_unit) {
    TimeProfile out;
    auto qs = q.support();
    if (qs[0] >= qs[1] || p.terms.empty()) return out;
    double osc = std::fabs(theta) + q.max_freq() + p.max_freq();
    QuadPoints nodes = composite_gl(qs[0], qs[1], pts_per_unit, osc);
    out.terms.reserve(nodes.x.size() * p.terms.size());
    for (size_t i = 0; i < nodes.x.size(); ++i) {
        double s = nodes.x[i];
        cplx qv = q.eval(s);
        if (qv == cplx(0.0)) continue;
        cplx c = nodes.w[i] * qv * cplx(std::cos(theta * s), std::sin(theta * s));
        for (const auto& tt : p.terms) {
            // p-term(t - s) = amp e^{-i freq s} bump((t-(c+s))/w) e^{i freq t}
            cplx a = tt.amp * c * cplx(std::cos(tt.freq * s), -std::sin(tt.freq * s));
            out.terms.push_back({a, tt.center + s, tt.width, tt.freq});
        }
    }
    // carried quadrature+input error: fiber length times input errors
    out.err = (qs[1] - qs[0]) * (p.err * q.sup_bound() + q.err * p.sup_bound() + p.err * q.err);
    return out;
}

// same integral, discretized over p's support instead (used when p has far
// more terms than q); picks up an e^{i theta t} chip on q's terms
inline TimeProfile twisted_convolve_alt(const TimeProfile& p, const TimeProfile& q, double theta,
                                        double pts_per_unit) {
    TimeProfile out;
    auto ps = p.support();
    if (ps[0] >= ps[1] || q.terms.empty()) return out;
    double osc = std::fabs(theta) + q.max_freq() + p.max_freq();
    QuadPoints nodes = composite_gl(ps[0], ps[1], pts_per_unit, osc);
    out.terms.reserve(nodes.x.size() * q.terms.size());
    for (size_t i = 0; i < nodes.x.size(); ++i) {
        double u = nodes.x[i];
        cplx pv = p.eval(u);
        if (pv == cplx(0.0)) continue;
        cplx c = nodes.w[i] * pv * cplx(std::cos(theta * u), -std::sin(theta * u));
        for (const auto& tt : q.terms) {
            // q-term(t-u) smeared, with the extra e^{i theta t}
            cplx a = tt.amp * c * cplx(std::cos(tt.freq * u), -std::sin(tt.freq * u));
            out.terms.push_back({a, tt.center + u, tt.width, tt.freq + theta});
        }
    }
    out.err = (ps[1] - ps[0]) * (p.err * q.sup_bound() + q.err * p.sup_bound() + p.err * q.err);
    return out;
}

inline TimeProfile twisted_convolve_best(const TimeProfile& p, const TimeProfile& q, double theta,
                                         double pts_per_unit) {
    if (p.terms.size() <= q.terms.size())
        return twisted_convolve(p, q, theta, pts_per_unit);
    return twisted_convolve_alt(p, q, theta, pts_per_unit);
}

} // namespace kerneldetail

// Convolution for the groupoid structure:
//   (k1 * k2)(g,t) = int k1(g.s, t-s) k2(g, s) ds.
// In modes, output (M,N) collects twisted convolutions at the orbit
// frequency of k1's mode. Output modes beyond the session bandlimit double
// it once; beyond twice, BandlimitOverflow.
inline GroupoidKernel convolve_groupoid(const GroupoidKernel& k1, const GroupoidKernel& k2) {
    GroupoidKernel out(k1.session);
    out.band_cap = std::max(k1.effective_cap(), k2.effective_cap());
    for (const auto& [mn1, p1] : k1.modes) {
        double theta = k1.session.theta(mn1.first, mn1.second);
        for (const auto& [mn2, p2] : k2.modes) {
            int M = mn1.first + mn2.first, N = mn1.second + mn2.second;
            if (std::abs(M) > out.effective_cap() || std::abs(N) > out.effective_cap()) {
                if (std::abs(M) > 2 * out.session.bandlimit || std::abs(N) > 2 * out.session.bandlimit)
                    fail(errc::bandlimit_overflow, "mode (" + std::to_string(M) + "," +
                                                       std::to_string(N) + ") exceeds twice the bandlimit");
                out.band_cap = 2 * out.session.bandlimit; // doubled once; no further growth
            }
            out.mode(M, N) += kerneldetail::twisted_convolve_best(p1, p2, theta,
                                                                  k1.session.quad_points);
        }
    }
    out.compress();
    if (!std::isfinite(out.sup_bound()))
        fail(errc::quadrature_failure, "convolution produced non-finite amplitudes");
    return out;
}

// involution for the groupoid structure: k*(g,t) = conj(k(g.t, -t))
inline GroupoidKernel involution_groupoid(const GroupoidKernel& k) {
    GroupoidKernel out(k.session);
    for (const auto& [mn, p] : k.modes) {
        double theta = k.session.theta(-mn.first, -mn.second);
        TimeProfile q;
        q.err = p.err;
        for (const auto& tt : p.terms)
            q.terms.push_back({std::conj(tt.amp), -tt.center, tt.width, tt.freq + theta});
        out.mode(-mn.first, -mn.second) += q;
    }
    return out;
}

// Convolution for the cartesian group structure on T^2 x R: modes pair up
// diagonally and time factors convolve without a twist.
inline GroupoidKernel group_convolve(const GroupoidKernel& k1, const GroupoidKernel& k2) {
    GroupoidKernel out(k1.session);
    for (const auto& [mn1, p1] : k1.modes) {
        const TimeProfile* p2 = k2.find(mn1.first, mn1.second);
        if (!p2) continue;
        out.mode(mn1.first, mn1.second) +=
            kerneldetail::twisted_convolve_best(p1, *p2, 0.0, k1.session.quad_points);
    }
    out.compress();
    return out;
}

// involution for the group structure: k*(g,t) = conj(k(-g,-t))
inline GroupoidKernel group_involution(const GroupoidKernel& k) {
    GroupoidKernel out(k.session);
    for (const auto& [mn, p] : k.modes) {
        TimeProfile q;
        q.err = p.err;
        for (const auto& tt : p.terms)
            q.terms.push_back({std::conj(tt.amp), -tt.center, tt.width, tt.freq});
        out.mode(mn.first, mn.second) += q;
    }
    return out;
}

// Transport of a density on a bisubmersion domain O_i x (-eps,eps) onto the
// reduced kernel form, in the fixed Lebesgue trivialization. Atoms must be
// space (x) time products; Fourier coefficients of the space part are
// closed forms, the time part carries over literally.
inline GroupoidKernel q_atlas(const Bisubmersion& u, const Density& f, const Session& session) {
    if (f.dim() != 3) fail(errc::bad_input, "bisubmersion densities live on chart x interval");
    Box dom = u.domain();
    for (const auto& a : f.atoms)
        for (const auto& fac : a.factors)
            for (size_t k = 0; k < fac.axes.size(); ++k) {
                double lo = fac.center[k] - fac.radii[k], hi = fac.center[k] + fac.radii[k];
                if (lo < dom.iv[fac.axes[k]][0] - 1e-12 || hi > dom.iv[fac.axes[k]][1] + 1e-12)
                    fail(errc::support_escape, "density support escapes the bisubmersion domain");
            }
    Session s = session;
    s.lambda = u.lambda;
    GroupoidKernel out(s);
    int N = out.session.bandlimit;
    for (const auto& a : f.atoms) {
        // split factors into space (axes 0,1) and time (axis 2)
        const RadialFactor* space2 = nullptr;
        const RadialFactor* spaceX = nullptr;
        const RadialFactor* spaceY = nullptr;
        const RadialFactor* timef = nullptr;
        bool ok = true;
        for (const auto& fac : a.factors) {
            bool has_time = std::find(fac.axes.begin(), fac.axes.end(), 2) != fac.axes.end();
            if (has_time) {
                if (fac.axes.size() != 1) { ok = false; break; }
                timef = &fac;
            } else if (fac.axes.size() == 2) {
                space2 = &fac;
            } else if (fac.axes[0] == 0) {
                spaceX = &fac;
            } else {
                spaceY = &fac;
            }
        }
        if (!ok || !timef)
            fail(errc::bad_input, "kernel transport needs space x time product atoms");
        double tfreq = a.freq.empty() ? 0.0 : a.freq[2];
        for (int m = -N; m <= N; ++m) {
            for (int n = -N; n <= N; ++n) {
                // space Fourier coefficient at (m,n), with atom modulation folded in
                cplx coef = a.amp;
                double wx = (a.freq.empty() ? 0.0 : a.freq[0]) - 2.0 * M_PI * m;
                double wy = (a.freq.empty() ? 0.0 : a.freq[1]) - 2.0 * M_PI * n;
                if (space2) {
                    double kx = wx * space2->radii[0], ky = wy * space2->radii[1];
                    double ph = wx * space2->center[0] + wy * space2->center[1];
                    coef *= space2->radii[0] * space2->radii[1] * bump_ft2(std::hypot(kx, ky)) *
                            cplx(std::cos(ph), std::sin(ph));
                } else {
                    if (!spaceX || !spaceY)
                        fail(errc::bad_input, "kernel transport needs full space factors");
                    double phx = wx * spaceX->center[0], phy = wy * spaceY->center[0];
                    coef *= spaceX->radii[0] * bump_ft1(wx * spaceX->radii[0]) *
                            cplx(std::cos(phx), std::sin(phx));
                    coef *= spaceY->radii[0] * bump_ft1(wy * spaceY->radii[0]) *
                            cplx(std::cos(phy), std::sin(phy));
                }
                if (std::abs(coef) < 1e-17 * std::abs(a.amp)) continue;
                out.mode(m, n).terms.push_back({coef, timef->center[0], timef->radii[0], tfreq});
            }
        }
    }
    out.compress();
    return out;
}

// g tensor ell with ell a mollified Lebesgue factor of total mass 2 eps
inline Density hat_density(const Density& g, double eps) {
    Density ell = bump_density(Box::interval(-eps, eps), {0.0}, {eps}, 2.0 / bumptab::mass(1));
    return tensor(g, ell);
}

// Mollifier concentrated at the unit section {(g,0)}: constant in space,
// unit-mass time bump of half-width eta. Convolving against it
// approximates the identity as eta shrinks.
inline GroupoidKernel unit_mollifier(const Session& s, double eta) {
    GroupoidKernel e(s);
    e.mode(0, 0).terms.push_back({1.0 / (bumptab::mass(1) * eta), 0.0, eta, 0.0});
    return e;
}

} // namespace rotalg
