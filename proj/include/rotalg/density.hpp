#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "rotalg/bump.hpp"
#include "rotalg/errors.hpp"

namespace rotalg {

using cplx = std::complex<double>;

// axis-aligned box, the domain type for chart products
struct Box {
    std::vector<std::array<double, 2>> iv;

    int dim() const { return (int)iv.size(); }
    double len(int k) const { return iv[k][1] - iv[k][0]; }
    double volume() const {
        double v = 1.0;
        for (int k = 0; k < dim(); ++k) v *= len(k);
        return v;
    }
    bool contains(const std::vector<double>& x, double margin = 0.0) const {
        for (int k = 0; k < dim(); ++k)
            if (x[k] < iv[k][0] + margin || x[k] > iv[k][1] - margin) return false;
        return true;
    }
    static Box product(const Box& a, const Box& b) {
        Box r = a;
        r.iv.insert(r.iv.end(), b.iv.begin(), b.iv.end());
        return r;
    }
    static Box interval(double a, double b) { return Box{{{a, b}}}; }
};

// One radial factor of a bump atom: exp(-1/(1-r^2)) with
// r^2 = sum_k ((x_k - c_k)/rho_k)^2 over its axis group.
struct RadialFactor {
    std::vector<int> axes;
    std::vector<double> center, radii;

    double r2(const std::vector<double>& x) const {
        double s = 0.0;
        for (size_t k = 0; k < axes.size(); ++k) {
            double u = (x[axes[k]] - center[k]) / radii[k];
            s += u * u;
        }
        return s;
    }
};

// Smooth compactly supported atom: complex amplitude times a product of
// radial bump factors, optionally modulated by e^{i sum freq_k x_k}.
// BumpProfile in the plain sense is the one-factor unmodulated case; tensor
// products force the grouped form.
struct Atom {
    cplx amp = 0.0;
    std::vector<RadialFactor> factors;
    std::vector<double> freq; // per axis; empty means no modulation

    cplx eval(const std::vector<double>& x) const {
        double prod = 1.0;
        for (const auto& f : factors) {
            double r2 = f.r2(x);
            if (r2 >= 1.0) return 0.0;
            prod *= bump_r2(r2);
        }
        cplx v = amp * prod;
        if (!freq.empty()) {
            double ph = 0.0;
            for (size_t k = 0; k < freq.size(); ++k) ph += freq[k] * x[k];
            v *= cplx(std::cos(ph), std::sin(ph));
        }
        return v;
    }

    // closed-form integral over all axes (factors are disjoint by construction)
    cplx integral() const {
        cplx v = amp;
        for (const auto& f : factors) v *= factor_integral(f);
        return v;
    }

    cplx factor_integral(const RadialFactor& f) const {
        double scale = 1.0, ph = 0.0, k2 = 0.0;
        for (size_t k = 0; k < f.axes.size(); ++k) {
            scale *= f.radii[k];
            double w = freq.empty() ? 0.0 : freq[f.axes[k]];
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
                if (kap > 1e-14) fail(errc::bad_input, "modulated radial factor of dim > 2");
                base = bumptab::mass((int)f.axes.size());
        }
        return scale * base * cplx(std::cos(ph), std::sin(ph));
    }

    double sup_bound() const { return std::abs(amp) * std::exp(-1.0 * factors.size()); }
};

// Finite sum of atoms on a box domain; the universal carrier for smooth
// compactly supported densities (1-densities in the fixed Lebesgue
// trivialization). Linear structure is exact on coefficients; err
// accumulates quadrature/fit estimates picked up along the way.
struct Density {
    Box domain;
    std::vector<Atom> atoms;
    double err = 0.0;

    int dim() const { return domain.dim(); }

    cplx eval(const std::vector<double>& x) const {
        cplx s = 0.0;
        for (const auto& a : atoms) s += a.eval(x);
        return s;
    }

    cplx integral() const {
        cplx s = 0.0;
        for (const auto& a : atoms) s += a.integral();
        return s;
    }

    double sup_bound() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.sup_bound();
        return s;
    }

    Density& operator*=(cplx c) {
        for (auto& a : atoms) a.amp *= c;
        err *= std::abs(c);
        return *this;
    }
    friend Density operator*(cplx c, Density d) { d *= c; return d; }
    friend Density operator+(Density a, const Density& b) {
        a.atoms.insert(a.atoms.end(), b.atoms.begin(), b.atoms.end());
        a.err += b.err;
        return a;
    }
    friend Density operator-(Density a, const Density& b) {
        Density nb = b;
        nb *= -1.0;
        return a + nb;
    }

    void conjugate() {
        for (auto& a : atoms) {
            a.amp = std::conj(a.amp);
            for (auto& f : a.freq) f = -f;
        }
    }

    static Density zero(Box dom) { return Density{std::move(dom), {}, 0.0}; }
};

// simple single-bump constructors
inline Density bump_density(Box dom, std::vector<double> center, std::vector<double> radii, cplx amp) {
    Atom a;
    a.amp = amp;
    RadialFactor f;
    f.center = center;
    f.radii = radii;
    for (int k = 0; k < (int)center.size(); ++k) f.axes.push_back(k);
    a.factors.push_back(std::move(f));
    return Density{std::move(dom), {std::move(a)}, 0.0};
}

// unit-mass bump of half-width w centered at c on the line
inline Density unit_mass_bump(double c, double w) {
    Density d = bump_density(Box::interval(c - w, c + w), {c}, {w}, 1.0 / (bumptab::mass(1) * w));
    return d;
}

// f1 (x) f2 (y) on the product domain; exact and bilinear
inline Density tensor(const Density& f1, const Density& f2) {
    Density r;
    r.domain = Box::product(f1.domain, f2.domain);
    int d1 = f1.dim(), d2 = f2.dim();
    r.err = f1.err * f2.sup_bound() + f2.err * f1.sup_bound() + f1.err * f2.err;
    for (const auto& a : f1.atoms)
        for (const auto& b : f2.atoms) {
            Atom c;
            c.amp = a.amp * b.amp;
            c.factors = a.factors;
            for (auto f : b.factors) {
                for (auto& ax : f.axes) ax += d1;
                c.factors.push_back(std::move(f));
            }
            if (!a.freq.empty() || !b.freq.empty()) {
                c.freq.assign(d1 + d2, 0.0);
                for (int k = 0; k < d1 && k < (int)a.freq.size(); ++k) c.freq[k] = a.freq[k];
                for (int k = 0; k < d2 && k < (int)b.freq.size(); ++k) c.freq[d1 + k] = b.freq[k];
            }
            r.atoms.push_back(std::move(c));
        }
    return r;
}

// quadrature of a density over its domain; used as an independent route
// against the closed-form integral
inline cplx integrate_quad(const Density& f, double pts_per_unit) {
    std::vector<QuadPoints> axes;
    double maxfreq = 0.0;
    for (const auto& a : f.atoms)
        for (double w : a.freq) maxfreq = std::max(maxfreq, std::fabs(w));
    for (int k = 0; k < f.dim(); ++k)
        axes.push_back(composite_gl(f.domain.iv[k][0], f.domain.iv[k][1], pts_per_unit, maxfreq));
    std::vector<double> x(f.dim());
    std::function<cplx(int)> rec = [&](int k) -> cplx {
        if (k == f.dim()) return f.eval(x);
        cplx s = 0.0;
        for (size_t i = 0; i < axes[k].x.size(); ++i) {
            x[k] = axes[k].x[i];
            s += axes[k].w[i] * rec(k + 1);
        }
        return s;
    };
    return rec(0);
}

} // namespace rotalg
