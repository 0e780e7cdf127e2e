#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "rotalg/errors.hpp"
#include "rotalg/representation.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

// e^{2 pi i x} with the argument reduced first and the trigonometry done in
// extended precision; keeps phases of large integer multiples of lambda
// within an ulp
inline cplx cis_frac(double x) {
    long double r = remainderl((long double)x, 1.0L);
    long double a = 2.0L * 3.14159265358979323846264338327950288L * r;
    return {(double)cosl(a), (double)sinl(a)};
}

// e^{2 pi i lambda K} for integer K: the product lambda*K is formed in
// extended precision so the angle does not lose digits before reduction
inline cplx cis_lambda(double lambda, long long K) {
    long double r = remainderl((long double)lambda * (long double)K, 1.0L);
    long double a = 2.0L * 3.14159265358979323846264338327950288L * r;
    return {(double)cosl(a), (double)sinl(a)};
}

// Element of the rotation algebra: finitely supported coefficients a(m,n)
// standing for sum a(m,n) u^m v^n in normal order, under the exchange rule
// v u = e^{-2 pi i lambda} u v.
class NcElement {
public:
    std::map<std::pair<int, int>, cplx> c;

    NcElement() = default;

    static NcElement monomial(int m, int n, cplx a = 1.0) {
        NcElement e;
        if (a != cplx(0.0)) e.c[{m, n}] = a;
        return e;
    }
    static NcElement one() { return monomial(0, 0, 1.0); }

    cplx at(int m, int n) const {
        auto it = c.find({m, n});
        return it == c.end() ? cplx(0.0) : it->second;
    }

    void prune(double tol = 0.0) {
        for (auto it = c.begin(); it != c.end();)
            it = (std::abs(it->second) <= tol) ? c.erase(it) : ++it;
    }

    NcElement& operator+=(const NcElement& o) {
        for (auto& [mn, v] : o.c) c[mn] += v;
        return *this;
    }
    friend NcElement operator+(NcElement a, const NcElement& b) { return a += b; }
    friend NcElement operator-(NcElement a, const NcElement& b) {
        for (auto& [mn, v] : b.c) a.c[mn] -= v;
        return a;
    }
    friend NcElement operator*(cplx s, NcElement a) {
        for (auto& [mn, v] : a.c) v *= s;
        return a;
    }

    double norm1() const {
        double s = 0.0;
        for (auto& [mn, v] : c) s += std::abs(v);
        return s;
    }
    double norm_inf() const {
        double s = 0.0;
        for (auto& [mn, v] : c) s = std::max(s, std::abs(v));
        return s;
    }
    int degree() const {
        int d = 0;
        for (auto& [mn, v] : c) d = std::max({d, std::abs(mn.first), std::abs(mn.second)});
        return d;
    }
};

// (a b)(M,N) = sum a(m,n) b(M-m,N-n) e^{-2 pi i lambda n (M-m)}; partial
// sums carried in extended precision so coefficient noise stays near one ulp
inline NcElement multiply(const NcElement& a, const NcElement& b, double lambda) {
    std::map<std::pair<int, int>, std::complex<long double>> acc;
    for (const auto& [mn, av] : a.c)
        for (const auto& [kl, bv] : b.c) {
            cplx ph = cis_lambda(lambda, -(long long)mn.second * kl.first);
            std::complex<long double> term =
                std::complex<long double>(av) * std::complex<long double>(bv) *
                std::complex<long double>(ph);
            acc[{mn.first + kl.first, mn.second + kl.second}] += term;
        }
    NcElement r;
    for (const auto& [mn, v] : acc) r.c[mn] = cplx((double)v.real(), (double)v.imag());
    r.prune();
    return r;
}

// a*(M,N) = conj(a(-M,-N)) e^{-2 pi i lambda M N}, from (u^m v^n)* = v^-n u^-m
inline NcElement star(const NcElement& a, double lambda) {
    NcElement r;
    for (const auto& [mn, av] : a.c) {
        int M = -mn.first, N = -mn.second;
        r.c[{M, N}] = std::conj(av) * cis_lambda(lambda, -(long long)M * N);
    }
    return r;
}

// canonical trace: the constant coefficient
inline cplx trace(const NcElement& a) { return a.at(0, 0); }

// truncated regular representation on the 2n+1 window: u the bilateral
// shift, v the diagonal of e^{2 pi i lambda k}
inline CMatrix represent(const NcElement& a, int n, double lambda) {
    if (n < a.degree() + 1) fail(errc::window_too_small, "window must exceed the support radius");
    int dim = 2 * n + 1;
    CMatrix r(dim);
    for (const auto& [mn, av] : a.c) {
        int m = mn.first, nn = mn.second;
        // u^m v^n e_k = e^{-2 pi i lambda n k} e_{k+m}, so that the
        // window realizes uv = e^{2 pi i lambda} vu
        for (int k = -n; k <= n; ++k) {
            int j = k + m;
            if (j < -n || j > n) continue;
            r.at(j + n, k + n) += av * cis_lambda(lambda, -(long long)nn * k);
        }
    }
    return r;
}

struct ProjectionResult {
    NcElement e;
    double residual = 0.0; // ||e^2 - e||_1
    int bandlimit = 0;
};

namespace ncdetail {

// profile data for the ramp construction on [0,1)
struct PRProfiles {
    double mu, delta;

    double ramp(double t) const { return smooth_step(t); }
    double g(double x) const {
        x = mod1(x);
        if (x < delta) return ramp(x / delta);
        if (x < mu) return 1.0;
        if (x < mu + delta) return 1.0 - ramp((x - mu) / delta);
        return 0.0;
    }
    double f(double x) const {
        x = mod1(x);
        if (x < mu || x >= mu + delta) return 0.0;
        double gg = g(x);
        double v = gg - gg * gg;
        return v > 0.0 ? std::sqrt(v) : 0.0;
    }
};

// Fourier coefficients by the periodic trapezoid rule
inline std::vector<cplx> fourier(const PRProfiles& p, double (PRProfiles::*fn)(double) const,
                                 int B, int grid = 16384) {
    std::vector<double> vals(grid);
    for (int i = 0; i < grid; ++i) vals[i] = (p.*fn)((double)i / grid);
    std::vector<cplx> out(2 * B + 1);
    for (int k = -B; k <= B; ++k) {
        cplx acc = 0.0;
        for (int i = 0; i < grid; ++i) {
            double ph = -2.0 * M_PI * k * i / (double)grid;
            acc += vals[i] * cplx(std::cos(ph), std::sin(ph));
        }
        out[k + B] = acc / (double)grid;
    }
    return out;
}

inline NcElement build_projection(double lambda, double delta_frac, int B) {
    bool complement = lambda > 0.5;
    double mu = complement ? 1.0 - lambda : lambda;
    double delta = delta_frac * std::min(mu, 1.0 - 2.0 * mu);
    PRProfiles prof{mu, delta};
    auto fk = fourier(prof, &PRProfiles::f, B);
    auto gk = fourier(prof, &PRProfiles::g, B);
    NcElement e;
    for (int k = -B; k <= B; ++k) {
        if (std::abs(gk[k + B]) > 1e-17) e.c[{k, 0}] += gk[k + B];
        if (std::abs(fk[k + B]) > 1e-17) {
            // the shift by mu is carried by v when mu = lambda and by v*
            // when mu = 1 - lambda; the other term is the adjoint
            if (!complement) {
                e.c[{k, 1}] += fk[k + B];                           // f(u) v
                e.c[{k, -1}] += fk[k + B] * cis_lambda(lambda, k);  // v* f(u)
            } else {
                e.c[{k, -1}] += fk[k + B];                          // f(u) v*
                e.c[{k, 1}] += fk[k + B] * cis_lambda(lambda, -k);  // v f(u)
            }
        }
    }
    if (complement) {
        for (auto& [mn, v] : e.c) v = -v;
        e.c[{0, 0}] += 1.0;
    }
    e.prune();
    return e;
}

} // namespace ncdetail

// Self-adjoint idempotent of trace lambda built from ramp profiles
// satisfying the exact idempotency identities, Fourier-truncated at the
// given bandlimit. smoothing scales the ramp width inside its admissible
// range (0,1].
inline ProjectionResult powers_rieffel_projection(double lambda, double smoothing = 0.95,
                                                  int bandlimit = 48,
                                                  double residual_bound = 1e-3) {
    if (!(lambda > 0.0 && lambda < 1.0) || lambda == 0.5)
        fail(errc::bad_input, "lambda must lie in (0,1) away from 1/2");
    if (!(smoothing > 0.0 && smoothing <= 1.0))
        fail(errc::bad_input, "smoothing must lie in (0,1]");
    int B = bandlimit;
    while (true) {
        NcElement e = ncdetail::build_projection(lambda, smoothing, B);
        NcElement r = multiply(e, e, lambda) - e;
        double res = r.norm1();
        if (res <= residual_bound) return {std::move(e), res, B};
        if (B >= 64)
            fail(errc::projection_residual_too_large,
                 "residual " + std::to_string(res) + " above bound at bandlimit 64");
        B = std::min(2 * B, 64);
    }
}

} // namespace rotalg
