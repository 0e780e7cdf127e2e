#pragma once

#include <complex>
#include <random>
#include <vector>

#include "rotalg/errors.hpp"
#include "rotalg/kernel.hpp"

namespace rotalg {

// dense complex matrix, row major; only what the representations need
struct CMatrix {
    int n = 0;
    std::vector<cplx> a;

    explicit CMatrix(int n_ = 0) : n(n_), a((size_t)n_ * n_, cplx(0.0)) {}
    cplx& at(int i, int j) { return a[(size_t)i * n + j]; }
    cplx at(int i, int j) const { return a[(size_t)i * n + j]; }

    CMatrix mul(const CMatrix& o) const {
        CMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                cplx v = at(i, k);
                if (v == cplx(0.0)) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }
    CMatrix adjoint() const {
        CMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(i, j) = std::conj(at(j, i));
        return r;
    }
    CMatrix operator-(const CMatrix& o) const {
        CMatrix r(n);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }

    // spectral norm by power iteration on A*A
    double norm2(int iters = 200, std::uint64_t seed = 12345) const {
        if (n == 0) return 0.0;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<cplx> v(n), w(n), z(n);
        for (auto& x : v) x = cplx(u(rng), u(rng));
        double nrm = 0.0, prev = -1.0;
        for (int it = 0; it < iters; ++it) {
            // w = A v ; z = A* w
            for (int i = 0; i < n; ++i) {
                cplx s = 0.0;
                for (int j = 0; j < n; ++j) s += at(i, j) * v[j];
                w[i] = s;
            }
            for (int j = 0; j < n; ++j) {
                cplx s = 0.0;
                for (int i = 0; i < n; ++i) s += std::conj(at(i, j)) * w[i];
                z[j] = s;
            }
            double zn = 0.0;
            for (auto& x : z) zn += std::norm(x);
            zn = std::sqrt(zn);
            if (zn == 0.0) return 0.0;
            for (int j = 0; j < n; ++j) v[j] = z[j] / zn;
            nrm = std::sqrt(zn);
            if (prev >= 0.0 && std::fabs(nrm - prev) < 1e-13 * std::max(1.0, nrm) && it > 8) break;
            prev = nrm;
        }
        return nrm;
    }

    // eigenvalues of a Hermitian matrix by cyclic Jacobi
    std::vector<double> hermitian_eigenvalues(int sweeps = 60) const {
        CMatrix h = *this;
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            double off = 0.0;
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q) off += std::norm(h.at(p, q));
            if (off < 1e-26) break;
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q) {
                    cplx apq = h.at(p, q);
                    if (std::abs(apq) < 1e-18) continue;
                    double app = h.at(p, p).real(), aqq = h.at(q, q).real();
                    // unitary 2x2 diagonalization with phase
                    double absa = std::abs(apq);
                    cplx phase = apq / absa;
                    double tau = (aqq - app) / (2.0 * absa);
                    double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                    double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                    for (int k = 0; k < n; ++k) {
                        cplx hkp = h.at(k, p), hkq = h.at(k, q);
                        h.at(k, p) = c * hkp - s * std::conj(phase) * hkq;
                        h.at(k, q) = s * phase * hkp + c * hkq;
                    }
                    for (int k = 0; k < n; ++k) {
                        cplx hpk = h.at(p, k), hqk = h.at(q, k);
                        h.at(p, k) = c * hpk - s * phase * hqk;
                        h.at(q, k) = s * std::conj(phase) * hpk + c * hqk;
                    }
                }
        }
        std::vector<double> ev(n);
        for (int i = 0; i < n; ++i) ev[i] = h.at(i, i).real();
        return ev;
    }
};

// Matrix of xi |-> (t |-> int k(p.s, t-s) xi(s) ds) on the n-point midpoint
// discretization of [-window, window]: the truncated regular representation
// along the orbit of p, the witness for the C*-completion estimates.
inline CMatrix regular_representation(const GroupoidKernel& k, const TorusPoint& p, int n,
                                      double window) {
    if (n < 16) fail(errc::bad_input, "representation needs at least 16 sample points");
    if (window <= 0.0) fail(errc::window_too_small, "window must be positive");
    CMatrix m(n);
    double h = 2.0 * window / n;
    std::vector<TorusPoint> orbit(n);
    for (int j = 0; j < n; ++j) {
        double s = -window + (j + 0.5) * h;
        orbit[j] = flow(p, s, k.session.lambda);
    }
    for (int i = 0; i < n; ++i) {
        double t = -window + (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            double s = -window + (j + 0.5) * h;
            m.at(i, j) = h * k.eval(orbit[j], t - s);
        }
    }
    return m;
}

} // namespace rotalg
