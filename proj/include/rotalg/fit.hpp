#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "rotalg/density.hpp"

namespace rotalg {

// Least-squares projection of a sampled function onto a fixed lattice of
// bump profiles. This is the compressed, serializable representation of
// pushforward outputs; the fit residual is stored on the result and is the
// auditable quantity. Geometry (basis, samples, Cholesky factor) is cached
// per lattice signature since the same charts recur constantly.
class BumpFitter {
public:
    struct Options {
        double pitch;        // lattice spacing
        double beta = 2.0;   // radius / pitch
        int oversample = 3;  // sample grid density relative to lattice
        double residual_threshold = 1e9; // FitResidualTooLarge above this
    };

    // fit fn over the box; fn must be smooth, supported in the box interior
    static Density fit(const Box& box, const std::function<cplx(const std::vector<double>&)>& fn,
                       const Options& opt) {
        Geometry& g = geometry(box, opt);
        const int n = (int)g.centers.size();
        const int m = (int)g.samples.size();
        std::vector<double> re(m), im(m);
        std::vector<double> xv;
        for (int i = 0; i < m; ++i) {
            cplx v = fn(g.samples[i]);
            re[i] = v.real();
            im[i] = v.imag();
        }
        std::vector<double> cr = g.solve(re), ci = g.solve(im);
        Density out;
        out.domain = box;
        double maxres = 0.0, scale = 0.0;
        for (int i = 0; i < m; ++i) {
            cplx fitv = 0.0;
            for (int j : g.touching[i]) {
                double b = g.basis_at(j, g.samples[i]);
                fitv += cplx(cr[j], ci[j]) * b;
            }
            maxres = std::max(maxres, std::abs(fitv - cplx(re[i], im[i])));
            scale = std::max(scale, std::abs(cplx(re[i], im[i])));
        }
        if (maxres > opt.residual_threshold * std::max(scale, 1e-300))
            fail(errc::fit_residual_too_large, "bump lattice fit residual " + std::to_string(maxres));
        for (int j = 0; j < n; ++j) {
            cplx a(cr[j], ci[j]);
            if (std::abs(a) < 1e-15 * std::max(scale, 1.0)) continue;
            Atom at;
            at.amp = a;
            RadialFactor f;
            f.center = g.centers[j];
            f.radii.assign(box.dim(), g.radius);
            for (int k = 0; k < box.dim(); ++k) f.axes.push_back(k);
            at.factors.push_back(std::move(f));
            out.atoms.push_back(std::move(at));
        }
        out.err = maxres;
        return out;
    }

private:
    struct Geometry {
        std::vector<std::vector<double>> centers, samples;
        std::vector<std::vector<int>> touching; // basis functions per sample
        double radius = 0.0;
        int n = 0;
        std::vector<double> chol; // lower factor of the normal matrix
        std::vector<std::vector<std::pair<int, double>>> rows; // sample -> (basis, value)

        double basis_at(int j, const std::vector<double>& x) const {
            double r2 = 0.0;
            for (size_t k = 0; k < x.size(); ++k) {
                double u = (x[k] - centers[j][k]) / radius;
                r2 += u * u;
            }
            return bump_r2(r2);
        }

        std::vector<double> solve(const std::vector<double>& fvals) const {
            std::vector<double> rhs(n, 0.0);
            for (size_t i = 0; i < rows.size(); ++i)
                for (auto& [j, b] : rows[i]) rhs[j] += b * fvals[i];
            std::vector<double> x = rhs;
            chol_solve(x);
            // two refinement passes against the normal equations
            for (int pass = 0; pass < 2; ++pass) {
                std::vector<double> Ax(n, 0.0);
                // normal matrix apply via samples
                std::vector<double> Axs(rows.size(), 0.0);
                for (size_t i = 0; i < rows.size(); ++i)
                    for (auto& [j, b] : rows[i]) Axs[i] += b * x[j];
                for (size_t i = 0; i < rows.size(); ++i)
                    for (auto& [j, b] : rows[i]) Ax[j] += b * Axs[i];
                std::vector<double> r(n);
                for (int j = 0; j < n; ++j) r[j] = rhs[j] - Ax[j];
                chol_solve(r);
                for (int j = 0; j < n; ++j) x[j] += r[j];
            }
            return x;
        }

        void chol_solve(std::vector<double>& x) const {
            for (int i = 0; i < n; ++i) {
                double s = x[i];
                for (int k = 0; k < i; ++k) s -= chol[(size_t)i * n + k] * x[k];
                x[i] = s / chol[(size_t)i * n + i];
            }
            for (int i = n - 1; i >= 0; --i) {
                double s = x[i];
                for (int k = i + 1; k < n; ++k) s -= chol[(size_t)k * n + i] * x[k];
                x[i] = s / chol[(size_t)i * n + i];
            }
        }
    };

    static Geometry& geometry(const Box& box, const Options& opt) {
        static std::map<std::vector<long long>, std::unique_ptr<Geometry>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        std::vector<long long> key;
        key.push_back(box.dim());
        for (auto& iv : box.iv) {
            key.push_back((long long)std::llround(iv[0] * 1e9));
            key.push_back((long long)std::llround(iv[1] * 1e9));
        }
        key.push_back((long long)std::llround(opt.pitch * 1e9));
        key.push_back((long long)std::llround(opt.beta * 1e6));
        key.push_back(opt.oversample);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;

        auto g = std::make_unique<Geometry>();
        int d = box.dim();
        std::vector<int> counts(d), scounts(d);
        for (int k = 0; k < d; ++k) {
            counts[k] = std::max(2, (int)std::floor(box.len(k) / opt.pitch) + 1);
            scounts[k] = counts[k] * opt.oversample;
        }
        g->radius = opt.beta * opt.pitch;
        // tensor lattice of centers and samples
        std::vector<double> x(d);
        std::function<void(int, bool)> rec = [&](int k, bool sample) {
            const auto& cs = sample ? scounts : counts;
            if (k == d) {
                (sample ? g->samples : g->centers).push_back(x);
                return;
            }
            for (int i = 0; i < cs[k]; ++i) {
                x[k] = box.iv[k][0] + box.len(k) * (i + 0.5) / cs[k];
                rec(k + 1, sample);
            }
        };
        rec(0, false);
        rec(0, true);
        g->n = (int)g->centers.size();
        const int n = g->n, m = (int)g->samples.size();
        g->rows.resize(m);
        g->touching.resize(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                double b = g->basis_at(j, g->samples[i]);
                if (b != 0.0) {
                    g->rows[i].push_back({j, b});
                    g->touching[i].push_back(j);
                }
            }
        // normal matrix + Cholesky with a tiny ridge
        std::vector<double> G((size_t)n * n, 0.0);
        for (int i = 0; i < m; ++i)
            for (auto& [j, bj] : g->rows[i])
                for (auto& [k, bk] : g->rows[i])
                    if (k >= j) G[(size_t)j * n + k] += bj * bk;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < j; ++k) G[(size_t)j * n + k] = G[(size_t)k * n + j];
        double gmax = 0.0;
        for (int j = 0; j < n; ++j) gmax = std::max(gmax, G[(size_t)j * n + j]);
        for (int j = 0; j < n; ++j) G[(size_t)j * n + j] += 1e-13 * gmax;
        // in-place Cholesky
        for (int j = 0; j < n; ++j) {
            double dpiv = G[(size_t)j * n + j];
            for (int k = 0; k < j; ++k) dpiv -= G[(size_t)j * n + k] * G[(size_t)j * n + k];
            if (dpiv <= 0.0) fail(errc::fit_residual_too_large, "degenerate fit lattice");
            dpiv = std::sqrt(dpiv);
            G[(size_t)j * n + j] = dpiv;
            for (int i = j + 1; i < n; ++i) {
                double s = G[(size_t)i * n + j];
                for (int k = 0; k < j; ++k) s -= G[(size_t)i * n + k] * G[(size_t)j * n + k];
                G[(size_t)i * n + j] = s / dpiv;
            }
        }
        g->chol = std::move(G);
        return *cache.emplace(std::move(key), std::move(g)).first->second;
    }
};

} // namespace rotalg
