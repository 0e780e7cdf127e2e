#pragma once

#include <memory>
#include <vector>

#include "rotalg/density.hpp"
#include "rotalg/errors.hpp"
#include "rotalg/pushforward.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

// Closed-form composition tree for smooth maps from a chart-product domain
// into the torus: constants, chart coordinates, group multiplication and
// inversion, the flow with time read off a domain axis, coordinate
// reflection, and axis shifts (for product domains).
class TorusMap {
public:
    enum class Kind { constant, coord_pair, mul, inv, flowed, flip, shifted };

    static TorusMap constant(TorusPoint g) {
        TorusMap m(Kind::constant);
        m.point_ = g;
        return m;
    }
    static TorusMap coord_pair(int ix, int iy) {
        TorusMap m(Kind::coord_pair);
        m.ix_ = ix;
        m.iy_ = iy;
        return m;
    }
    static TorusMap mul(TorusMap a, TorusMap b) {
        TorusMap m(Kind::mul);
        m.a_ = std::make_shared<TorusMap>(std::move(a));
        m.b_ = std::make_shared<TorusMap>(std::move(b));
        return m;
    }
    static TorusMap inv(TorusMap a) {
        TorusMap m(Kind::inv);
        m.a_ = std::make_shared<TorusMap>(std::move(a));
        return m;
    }
    // flow(child(y), y[time_axis])
    static TorusMap flowed(TorusMap a, int time_axis) {
        TorusMap m(Kind::flowed);
        m.a_ = std::make_shared<TorusMap>(std::move(a));
        m.ix_ = time_axis;
        return m;
    }
    // child evaluated at negated coordinates
    static TorusMap flip(TorusMap a) {
        TorusMap m(Kind::flip);
        m.a_ = std::make_shared<TorusMap>(std::move(a));
        return m;
    }
    // child with all its axis reads shifted by off
    static TorusMap shifted(TorusMap a, int off) {
        TorusMap m(Kind::shifted);
        m.a_ = std::make_shared<TorusMap>(std::move(a));
        m.ix_ = off;
        return m;
    }

    // unreduced angle coordinates (used through e^{2 pi i .} or mod 1 only)
    std::array<double, 2> eval_raw(const std::vector<double>& y, double lambda, int off = 0,
                                   double sign = 1.0) const {
        switch (kind_) {
            case Kind::constant: return {point_.x, point_.y};
            case Kind::coord_pair: return {sign * y[ix_ + off], sign * y[iy_ + off]};
            case Kind::mul: {
                auto u = a_->eval_raw(y, lambda, off, sign);
                auto v = b_->eval_raw(y, lambda, off, sign);
                return {u[0] + v[0], u[1] + v[1]};
            }
            case Kind::inv: {
                auto u = a_->eval_raw(y, lambda, off, sign);
                return {-u[0], -u[1]};
            }
            case Kind::flowed: {
                auto u = a_->eval_raw(y, lambda, off, sign);
                double t = sign * y[ix_ + off];
                return {u[0] + t, u[1] + lambda * t};
            }
            case Kind::flip: return a_->eval_raw(y, lambda, off, -sign);
            case Kind::shifted: return a_->eval_raw(y, lambda, off + ix_, sign);
        }
        return {0.0, 0.0};
    }

    TorusPoint eval(const std::vector<double>& y, double lambda) const {
        auto u = eval_raw(y, lambda);
        return {u[0], u[1]};
    }

    // Every map in this algebra is affine in the domain coordinates:
    // H(y) = c0 + sum_k y_k v_k with v_k one of 0, (+-1,0), (0,+-1),
    // (+-1,+-lambda). The decomposition drives closed-form Fourier
    // integrals; it fails only if some axis is read twice.
    struct Affine {
        std::array<double, 2> c0{0.0, 0.0};
        std::vector<std::array<double, 2>> v; // per domain axis
        bool ok = false;
    };

    Affine affine(int dim, double lambda) const {
        Affine a;
        a.v.assign(dim, {0.0, 0.0});
        a.ok = affine_walk(a, lambda, 0, 1.0, 1.0);
        return a;
    }

    Kind kind() const { return kind_; }

private:
    // accumulate contributions; outer = overall sign from inversions,
    // csign = coordinate sign from flips, off = axis offset from shifts
    bool affine_walk(Affine& a, double lambda, int off, double outer, double csign) const {
        auto add_axis = [&](int axis, std::array<double, 2> dir) -> bool {
            if (axis < 0 || axis >= (int)a.v.size()) return false;
            if (a.v[axis][0] != 0.0 || a.v[axis][1] != 0.0) return false; // axis read twice
            a.v[axis] = {outer * csign * dir[0], outer * csign * dir[1]};
            return true;
        };
        switch (kind_) {
            case Kind::constant:
                a.c0[0] += outer * point_.x;
                a.c0[1] += outer * point_.y;
                return true;
            case Kind::coord_pair:
                return add_axis(ix_ + off, {1.0, 0.0}) && add_axis(iy_ + off, {0.0, 1.0});
            case Kind::mul:
                return a_->affine_walk(a, lambda, off, outer, csign) &&
                       b_->affine_walk(a, lambda, off, outer, csign);
            case Kind::inv:
                return a_->affine_walk(a, lambda, off, -outer, csign);
            case Kind::flowed:
                return a_->affine_walk(a, lambda, off, outer, csign) &&
                       add_axis(ix_ + off, {1.0, lambda});
            case Kind::flip:
                return a_->affine_walk(a, lambda, off, outer, -csign);
            case Kind::shifted:
                return a_->affine_walk(a, lambda, off + ix_, outer, csign);
        }
        return false;
    }

public:

private:
    explicit TorusMap(Kind k) : kind_(k) {}
    Kind kind_;
    TorusPoint point_{};
    int ix_ = 0, iy_ = 1;
    std::shared_ptr<TorusMap> a_, b_;
};

enum class PlotKind { restriction, composed, product, inverse, constant };

// A plot of the generated diffeology: a chart-product domain with the
// closed-form factor map h into the torus (the plot itself is pi o h).
struct Plot {
    PlotKind kind = PlotKind::restriction;
    Box domain;
    TorusMap h = TorusMap::coord_pair(0, 1);
    int target_chart = -1; // -1 when no single chart covers the image
    std::vector<std::shared_ptr<Plot>> pieces; // filled by subdivision

    bool has_factor_map() const { return kind != PlotKind::constant; }
};

inline Plot chart_restriction_plot(int chart_index) {
    const Chart& c = fixed_atlas().chart(chart_index);
    Plot p;
    p.kind = PlotKind::restriction;
    p.domain = Box{{{c.lower_x, c.lower_x + c.side}, {c.lower_y, c.lower_y + c.side}}};
    p.h = TorusMap::coord_pair(0, 1);
    p.target_chart = chart_index;
    return p;
}

inline Plot constant_plot(TorusPoint g, Box domain) {
    Plot p;
    p.kind = PlotKind::constant;
    p.domain = std::move(domain);
    p.h = TorusMap::constant(g);
    p.target_chart = fixed_atlas().chart_of(g);
    return p;
}

namespace plotdetail {

inline std::vector<TorusPoint> sample_image(const Box& domain, const TorusMap& h, double lambda,
                                            int per_axis = 5) {
    std::vector<TorusPoint> out;
    int d = domain.dim();
    std::vector<int> idx(d, 0);
    std::vector<double> y(d);
    bool done = d == 0;
    while (!done) {
        for (int k = 0; k < d; ++k)
            y[k] = domain.iv[k][0] + domain.len(k) * (idx[k] + 0.5) / per_axis;
        out.push_back(h.eval(y, lambda));
        int k = 0;
        for (; k < d; ++k) {
            if (++idx[k] < per_axis) break;
            idx[k] = 0;
        }
        done = (k == d);
    }
    return out;
}

inline int covering_chart(const std::vector<TorusPoint>& pts, double margin = 1e-3) {
    for (int c = 0; c < Atlas::chart_count; ++c) {
        bool ok = true;
        for (const auto& q : pts)
            if (!fixed_atlas().chart(c).contains(q, margin)) { ok = false; break; }
        if (ok) return c;
    }
    return -1;
}

inline void subdivide(Plot& p, double lambda, int depth) {
    auto pts = sample_image(p.domain, p.h, lambda);
    p.target_chart = covering_chart(pts);
    if (p.target_chart >= 0) return;
    if (depth <= 0)
        fail(errc::no_covering_chart, "image straddles charts after maximal subdivision");
    int ax = 0;
    for (int k = 1; k < p.domain.dim(); ++k)
        if (p.domain.len(k) > p.domain.len(ax)) ax = k;
    for (int half = 0; half < 2; ++half) {
        auto piece = std::make_shared<Plot>(p);
        piece->pieces.clear();
        double mid = 0.5 * (p.domain.iv[ax][0] + p.domain.iv[ax][1]);
        piece->domain.iv[ax] = {half == 0 ? p.domain.iv[ax][0] : mid,
                                half == 0 ? mid : p.domain.iv[ax][1]};
        subdivide(*piece, lambda, depth - 1);
        p.pieces.push_back(std::move(piece));
    }
}

} // namespace plotdetail

// Product plot: domain O_1 x O_2, factor map the pointwise torus product.
// If the image straddles charts the domain is subdivided on a halving grid
// until every piece lands in one chart (the pieces record the local
// factorizations; the top-level plot keeps the global map).
inline Plot plot_product(const Plot& p1, const Plot& p2, double lambda) {
    Plot p;
    p.kind = (p1.kind == PlotKind::constant && p2.kind == PlotKind::constant)
                 ? PlotKind::constant
                 : PlotKind::product;
    p.domain = Box::product(p1.domain, p2.domain);
    p.h = TorusMap::mul(p1.h, TorusMap::shifted(p2.h, p1.domain.dim()));
    if (p.kind == PlotKind::constant) {
        TorusPoint g = p.h.eval(std::vector<double>(p.domain.dim(), 0.0), lambda);
        p.h = TorusMap::constant(g);
        p.target_chart = fixed_atlas().chart_of(g);
        return p;
    }
    plotdetail::subdivide(p, lambda, 16);
    return p;
}

// Inverse plot on the reflected domain: chi^{-1}(u) = inv(chi(-u)).
inline Plot plot_inverse(const Plot& p, double lambda) {
    Plot q;
    q.kind = (p.kind == PlotKind::constant) ? PlotKind::constant : PlotKind::inverse;
    q.domain = p.domain;
    for (auto& iv : q.domain.iv) iv = {-iv[1], -iv[0]};
    q.h = TorusMap::inv(TorusMap::flip(p.h));
    if (q.kind == PlotKind::constant) {
        TorusPoint g = q.h.eval(std::vector<double>(q.domain.dim(), 0.0), lambda);
        q.h = TorusMap::constant(g);
    }
    auto pts = plotdetail::sample_image(q.domain, q.h, lambda);
    q.target_chart = plotdetail::covering_chart(pts);
    return q;
}

// Lemma-2.2 style fiber product realization at a point: the plot
// psi(y,s) = pi(flow(h(y), s)) on a shrunk neighborhood of x0 times
// (-eps,eps), with q the projection and p the flowed factor map. The
// target chart must absorb the flowed image, shrinking the neighborhood
// around x0 as needed.
struct FiberProduct {
    Plot psi;
    SubmersionDescriptor q; // projection onto the chi-domain factor
    TorusMap p = TorusMap::coord_pair(0, 1); // flowed factor map into O_i
    int target_chart = -1;
};

inline FiberProduct fiber_product_plot(const Plot& chi, const std::vector<double>& x0, double eps,
                                       double lambda) {
    if (!chi.domain.contains(x0)) fail(errc::bad_input, "x0 outside the plot domain");
    Box nbhd = chi.domain;
    for (int attempt = 0; attempt <= 6; ++attempt) {
        Plot probe;
        probe.domain = nbhd;
        probe.domain.iv.push_back({-eps, eps});
        TorusMap flowed = TorusMap::flowed(chi.h, nbhd.dim());
        auto pts = plotdetail::sample_image(probe.domain, flowed, lambda);
        int chart = plotdetail::covering_chart(pts);
        if (chart >= 0) {
            FiberProduct fp;
            fp.psi.kind = PlotKind::composed;
            fp.psi.domain = probe.domain;
            fp.psi.h = flowed;
            fp.psi.target_chart = chart;
            std::vector<int> kept;
            for (int k = 0; k < nbhd.dim(); ++k) kept.push_back(k);
            fp.q = SubmersionDescriptor::projection(fp.psi.domain, kept);
            fp.p = flowed;
            fp.target_chart = chart;
            return fp;
        }
        // shrink the neighborhood toward x0 and retry
        for (int k = 0; k < nbhd.dim(); ++k) {
            double lo = nbhd.iv[k][0], hi = nbhd.iv[k][1];
            nbhd.iv[k] = {x0[k] - 0.25 * (x0[k] - lo), x0[k] + 0.25 * (hi - x0[k])};
        }
    }
    fail(errc::epsilon_too_large, "flowed image escapes every atlas chart");
}

} // namespace rotalg
