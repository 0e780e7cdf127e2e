#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rotalg/errors.hpp"
#include "rotalg/rational.hpp"
#include "rotalg/torus.hpp"

namespace rotalg {

// The real number a + b*lambda, kept exact in the coefficients. Since lambda
// is irrational, the value vanishes iff a = b = 0, so discreteness questions
// reduce to exact linear algebra on (a,b) pairs.
struct PeriodValue {
    Rational a, b;

    PeriodValue() = default;
    PeriodValue(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    double value(double lambda) const { return a.to_double() + b.to_double() * lambda; }

    PeriodValue operator-() const { return {-a, -b}; }
    friend bool operator==(const PeriodValue& u, const PeriodValue& v) {
        return u.a == v.a && u.b == v.b;
    }
    std::string str() const { return a.str() + (b.is_zero() ? "" : " + (" + b.str() + ")L"); }
};

// Finitely generated subgroup of (R,+) inside Q + Q*lambda.
struct PeriodGroup {
    std::vector<PeriodValue> generators;
    double lambda_numeric = golden_lambda();

    PeriodGroup() = default;
    PeriodGroup(std::vector<PeriodValue> gens, double lambda)
        : generators(std::move(gens)), lambda_numeric(lambda) {
        normalize();
    }

    // drop zero and duplicate generators; inputs are allowed to carry both
    void normalize() {
        std::vector<PeriodValue> out;
        for (const auto& g : generators) {
            if (g.is_zero()) continue;
            bool dup = false;
            for (const auto& h : out)
                if (h == g) { dup = true; break; }
            if (!dup) out.push_back(g);
        }
        generators = std::move(out);
    }
};

// rank over Q of the coefficient pairs, by exact elimination
inline int period_rank(const PeriodGroup& g) {
    std::optional<PeriodValue> pivot;
    for (const auto& v : g.generators) {
        if (v.is_zero()) continue;
        if (!pivot) { pivot = v; continue; }
        // dependent iff cross determinant a1*b2 - a2*b1 vanishes
        if (!(pivot->a * v.b - v.a * pivot->b).is_zero()) return 2;
    }
    return pivot ? 1 : 0;
}

inline bool is_discrete(const PeriodGroup& g) { return period_rank(g) <= 1; }

// positive generator of a discrete nontrivial period group
inline PeriodValue cyclic_generator(const PeriodGroup& g) {
    if (!is_discrete(g)) fail(errc::not_discrete, "period group is dense");
    PeriodValue dir;
    bool have = false;
    for (const auto& v : g.generators)
        if (!v.is_zero()) { dir = v; have = true; break; }
    if (!have) fail(errc::trivial_group, "all generators are zero");
    // every generator is t_i * dir with t_i rational; the group is gcd(t_i) * dir
    Rational t;
    for (const auto& v : g.generators) {
        Rational ti = dir.a.is_zero() ? v.b / dir.b : v.a / dir.a;
        t = Rational::gcd(t, ti);
    }
    PeriodValue gen{t * dir.a, t * dir.b};
    if (gen.value(g.lambda_numeric) < 0) gen = -gen;
    return gen;
}

struct SequenceDescription {
    std::string kernel, middle, quotient;
};

// Outcome of the lattice lift: either the circle quotient of a discrete
// group, or the torus presentation of a dense one.
struct LiftResult {
    bool discrete = true;
    std::optional<PeriodValue> cyclic;
    std::optional<std::vector<PeriodValue>> lattice_basis; // coefficient vectors as (a,b)
    int torus_dimension = 0;
    SequenceDescription sequence;
};

namespace detail {

// Hermite-style Z-basis of the lattice in Q^2 spanned by the given pairs.
// Returns vectors (d1,e1) and (0,d2) scaled back by the common denominator.
inline std::vector<PeriodValue> lattice_basis_of(const std::vector<PeriodValue>& gens) {
    std::int64_t L = 1;
    for (const auto& v : gens) {
        L = std::lcm(L, v.a.den());
        L = std::lcm(L, v.b.den());
    }
    struct Row { std::int64_t x, y; };
    std::vector<Row> rows;
    for (const auto& v : gens)
        rows.push_back({v.a.num() * (L / v.a.den()), v.b.num() * (L / v.b.den())});

    // clear the first column down to a single gcd row
    std::int64_t d1 = 0, e1 = 0;
    for (bool changed = true; changed;) {
        changed = false;
        int piv = -1;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].x != 0 && (piv < 0 || std::llabs(rows[i].x) < std::llabs(rows[piv].x)))
                piv = (int)i;
        if (piv < 0) break;
        for (size_t i = 0; i < rows.size(); ++i) {
            if ((int)i == piv || rows[i].x == 0) continue;
            std::int64_t q = rows[i].x / rows[piv].x;
            rows[i].x -= q * rows[piv].x;
            rows[i].y -= q * rows[piv].y;
            if (rows[i].x != 0) changed = true;
        }
        if (!changed) {
            d1 = rows[piv].x; e1 = rows[piv].y;
            if (d1 < 0) { d1 = -d1; e1 = -e1; }
            rows.erase(rows.begin() + piv);
        }
    }
    std::int64_t d2 = 0;
    for (const auto& r : rows) d2 = std::gcd(d2, r.y < 0 ? -r.y : r.y);
    if (d2 != 0) e1 = ((e1 % d2) + d2) % d2;

    std::vector<PeriodValue> basis;
    if (d1 != 0) basis.push_back({Rational(d1, L), Rational(e1, L)});
    if (d2 != 0) basis.push_back({Rational(0), Rational(d2, L)});
    return basis;
}

} // namespace detail

inline LiftResult build_lift(const PeriodGroup& g) {
    LiftResult r;
    int rank = period_rank(g);
    if (rank <= 1) {
        r.discrete = true;
        if (rank == 1) {
            r.cyclic = cyclic_generator(g);
            r.torus_dimension = 1;
            r.sequence = {"R", "circle R/Gamma", "G(M,omega) = circle"};
        } else {
            r.torus_dimension = 0;
            r.sequence = {"R", "R (trivial period group)", "G(M,omega) = R"};
        }
        return r;
    }
    r.discrete = false;
    r.lattice_basis = detail::lattice_basis_of(g.generators);
    r.torus_dimension = rank;
    r.sequence = {"R embedded with slope lambda",
                  "torus T^" + std::to_string(rank),
                  "G(M,omega) = T^" + std::to_string(rank) + " / flow line"};
    return r;
}

// t -> (e^{2 pi i t}, e^{2 pi i lambda t}) in angle coordinates
inline TorusPoint iota_lambda(double t, double lambda) { return {t, lambda * t}; }

// exact membership of a coefficient vector in the integer span of a basis
// (basis as produced by build_lift: upper triangular)
inline bool in_integer_span(const PeriodValue& v, const std::vector<PeriodValue>& basis) {
    Rational x = v.a, y = v.b;
    for (const auto& b : basis) {
        if (!b.a.is_zero()) {
            Rational k = x / b.a;
            if (k.den() != 1) return false;
            x = x - k * b.a;
            y = y - k * b.b;
        } else if (!b.b.is_zero()) {
            Rational k = y / b.b;
            if (k.den() != 1) return false;
            y = y - k * b.b;
        }
    }
    return x.is_zero() && y.is_zero();
}

} // namespace rotalg
