#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rotalg/periods.hpp"

using namespace rotalg;

namespace {

PeriodValue pv(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd) {
    return PeriodValue{Rational(an, ad), Rational(bn, bd)};
}

PeriodGroup group(std::vector<PeriodValue> gens) {
    return PeriodGroup{std::move(gens), golden_lambda()};
}

// Brute-force discreteness oracle: enumerate integer combinations of the
// generators with coefficients in [-20,20] (pairwise; groups here have at
// most 3 generators, combined pair by pair). Discrete iff every combination
// is an exact integer multiple of the minimal positive one.
bool discrete_oracle(const PeriodGroup& g) {
    std::vector<PeriodValue> vals;
    for (const auto& v : g.generators)
        if (!v.is_zero()) vals.push_back(v);
    if (vals.empty()) return true;
    // enumerate combinations of up to the first three generators
    std::vector<PeriodValue> combos;
    const int R = vals.size() > 2 ? 6 : 20;
    auto add = [&](const PeriodValue& v) {
        if (!v.is_zero()) combos.push_back(v);
    };
    for (int c0 = -R; c0 <= R; ++c0)
        for (int c1 = -R; c1 <= (vals.size() > 1 ? R : -R); ++c1)
            for (int c2 = -R; c2 <= (vals.size() > 2 ? R : -R); ++c2) {
                Rational a = Rational(c0) * vals[0].a;
                Rational b = Rational(c0) * vals[0].b;
                if (vals.size() > 1) { a = a + Rational(c1) * vals[1].a; b = b + Rational(c1) * vals[1].b; }
                if (vals.size() > 2) { a = a + Rational(c2) * vals[2].a; b = b + Rational(c2) * vals[2].b; }
                add(PeriodValue{a, b});
            }
    if (combos.empty()) return true;
    // minimal positive element by numeric value
    double lam = g.lambda_numeric;
    const PeriodValue* minp = nullptr;
    for (const auto& v : combos) {
        double x = v.value(lam);
        if (x > 0 && (!minp || x < minp->value(lam))) minp = &v;
    }
    REQUIRE(minp != nullptr);
    // discrete iff every combination is an integer multiple of *minp
    for (const auto& v : combos) {
        // v = k * minp requires exact rational ratio with denominator 1
        Rational k = minp->a.is_zero() ? v.b / minp->b : v.a / minp->a;
        if (k.den() != 1) return false;
        if (!(v.a == k * minp->a && v.b == k * minp->b)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("rational arithmetic basics") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational::gcd(Rational(1, 2), Rational(3, 2)) == Rational(1, 2));
    CHECK(Rational::from_string("-7/3") == Rational(-7, 3));
    CHECK_THROWS_AS(Rational(1, 0), error);
    CHECK_THROWS_AS(Rational::from_string("x"), error);
}

TEST_CASE("is_discrete on the reference examples") {
    CHECK(is_discrete(group({pv(1, 1, 0, 1)})));                    // {1}
    CHECK_FALSE(is_discrete(group({pv(1, 1, 0, 1), pv(0, 1, 1, 1)}))); // {1, lambda}
    CHECK(is_discrete(group({})));                                   // trivial
    CHECK(is_discrete(group({pv(1, 2, 0, 1), pv(3, 2, 0, 1)})));     // {1/2, 3/2}
    CHECK(discrete_oracle(group({pv(1, 2, 0, 1), pv(3, 2, 0, 1)})));
}

TEST_CASE("cyclic generator") {
    CHECK(cyclic_generator(group({pv(1, 2, 0, 1), pv(3, 2, 0, 1)})) == pv(1, 2, 0, 1));
    CHECK(cyclic_generator(group({pv(1, 1, 0, 1)})) == pv(1, 1, 0, 1));
    CHECK(cyclic_generator(group({pv(0, 1, 2, 1), pv(0, 1, 3, 1)})) == pv(0, 1, 1, 1));
    CHECK_THROWS_AS(cyclic_generator(group({pv(1, 1, 0, 1), pv(0, 1, 1, 1)})), error);
    CHECK_THROWS_AS(cyclic_generator(group({})), error);
    // generator divides every generator exactly
    auto g = group({pv(3, 4, 0, 1), pv(5, 6, 0, 1), pv(7, 2, 0, 1)});
    auto c = cyclic_generator(g);
    for (const auto& v : g.generators) {
        Rational k = v.a / c.a;
        CHECK(k.den() == 1);
    }
}

TEST_CASE("build_lift") {
    SUBCASE("dense rank 2: the Z + lambda Z lattice") {
        auto r = build_lift(group({pv(1, 1, 0, 1), pv(0, 1, 1, 1)}));
        CHECK_FALSE(r.discrete);
        CHECK(r.torus_dimension == 2);
        REQUIRE(r.lattice_basis.has_value());
        REQUIRE(r.lattice_basis->size() == 2);
        CHECK((*r.lattice_basis)[0] == pv(1, 1, 0, 1));
        CHECK((*r.lattice_basis)[1] == pv(0, 1, 1, 1));
    }
    SUBCASE("discrete: circle case") {
        auto r = build_lift(group({pv(1, 1, 0, 1)}));
        CHECK(r.discrete);
        CHECK(r.torus_dimension == 1);
        CHECK(r.cyclic.has_value());
    }
    SUBCASE("dependent third generator") {
        auto r = build_lift(group({pv(1, 1, 0, 1), pv(0, 1, 1, 1), pv(1, 1, 1, 1)}));
        CHECK_FALSE(r.discrete);
        CHECK(r.torus_dimension == 2);
        // every generator lies in the integer span of the basis
        for (const auto& v : std::vector<PeriodValue>{pv(1, 1, 0, 1), pv(0, 1, 1, 1), pv(1, 1, 1, 1)})
            CHECK(in_integer_span(v, *r.lattice_basis));
    }
    SUBCASE("integer span holds for non-unimodular inputs") {
        auto r = build_lift(group({pv(2, 1, 0, 1), pv(3, 1, 0, 1), pv(0, 1, 1, 1)}));
        REQUIRE(r.lattice_basis.has_value());
        for (const auto& v : std::vector<PeriodValue>{pv(2, 1, 0, 1), pv(3, 1, 0, 1), pv(0, 1, 1, 1)})
            CHECK(in_integer_span(v, *r.lattice_basis));
    }
}

TEST_CASE("iota_lambda") {
    double lam = golden_lambda();
    auto p0 = iota_lambda(0.0, lam);
    CHECK(p0.x == doctest::Approx(0.0));
    CHECK(p0.y == doctest::Approx(0.0));
    auto p1 = iota_lambda(1.0, lam);
    CHECK(p1.x == doctest::Approx(0.0));
    CHECK(p1.y == doctest::Approx(lam));
    auto p2 = iota_lambda(1.0 / lam, lam);
    CHECK(p2.x == doctest::Approx(mod1(1.0 / lam)));
    CHECK(p2.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("is_discrete invariances (property)") {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PeriodValue> gens;
        int n = 2 + (int)(rng() % 2);
        for (int i = 0; i < n; ++i)
            gens.push_back(pv(num(rng), den(rng), num(rng), den(rng)));
        auto g = group(gens);
        bool base = is_discrete(g);

        // permutation
        auto perm = gens;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(is_discrete(group(perm)) == base);

        // negation of one generator
        auto neg = gens;
        size_t which = rng() % neg.size();
        neg[which] = -neg[which];
        CHECK(is_discrete(group(neg)) == base);

        // elementary replacement (x, y) -> (x, y + k x)
        if (gens.size() >= 2) {
            auto rep = gens;
            int k = (int)(rng() % 7) - 3;
            rep[1] = PeriodValue{rep[1].a + Rational(k) * rep[0].a,
                                 rep[1].b + Rational(k) * rep[0].b};
            CHECK(is_discrete(group(rep)) == base);
        }
    }
}

TEST_CASE("rank decision agrees with enumeration oracle on random sets") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    int done = 0;
    while (done < 50) {
        bool make_rank1 = done % 2 == 0;
        std::vector<PeriodValue> gens;
        PeriodValue base = pv(num(rng), den(rng), num(rng), den(rng));
        if (base.is_zero()) continue;
        if (make_rank1) {
            for (int i = 0; i < 2; ++i) {
                Rational t(num(rng), den(rng));
                gens.push_back(PeriodValue{t * base.a, t * base.b});
            }
        } else {
            gens.push_back(base);
            PeriodValue other = pv(num(rng), den(rng), num(rng), den(rng));
            if ((base.a * other.b - other.a * base.b).is_zero()) continue;
            gens.push_back(other);
        }
        auto g = group(gens);
        if (g.generators.empty()) continue;
        CHECK(is_discrete(g) == discrete_oracle(g));
        ++done;
    }
}
