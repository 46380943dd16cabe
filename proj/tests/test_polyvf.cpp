#include "test_util.hpp"

#include <doctest.h>

using namespace equinorm;
using namespace equinorm::testutil;

namespace {

PolyVectorField psi(int n, int k) {
    // r^{2k} x, built by brute force from the multinomial expansion.
    PolyVectorField id = PolyVectorField::identity(n);
    PolyVectorField acc = id;
    for (int rep = 0; rep < k; ++rep) {
        PolyVectorField next(n);
        for (const auto& [key, c] : acc.terms())
            for (int j = 0; j < n; ++j) {
                Monomial m = key.mono;
                m.exps[static_cast<std::size_t>(j)] += 2;
                next.add_term(key.comp, std::move(m), c);
            }
        acc = next;
    }
    return acc;
}

} // namespace

TEST_CASE("bracket matches hand expansions") {
    // n=1: {x d_x, x^2 d_x} = x^2 d_x
    PolyVectorField f(1), g(1);
    f.add_term(0, mono({1}), Rat(1));
    g.add_term(0, mono({2}), Rat(1));
    const PolyVectorField fg = bracket(f, g);
    CHECK(fg == g);

    // antisymmetry on the same pair
    CHECK((bracket(g, f) + fg).is_zero());
    CHECK(bracket(f, f).is_zero());
}

TEST_CASE("bracket of radial basis fields") {
    // {r^2 x, r^4 x} = 2 r^6 x in n=2
    const PolyVectorField p1 = psi(2, 1);
    const PolyVectorField p2 = psi(2, 2);
    CHECK(bracket(p1, p2) == psi(2, 3).scaled(Rat(2)));
}

TEST_CASE("bracket dimension mismatch") {
    CHECK_THROWS_AS(bracket(PolyVectorField::identity(2), PolyVectorField::identity(3)), DimensionError);
}

TEST_CASE("grade decomposition") {
    CHECK(grade_decompose(PolyVectorField(2)).empty());

    // A x + r^2 x splits into the grades of degrees 1 and 3.
    PolyVectorField f = PolyVectorField::identity(2) + psi(2, 1);
    const auto grades = grade_decompose(f);
    REQUIRE(grades.size() == 2);
    CHECK(grades.at(0) == PolyVectorField::identity(2));
    CHECK(grades.at(2) == psi(2, 1));

    // linear + cubic + quintic: alpha_0 = 1 + r^2, alpha_1 = r^2 against J.
    PolyVectorField j2 = PolyVectorField::linear(2, {Rat(0), Rat(-1), Rat(1), Rat(0)});
    PolyVectorField mixed = PolyVectorField::identity(2) + psi(2, 1) + psi(2, 2);
    const auto g3 = grade_decompose(mixed);
    REQUIRE(g3.size() == 3);
    CHECK(g3.count(0) == 1);
    CHECK(g3.count(2) == 1);
    CHECK(g3.count(4) == 1);
    PolyVectorField sum(2);
    for (const auto& [k, piece] : g3) {
        CHECK(piece.min_degree() == k + 1);
        CHECK(piece.max_degree() == k + 1);
        sum += piece;
    }
    CHECK(sum == mixed);
    (void)j2;
}

TEST_CASE("evaluate") {
    const PolyVectorField zero(3);
    const double pt3[] = {0.3, -1.0, 2.0};
    for (double v : evaluate(zero, pt3))
        CHECK(v == 0.0);

    PolyVectorField idf = PolyVectorField::identity(1);
    const double two[] = {2.0};
    CHECK(evaluate(idf, two)[0] == doctest::Approx(2.0));

    const PolyVectorField r2x = psi(2, 1);
    const double pt[] = {1.0, 1.0};
    const auto val = evaluate(r2x, pt);
    CHECK(val[0] == doctest::Approx(2.0));
    CHECK(val[1] == doctest::Approx(2.0));

    CHECK_THROWS_AS(evaluate(r2x, pt3), DimensionError);
}

TEST_CASE("linear combinations") {
    std::mt19937 rng(7);
    const PolyVectorField f = random_field(rng, 3, 3);
    CHECK((f + f.scaled(Rat(-1))).is_zero());

    PolyVectorField x1(1);
    x1.add_term(0, mono({1}), Rat(1));
    CHECK(x1.scaled(Rat(2)).coeff(0, mono({1})) == Rat(2));
}

TEST_CASE("bracket axioms on random fields") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const PolyVectorField f = random_field(rng, n, 3);
        const PolyVectorField g = random_field(rng, n, 3);
        const PolyVectorField h = random_field(rng, n, 3);

        CHECK((bracket(f, g) + bracket(g, f)).is_zero());

        const Rat a = random_rat(rng), b = random_rat(rng);
        const PolyVectorField lhs = bracket(f.scaled(a) + g.scaled(b), h);
        const PolyVectorField rhs = bracket(f, h).scaled(a) + bracket(g, h).scaled(b);
        CHECK(lhs == rhs);

        const PolyVectorField jac =
            bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("bracket respects the grading") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto gf = grade_decompose(random_field(rng, n, 4, 8));
        const auto gg = grade_decompose(random_field(rng, n, 4, 8));
        for (const auto& [k, fk] : gf)
            for (const auto& [m, gm] : gg) {
                const PolyVectorField b = bracket(fk, gm);
                if (b.is_zero())
                    continue;
                CHECK(b.min_degree() == k + m + 1);
                CHECK(b.max_degree() == k + m + 1);
            }
    }
}

TEST_CASE("grade pieces sum back to the input") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const PolyVectorField f = random_field(rng, 4, 4, 10);
        PolyVectorField sum(4);
        for (const auto& [k, piece] : grade_decompose(f))
            sum += piece;
        CHECK(sum == f);
    }
}

TEST_CASE("flow map and substitution") {
    // h = r^2 x in n=1 is x^3 d_x; its time-1 flow is x/sqrt(1-2x^2).
    PolyVectorField h(1);
    h.add_term(0, mono({3}), Rat(1));
    const PolyVectorField theta = flow_map(h, 7);
    // Series: x + x^3 + 3/2 x^5 + 5/2 x^7.
    CHECK(theta.coeff(0, mono({1})) == Rat(1));
    CHECK(theta.coeff(0, mono({3})) == Rat(1));
    CHECK(theta.coeff(0, mono({5})) == Rat(3, 2));
    CHECK(theta.coeff(0, mono({7})) == Rat(5, 2));

    // Composition with the identity is the identity.
    const PolyVectorField idm = PolyVectorField::identity(1);
    CHECK(substitute(theta, idm, 7) == theta);
    CHECK(substitute(idm, theta, 7) == theta);
}
