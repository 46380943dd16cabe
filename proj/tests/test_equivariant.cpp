#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace equinorm;
using namespace equinorm::testutil;

TEST_CASE("expand basics") {
    const auto so2 = basis_for("so2");

    QuasilinearField idq(so2);
    idq.set_coeff(0, 0, Rat(1));
    CHECK(expand(idq) == PolyVectorField::identity(2));

    // r^2 J x = ((x^2+y^2)(-y), (x^2+y^2) x)
    QuasilinearField q(so2);
    q.set_coeff(1, 1, Rat(1));
    const PolyVectorField f = expand(q);
    const double pt[] = {1.0, 0.0};
    const auto val = evaluate(f, pt);
    CHECK(val[0] == doctest::Approx(0.0));
    CHECK(val[1] == doctest::Approx(1.0));
    CHECK(f.coeff(0, mono({2, 1})) == Rat(-1));
    CHECK(f.coeff(0, mono({0, 3})) == Rat(-1));
    CHECK(f.coeff(1, mono({3, 0})) == Rat(1));
    CHECK(f.coeff(1, mono({1, 2})) == Rat(1));

    // su2 channel 2 at order 0 is the second commutant unit itself.
    const auto su2 = basis_for("su2");
    QuasilinearField k2(su2);
    k2.set_coeff(2, 0, Rat(1));
    CHECK(expand(k2) == linear_field(su2->K[2]));
}

TEST_CASE("decompose round trips") {
    const auto so2 = basis_for("so2");

    CHECK(decompose(PolyVectorField(2), so2).is_zero());

    // 3x + r^2 J x reads off directly.
    QuasilinearField q(so2);
    q.set_coeff(0, 0, Rat(3));
    q.set_coeff(1, 1, Rat(1));
    const QuasilinearField back = decompose(expand(q), so2);
    CHECK(back.same_coeffs(q));

    std::mt19937 rng(411);
    const auto su2 = basis_for("su2");
    for (int trial = 0; trial < 8; ++trial) {
        const QuasilinearField r = random_qf(rng, su2, 3);
        CHECK(decompose(expand(r), su2).same_coeffs(r));
    }
}

TEST_CASE("decompose rejects fields outside the module") {
    const auto so3 = basis_for("so3");
    PolyVectorField bad(3);
    bad.add_term(0, mono({3, 0, 0}), Rat(1));
    CHECK_THROWS_AS(decompose(bad, so3), NotQuasilinearError);
    try {
        decompose(bad, so3);
    } catch (const NotQuasilinearError& err) {
        CHECK_FALSE(err.residual.is_zero());
    }

    // Even-degree pieces can never be quasilinear.
    PolyVectorField quad(3);
    quad.add_term(0, mono({1, 1, 0}), Rat(1));
    CHECK_THROWS_AS(decompose(quad, so3), NotQuasilinearError);
}

TEST_CASE("sum of basis elements decomposes back to the same pair") {
    const auto so2 = basis_for("so2");
    QuasilinearField q(so2);
    q.set_coeff(0, 1, Rat(1)); // r^2 x
    q.set_coeff(1, 1, Rat(1)); // r^2 J x
    CHECK(decompose(expand(q), so2).same_coeffs(q));
}

TEST_CASE("structure constants for the identity channel") {
    const auto so2 = basis_for("so2");

    auto sb = structure_bracket(BasisElement{0, 2}, BasisElement{0, 2}, *so2);
    CHECK(sb.empty()); // 2(m-k) = 0

    sb = structure_bracket(BasisElement{0, 1}, BasisElement{1, 2}, *so2);
    REQUIRE(sb.size() == 1);
    CHECK(sb[0].first == Rat(4)); // 2m = 4
    CHECK(sb[0].second == BasisElement{1, 3});
}

TEST_CASE("phi-phi table matches the brute-force bracket") {
    const auto su2 = basis_for("su2");
    // For this commutant the cached table must realize
    // {Phi^p_k, Phi^q_m} = -2 eps_{pqs} Phi^s_{k+m}, with no identity part.
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            const auto& row = su2->phi_phi[static_cast<std::size_t>(p) - 1][static_cast<std::size_t>(q) - 1];
            CHECK(row[0] == 0);
            for (int s = 1; s <= 3; ++s)
                CHECK(row[static_cast<std::size_t>(s)] == Rat(-2 * levi_civita(p, q, s)));
        }
}

TEST_CASE("structure brackets agree with the polynomial oracle") {
    for (const char* name : {"so2", "so3", "su2"}) {
        const auto basis = basis_for(name);
        std::vector<BasisElement> elems;
        for (int p = 0; p <= basis->s(); ++p)
            for (int k = 0; k <= 4; ++k)
                elems.push_back(BasisElement{p, k});
        for (const BasisElement& e1 : elems)
            for (const BasisElement& e2 : elems) {
                QuasilinearField viatable(basis);
                for (const auto& [c, e] : structure_bracket(e1, e2, *basis))
                    viatable.add_coeff(e.p, e.k, c);
                const PolyVectorField brute =
                    bracket(expand_element(*basis, e1.p, e1.k), expand_element(*basis, e2.p, e2.k));
                CHECK(expand(viatable) == brute);
            }
    }
}

TEST_CASE("coefficient-space bracket and push-forward match the oracle") {
    std::mt19937 rng(8);
    for (const char* name : {"so2", "su2"}) {
        const auto basis = basis_for(name);
        for (int trial = 0; trial < 4; ++trial) {
            const QuasilinearField a = random_qf(rng, basis, 3);
            const QuasilinearField b = random_qf(rng, basis, 3);
            CHECK(expand(bracket_qf(a, b)) == bracket(expand(a), expand(b)));

            // Push-forward: strip the linear part of a to get a generator.
            QuasilinearField h(basis);
            for (const auto& [key, c] : a.coeffs())
                if (key.second >= 1)
                    h.add_coeff(key.first, key.second, c);
            const int order = 4;
            const QuasilinearField pushed = exp_ad_qf(h, b.truncated(order), order);
            const PolyVectorField oracle =
                exp_ad_poly(expand(h), expand(b.truncated(order)), 2 * order + 1);
            CHECK(expand(pushed) == oracle.truncated_degree(2 * order + 1));
        }
    }
}

TEST_CASE("potentials") {
    const auto so3 = basis_for("so3");

    QuasilinearField lin(so3);
    lin.set_coeff(0, 0, Rat(5));
    auto pots = potentials(lin);
    REQUIRE(pots.size() == 1);
    CHECK(pots[0].at(1) == Rat(5, 2)); // (beta0/2) rho

    CHECK(potentials(QuasilinearField(so3))[0].empty());

    // Two radial terms at orders mu and 2 mu.
    const int mu = 2;
    QuasilinearField q(so3);
    q.set_coeff(0, mu, Rat(3));
    q.set_coeff(0, 2 * mu, Rat(7));
    pots = potentials(q);
    CHECK(pots[0].at(mu + 1) == Rat(3) / Rat(2 * mu + 2));
    CHECK(pots[0].at(2 * mu + 1) == Rat(7) / Rat(4 * mu + 2));
}

TEST_CASE("gradient property at random points") {
    std::mt19937 rng(12);
    const auto su2 = basis_for("su2");
    const QuasilinearField q = random_qf(rng, su2, 3);
    const PolyVectorField f = expand(q);
    const auto pots = potentials(q);

    std::uniform_real_distribution<double> coord(-0.8, 0.8);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> x(4);
        for (double& c : x)
            c = coord(rng);
        double r2 = 0;
        for (double c : x)
            r2 += c * c;

        // sum_p K_p * (2 H_p'(r^2)) x, evaluated numerically.
        std::vector<double> expect(4, 0.0);
        for (int p = 0; p <= 3; ++p) {
            double dpot = 0.0;
            for (const auto& [expnt, c] : pots[static_cast<std::size_t>(p)])
                dpot += rat_to_double(c) * expnt * std::pow(r2, expnt - 1);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    expect[static_cast<std::size_t>(i)] +=
                        rat_to_double(su2->K[static_cast<std::size_t>(p)].at(i, j)) * 2.0 * dpot *
                        x[static_cast<std::size_t>(j)];
        }
        const auto got = evaluate(f, x);
        for (int i = 0; i < 4; ++i) {
            const double scale = std::max(1.0, std::abs(expect[static_cast<std::size_t>(i)]));
            CHECK(std::abs(got[static_cast<std::size_t>(i)] - expect[static_cast<std::size_t>(i)]) / scale <
                  1e-12);
        }
    }
}
