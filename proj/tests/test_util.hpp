#pragma once

#include "equinorm/equivariant.hpp"

#include <memory>
#include <random>

namespace equinorm::testutil {

inline Monomial mono(std::vector<int> exps) {
    return Monomial{std::move(exps)};
}

inline Rat random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    return Rat(num(rng), den(rng));
}

inline Rat random_nonzero_rat(std::mt19937& rng) {
    Rat c;
    do {
        c = random_rat(rng);
    } while (c == 0);
    return c;
}

inline PolyVectorField random_field(std::mt19937& rng, int dim, int max_degree, int terms = 6) {
    PolyVectorField f(dim);
    std::uniform_int_distribution<int> comp(0, dim - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (int t = 0; t < terms; ++t) {
        const int d = deg(rng);
        std::vector<int> exps(static_cast<std::size_t>(dim), 0);
        std::uniform_int_distribution<int> pick(0, dim - 1);
        for (int i = 0; i < d; ++i)
            exps[static_cast<std::size_t>(pick(rng))] += 1;
        f.add_term(comp(rng), Monomial{exps}, random_rat(rng));
    }
    return f;
}

inline std::shared_ptr<const CentralizerBasis> basis_for(const std::string& group) {
    return std::make_shared<const CentralizerBasis>(compute_centralizer(builtin_rep(group)));
}

/// Random quasilinear field with orders <= max_k.
inline QuasilinearField random_qf(std::mt19937& rng,
                                  const std::shared_ptr<const CentralizerBasis>& basis, int max_k) {
    QuasilinearField q(basis);
    std::uniform_int_distribution<int> pd(0, basis->s());
    std::uniform_int_distribution<int> kd(0, max_k);
    for (int t = 0; t < 2 * (basis->s() + 1); ++t)
        q.add_coeff(pd(rng), kd(rng), random_rat(rng));
    return q;
}

} // namespace equinorm::testutil
