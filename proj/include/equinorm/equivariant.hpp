#pragma once

#include "equinorm/liealg.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace equinorm {

/// One element of the equivariant field basis: r^{2k} x (the identity
/// channel, p = 0) or r^{2k} K_p x (p >= 1).
struct BasisElement {
    int p = 0;
    int k = 0;

    bool is_identity_channel() const { return p == 0; }
    auto operator<=>(const BasisElement&) const = default;
};

/// Equivariant field written as sum_{p,k} a_{p,k} r^{2k} K_p x.
///
/// Coefficients are keyed by (channel p, power k of r^2); zero entries are
/// never stored. The basis is shared and immutable.
class QuasilinearField {
public:
    QuasilinearField() = default;
    explicit QuasilinearField(std::shared_ptr<const CentralizerBasis> basis)
        : basis_(std::move(basis)) {}

    const std::shared_ptr<const CentralizerBasis>& basis_ptr() const { return basis_; }
    const CentralizerBasis& basis() const { return *basis_; }

    const std::map<std::pair<int, int>, Rat>& coeffs() const { return coeffs_; }

    Rat coeff(int p, int k) const;
    void add_coeff(int p, int k, const Rat& c);
    void set_coeff(int p, int k, const Rat& c);

    bool is_zero() const { return coeffs_.empty(); }

    /// Largest power of r^2 present; -1 for the zero field.
    int max_order() const;

    QuasilinearField truncated(int max_k) const;
    QuasilinearField scaled(const Rat& c) const;
    QuasilinearField& operator+=(const QuasilinearField& other);
    friend QuasilinearField operator+(QuasilinearField a, const QuasilinearField& b) { return a += b; }

    /// Coefficient vector of the linear part, beta_p = a_{p,0}.
    std::vector<Rat> linear_coeffs() const;

    bool same_coeffs(const QuasilinearField& other) const { return coeffs_ == other.coeffs_; }

private:
    std::shared_ptr<const CentralizerBasis> basis_;
    std::map<std::pair<int, int>, Rat> coeffs_;
};

/// Polynomial expansion of one basis element r^{2k} K_p x.
PolyVectorField expand_element(const CentralizerBasis& basis, int p, int k);

/// Polynomial expansion of a quasilinear field.
PolyVectorField expand(const QuasilinearField& q);

/// Expresses f in the quasilinear module of the basis, grade by grade.
/// Throws NotQuasilinearError (with the unmatched residual) when f is not in
/// the module.
QuasilinearField decompose(const PolyVectorField& f, std::shared_ptr<const CentralizerBasis> basis);

/// Bracket of two basis elements expanded over basis elements, using the
/// closed-form constants for the identity channel and the cached phi_phi
/// table for the K_p channels.
std::vector<std::pair<Rat, BasisElement>> structure_bracket(const BasisElement& e1,
                                                            const BasisElement& e2,
                                                            const CentralizerBasis& basis);

/// Bracket in coefficient space, same result as expanding, bracketing with
/// the polynomial bracket and decomposing again.
QuasilinearField bracket_qf(const QuasilinearField& a, const QuasilinearField& b);

/// Truncated Lie-series push-forward exp(ad_h) f in coefficient space.
/// h must have no order-0 part.
QuasilinearField exp_ad_qf(const QuasilinearField& h, const QuasilinearField& f, int max_k);

/// Generalized potentials: H_p(rho) = sum_k a_{p,k} rho^{k+1} / (2k+2),
/// one polynomial (exponent -> coefficient) per channel, so that the field
/// is sum_p K_p grad H_p(|x|^2).
std::vector<std::map<int, Rat>> potentials(const QuasilinearField& q);

} // namespace equinorm
