#pragma once

#include "equinorm/normalform.hpp"

#include <optional>
#include <vector>

namespace equinorm {

enum class RenormCase {
    A0,           // real type, zero linear part
    B0_MU_LT_NU,  // complex type, zero linear part, mu < nu
    B0_NU_LT_MU,
    B0_MU_EQ_NU,
    C0_MU_MIN,    // quaternionic, zero linear part, mu <= every nu_p
    C0_NU_MIN,    // quaternionic, zero linear part, some nu_p < mu
    B3_LEMMA2,    // further normalization of a B3 normal form
    C3_LEMMA2,    // further normalization of a C3 normal form
};

std::string to_string(RenormCase c);

/// Leading radial orders: smallest k >= 1 with a_{p,k} != 0 per channel.
/// nullopt encodes an identically vanishing series.
struct LeadingOrders {
    std::optional<int> mu;               // identity channel
    std::vector<std::optional<int>> nu;  // channel p = 1..s
};

/// Throws ZeroFieldError when the field has no terms of order >= 1 at all.
LeadingOrders leading_orders(const QuasilinearField& q);

/// One nonzero slot of a renormalized form. For the Lemma-2 cases channel 1
/// refers to the invariant rotation direction recorded in j_direction.
struct SlotValue {
    int p = 0;
    int k = 0;
    Rat value;
};

struct RenormalizedForm {
    RenormCase case_tag = RenormCase::A0;
    int mu = 0;
    std::vector<std::optional<int>> nu;
    int order = 0;

    /// Surviving field in the original basis (linear part included on the
    /// Lemma-2 paths).
    QuasilinearField form;
    /// Elimination exponentials in application order, original basis.
    std::vector<QuasilinearField> generators;
    /// Nonzero slots of the form, in channel terms (see j_direction).
    std::vector<SlotValue> survivors;
    /// For the Lemma-2 cases: coefficients of the K_p making up the rotation
    /// direction J; channel 1 of the survivor table means r^{2k} J x.
    std::optional<std::vector<Rat>> j_direction;

    /// Slots the recursion was required to clear but could not within its
    /// pass budget (possible only in the mixed quaternionic case).
    std::vector<std::pair<int, int>> unreduced;
    bool converged = true;
};

/// Recursive elimination for a field with zero linear part, driven by the
/// leading radial term. Throws WrongCaseError on a nonzero linear part and
/// IneffectiveError when the identity-channel series vanishes.
RenormalizedForm renormalize_zero_linear(const QuasilinearField& q, int order);

/// Further normalization of a B3 or C3 normal form: reduces the identity
/// channel to two terms and caps the rotation channel at order mu.
/// Throws WrongCaseError for other cases and IneffectiveError when the
/// identity channel vanishes through the truncation order.
RenormalizedForm renormalize_lemma2(const NormalFormResult& nfr, int order);

} // namespace equinorm
