#pragma once

#include "equinorm/normalform.hpp"

#include <optional>
#include <vector>

namespace equinorm {

/// Numeric probe of the conjugacy between a system and its normal form.
struct FlowCheckReport {
    std::vector<double> radii;
    std::vector<double> errors;  // sup trajectory discrepancy per radius
    std::vector<bool> blowup;    // excluded from the order fit
    std::optional<double> fitted_order;
    double time_horizon = 1.0;
    int steps = 2048;
};

/// Composes the time-1 flows of the recorded generators into the polynomial
/// change of coordinates x = Theta(w), truncated at map_degree.
PolyVectorField build_transform_map(const std::vector<std::pair<int, QuasilinearField>>& generators,
                                    int dim, int map_degree);

/// Classical fixed-step RK4 with step T/steps.
std::vector<double> rk4_integrate(const PolyVectorField& f, std::vector<double> x, double T, int steps);

/// Integrates the original field and the normal form from matched initial
/// conditions of the given norms and records the sup discrepancy of the
/// mapped trajectories; fits the error order over the radii. Initial
/// directions: the diagonal unit vector plus three seeded random ones.
FlowCheckReport flow_check(const PolyVectorField& original, const NormalFormResult& result,
                           const std::vector<double>& radii, double time_horizon);

} // namespace equinorm
