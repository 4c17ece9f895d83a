#pragma once

#include "procure/core.hpp"

namespace procure::apar {

// Sharpness parameter of the allocation rule.  alpha -> 0 splits work evenly,
// alpha -> inf is winner-take-all.  Must be positive; stricter lower bounds
// (DSIC payments need alpha > 1, paid-as-bid PNE needs alpha > n/(n-1)) are
// enforced by the callers that need them.
struct AlphaParam {
    explicit AlphaParam(double a);
    double value;
};

// x_i = b_i^{-alpha} / sum_j b_j^{-alpha}, evaluated in log space so that
// large alpha or wide bid ranges cannot overflow.
Allocation allocate(const BidVector& bids, AlphaParam alpha);

// sum_i c_i x_i^{1 + 1/alpha}, the potential whose simplex minimizer is the
// alpha-PAR point.
double scaled_objective(const CostVector& costs, const Allocation& alloc, AlphaParam alpha);
double scaled_objective(std::span<const double> costs, std::span<const double> shares,
                        double alpha);

struct OptimalityReport {
    Allocation closed_form;
    Allocation grid_min;
    double max_coord_gap = 0.0;  // L-inf distance between the two points
    double closed_form_value = 0.0;
    double grid_min_value = 0.0;
};

// Cross-check that the closed form solves the constrained minimization: runs
// the simplex-grid oracle on the scaled objective and reports the gap.
OptimalityReport verify_optimality(const CostVector& costs, AlphaParam alpha,
                                   double resolution);

} // namespace procure::apar
