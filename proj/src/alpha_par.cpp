#include "procure/alpha_par.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "procure/numerics.hpp"

namespace procure::apar {

AlphaParam::AlphaParam(double a) : value(a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("alpha must be positive, got " + std::to_string(a));
}

Allocation allocate(const BidVector& bids, AlphaParam alpha) {
    const auto& b = bids.bids();
    const std::size_t n = b.size();
    // log-space weights, shifted by the max so the largest weight is exp(0)
    std::vector<double> logw(n);
    double wmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        logw[i] = -alpha.value * std::log(b[i]);
        wmax = std::max(wmax, logw[i]);
    }
    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(logw[i] - wmax);
        sum += w[i];
    }
    for (double& wi : w) wi /= sum;
    return Allocation(std::move(w));
}

double scaled_objective(std::span<const double> costs, std::span<const double> shares,
                        double alpha) {
    if (costs.size() != shares.size())
        throw LengthMismatch("scaled_objective: size mismatch");
    const double expo = 1.0 + 1.0 / alpha;
    double v = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i)
        v += costs[i] * std::pow(shares[i], expo);
    return v;
}

double scaled_objective(const CostVector& costs, const Allocation& alloc, AlphaParam alpha) {
    return scaled_objective(std::span<const double>(costs.costs()),
                            std::span<const double>(alloc.shares()), alpha.value);
}

OptimalityReport verify_optimality(const CostVector& costs, AlphaParam alpha,
                                   double resolution) {
    Allocation closed = allocate(BidVector(costs.costs()), alpha);
    const auto& c = costs.costs();
    const double a = alpha.value;
    auto obj = [&c, a](std::span<const double> x) { return scaled_objective(c, x, a); };
    auto grid = numerics::minimize_on_simplex_grid(obj, static_cast<int>(c.size()), resolution);

    double gap = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        gap = std::max(gap, std::abs(closed[i] - grid.point[i]));

    OptimalityReport rep{Allocation(closed.shares()), Allocation(grid.point), gap,
                         scaled_objective(costs, closed, alpha), grid.value};
    return rep;
}

} // namespace procure::apar
