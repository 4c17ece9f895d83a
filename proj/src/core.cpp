#include "procure/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace procure {

CostVector::CostVector(std::vector<double> costs) : costs_(std::move(costs)) {
    if (costs_.size() < 2)
        throw DomainError("cost vector needs at least two agents, got " +
                          std::to_string(costs_.size()));
    for (double c : costs_)
        if (!(c > 0.0) || !std::isfinite(c))
            throw DomainError("nonpositive cost " + std::to_string(c));
}

double CostVector::min() const {
    return *std::min_element(costs_.begin(), costs_.end());
}

BidVector::BidVector(std::vector<double> bids) : bids_(std::move(bids)) {
    if (bids_.empty()) throw DomainError("empty bid vector");
    for (double b : bids_)
        if (!(b > 0.0) || !std::isfinite(b))
            throw NonPositiveBid("nonpositive bid " + std::to_string(b));
}

Allocation::Allocation(std::vector<double> shares) : shares_(std::move(shares)) {
    if (shares_.empty()) throw DomainError("empty allocation");
    double sum = 0.0;
    for (double x : shares_) {
        if (x < 0.0 || !std::isfinite(x))
            throw DomainError("negative allocation share " + std::to_string(x));
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError("allocation sums to " + std::to_string(sum) + ", not 1");
}

double social_cost(std::span<const double> costs, std::span<const double> shares) {
    if (costs.size() != shares.size())
        throw LengthMismatch("social_cost: " + std::to_string(costs.size()) + " costs vs " +
                             std::to_string(shares.size()) + " shares");
    double sc = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) sc += costs[i] * shares[i];
    return sc;
}

double social_cost(const CostVector& costs, const Allocation& alloc) {
    return social_cost(std::span<const double>(costs.costs()),
                       std::span<const double>(alloc.shares()));
}

double optimal_social_cost(const CostVector& costs) { return costs.min(); }

double price_of_anarchy(const CostVector& costs, const Allocation& alloc) {
    return social_cost(costs, alloc) / optimal_social_cost(costs);
}

} // namespace procure
