#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "procure/errors.hpp"

namespace procure {

// Private production costs, one per agent.  n >= 2, all entries positive.
class CostVector {
  public:
    explicit CostVector(std::vector<double> costs);

    const std::vector<double>& costs() const { return costs_; }
    double operator[](std::size_t i) const { return costs_[i]; }
    std::size_t size() const { return costs_.size(); }
    double min() const;

  private:
    std::vector<double> costs_;
};

// Submitted bids.  All entries positive; length checks against the agent set
// happen at the operations that combine bids with costs.
class BidVector {
  public:
    explicit BidVector(std::vector<double> bids);

    const std::vector<double>& bids() const { return bids_; }
    double operator[](std::size_t i) const { return bids_[i]; }
    std::size_t size() const { return bids_.size(); }

  private:
    std::vector<double> bids_;
};

// A division of the unit of work: entries >= 0 summing to 1 within 1e-12.
class Allocation {
  public:
    explicit Allocation(std::vector<double> shares);

    const std::vector<double>& shares() const { return shares_; }
    double operator[](std::size_t i) const { return shares_[i]; }
    std::size_t size() const { return shares_.size(); }

  private:
    std::vector<double> shares_;
};

// Full result of running a mechanism: who does what, who is paid what, and
// what it cost.  utilities[i] = payments[i] - costs[i] * allocation[i].
struct Outcome {
    Allocation allocation;
    std::vector<double> payments;
    std::vector<double> utilities;
    double social_cost = 0.0;
};

double social_cost(const CostVector& costs, const Allocation& alloc);
double social_cost(std::span<const double> costs, std::span<const double> shares);

// min_i c_i: put all the work on a cheapest agent.
double optimal_social_cost(const CostVector& costs);

// realized social cost divided by the optimum; >= 1 for any allocation.
double price_of_anarchy(const CostVector& costs, const Allocation& alloc);

} // namespace procure
