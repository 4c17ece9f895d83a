#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "procure/core.hpp"

namespace procure::verify {

// One agent's utility as a function of its own bid, with the rivals' bids
// held fixed.  own_bid = 0 means staying out (tullock) or the full-allocation
// limit (dsic, paid-as-bid).
struct UtilityFunctional {
    enum class Mechanism { Dsic, Tullock, PaidAsBid };

    Mechanism mechanism;
    double alpha = 0.0;   // dsic, paid-as-bid
    double budget = 0.0;  // tullock

    static UtilityFunctional dsic(double alpha);
    static UtilityFunctional tullock(double budget);
    static UtilityFunctional paid_as_bid(double alpha);

    double operator()(double own_bid, std::span<const double> opposing,
                      double own_cost) const;
    const char* name() const;
};

struct BestResponseReport {
    double best_bid = 0.0;
    double best_utility = 0.0;
    double tested_bid = 0.0;
    double tested_utility = 0.0;
    double relative_gap = 0.0;  // (best - tested) / max(|best|, 1e-12)
    int grid_size = 0;

    bool pass(double tolerance) const { return relative_gap <= tolerance; }
};

// Grid-plus-refinement search for the utility-maximizing bid: log-spaced grid
// over [search_lo, search_hi] plus the zero bid, window widened when the
// argmax lands on a boundary, then golden-section refinement to width 1e-10.
// tested_bid/tested_utility are left zero; check_pne fills them.
BestResponseReport best_response(const UtilityFunctional& u,
                                 std::span<const double> opposing, double own_cost,
                                 double search_lo, double search_hi, int grid_size = 200);

// Certify a bid profile as a pure Nash equilibrium: per agent, compare its
// candidate utility against the best-response oracle over the default window
// [cost/10, 100 cost].  Agents are checked in parallel, reported in order.
std::vector<BestResponseReport> check_pne(const UtilityFunctional& u,
                                          const std::vector<double>& candidate_bids,
                                          const CostVector& costs, double tolerance,
                                          int grid_size = 200);

struct SafetyReport {
    std::string mechanism;
    int samples = 0;
    int violations = 0;        // utility < -1e-12 when bidding own cost
    double violation_fraction = 0.0;
    double min_utility = 0.0;
};

// Ex-post safety probe: bid exactly own cost against `samples` seeded random
// opposing profiles (1-4 rivals, bids log-uniform on [1e-3 cost, 1e3 cost]).
// Paid-as-bid and DSIC must show zero violations; Tullock is expected to
// show a positive fraction.
SafetyReport ex_post_safety_check(const UtilityFunctional& u, double cost, int samples,
                                  std::uint64_t seed);

} // namespace procure::verify
