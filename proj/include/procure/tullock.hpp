#pragma once

#include <vector>

#include "procure/core.hpp"

namespace procure::tullock {

// Reward budget B shared proportionally to bids: x_i = b_i / sum b_j,
// p_i = B x_i - b_i.
struct Budget {
    explicit Budget(double b);
    double value;
};

// v_i = max(B - c_i, 0): what winning the whole unit is worth to agent i.
std::vector<double> values(const CostVector& costs, Budget budget);

struct TullockSolution {
    std::vector<double> values;      // input order
    double v_star = 0.0;             // equilibrium aggregate bid
    Allocation allocation;           // x_i = max(1 - v*/v_i, 0)
    std::vector<double> bids;        // b_i = x_i v*; zero for inactive agents
    Outcome outcome;
    int active_count = 0;            // agents with positive allocation, >= 2
    double f_residual = 0.0;         // |F(v*) - 1|, F(x) = sum max(1 - x/v_i, 0)
};

// Unique PNE of the contest.  v* is found exactly by the active-prefix
// formula: sort values descending and take v* = (k-1)/sum_{i<=k} 1/v_i for
// the prefix k with v* < v_k and (k = n or v* >= v_{k+1}).
// Throws NoEquilibrium unless at least two agents have positive value.
TullockSolution equilibrium(const CostVector& costs, Budget budget);

// (gamma + 3)/4 with gamma = B/c_min: proven cap on the realized PoA.
double poa_bound(const CostVector& costs, Budget budget);

struct BudgetSweepRow {
    double budget = 0.0;
    bool ok = false;                 // false => NoEquilibrium at this budget
    std::vector<double> allocation;  // empty when !ok
    double social_cost = 0.0;
    double poa = 0.0;
    double poa_bound = 0.0;
};

// Equilibrium across a list of budgets; failed rows are flagged, not dropped.
// Rows are computed independently (OpenMP) and returned in input order.
std::vector<BudgetSweepRow> budget_sweep(const CostVector& costs,
                                         const std::vector<double>& budgets);

struct SybilEquivalenceReport {
    double split_utility = 0.0;   // sum over identities j of v b_j/(T+beta) - b_j
    double merged_utility = 0.0;  // v T/(T+beta) - T with T = sum of the split
};

// Splitting a bid across identities changes nothing: utility depends only on
// the total.  beta is the rivals' aggregate bid.
SybilEquivalenceReport sybil_equivalence(double cost, Budget budget,
                                         const std::vector<double>& split, double beta);

// Utility of bidding b against aggregate rival bid beta.
double contest_utility(double cost, double bid, Budget budget, double beta);

// Opposing aggregate beta = 2 max(B - c - b, b) that makes a positive bid b
// lose money: the contest is not ex-post safe.
double negative_utility_witness(double cost, double bid, Budget budget);

} // namespace procure::tullock
