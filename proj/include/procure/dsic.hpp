#pragma once

#include <cstddef>
#include <vector>

#include "procure/alpha_par.hpp"
#include "procure/core.hpp"
#include "procure/numerics.hpp"

namespace procure::dsic {

using apar::AlphaParam;

// Payment making the alpha-PAR rule truthful, normalized so an infinitely
// high bid is paid nothing:
//   p_i = b_i x_i(b) + integral_{b_i}^{inf} dt / (1 + D_i t^alpha),
//   D_i = sum_{j != i} b_j^{-alpha}.
// Requires alpha > 1 (DivergentPayment otherwise) and n >= 2.
double myerson_payment(std::size_t i, const BidVector& bids, AlphaParam alpha,
                       const numerics::SolverConfig& cfg = {});

// Mechanism run: allocation and payments from the reported costs, utilities
// and social cost against the true ones.  With reported == true this is the
// truthful outcome, where every utility is the (nonnegative) payment surplus.
Outcome outcome(const CostVector& reported, const CostVector& true_costs, AlphaParam alpha,
                const numerics::SolverConfig& cfg = {});

// Truthful-bidding social cost, sum c_i^{1-alpha} / sum c_i^{-alpha}.
double social_cost_closed_form(const CostVector& costs, AlphaParam alpha);

// Root r* > 1 of B(x) = alpha + x(1-alpha) + (n-1) x^{1-alpha}: the cost
// ratio at which the truthful social cost is worst.  Requires alpha > 1.
double worst_case_r(int n, double alpha, const numerics::SolverConfig& cfg = {});

struct DsicWorstCase {
    int n = 0;
    double alpha = 0.0;
    double r_star = 0.0;             // worst cost ratio, costs (1, r*, ..., r*)
    double worst_social_cost = 0.0;  // social cost there == PoA since c_min = 1
    double upper_bound = 0.0;        // 1 + (n/alpha)^{1/alpha}
};

DsicWorstCase worst_case_social_cost(int n, double alpha,
                                     const numerics::SolverConfig& cfg = {});

struct WorstCaseScanReport {
    std::vector<double> argmax_costs;  // includes the leading 1
    double max_social_cost = 0.0;
    double tail_spread = 0.0;          // max - min over the non-first coordinates
    bool tail_equal = false;           // spread within one grid step
    long long points_scanned = 0;
};

// Exhaustive check of the worst-case shape: social cost maximized over all
// cost vectors (1, g_2, ..., g_n) with tail coordinates drawn from `grid`.
// Parallel kernel; the _serial twin is the reference for equivalence tests.
WorstCaseScanReport worst_case_scan(int n, double alpha, const std::vector<double>& grid);
WorstCaseScanReport worst_case_scan_serial(int n, double alpha,
                                           const std::vector<double>& grid);

struct SybilReport {
    double single_allocation = 0.0;  // agent 0's share bidding once
    double sybil_allocation = 0.0;   // total share of its duplicated identities
    bool profitable = false;         // sybil_allocation > single_allocation
};

// Demonstrates that the allocation rule rewards identity-splitting: agent 0
// reports its cost through `duplicates` identities against the same rivals.
SybilReport sybil_counterexample(const CostVector& costs, AlphaParam alpha, int duplicates);

} // namespace procure::dsic
