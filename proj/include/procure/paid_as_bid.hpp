#pragma once

#include <utility>
#include <vector>

#include "procure/alpha_par.hpp"
#include "procure/core.hpp"

namespace procure::pab {

using apar::AlphaParam;

// f(x) = x^{1/alpha} (1-x) / (alpha(1-x) - 1): strictly increasing from 0 on
// [0, 1-1/alpha), blowing up at the right end.  Equilibria equalize
// c_i f(x_i) across agents.  Throws DomainError outside the domain.
double f_alpha(double x, double alpha);

// Monotone inverse of f_alpha by bisection.  The upper endpoint approaches
// the pole geometrically until f exceeds y.  Residual target
// |f(x) - y| <= max(abs_floor, rel_tol * y); bottoms out at a machine-width
// bracket when y is large enough that the target is below one ulp of f.
double f_inverse(double y, double alpha, double rel_tol = 1e-12,
                 double abs_floor = 1e-13);

struct PabSolution {
    Allocation allocation;
    std::vector<double> bids;     // b_i = alpha c_i (1-x_i) / (alpha(1-x_i) - 1)
    double d_star = 0.0;          // equilibrium share of a minimal-cost agent
    double residual_foc = 0.0;    // max_i |b_i - Eq.(1) bid| / b_i
    double residual_sum = 0.0;    // |sum x_i - 1|
    int iterations = 0;           // outer bisection steps
    Outcome outcome;              // p_i = b_i x_i, u_i = (b_i - c_i) x_i
};

// Unique PNE of the paid-as-bid mechanism (alpha > n/(n-1), else
// AlphaTooSmall).  Solves sum_i f^{-1}((c_min/c_i) f(d)) = 1 for the
// minimal-cost agent's share d by bisection, expanding the upper endpoint
// from 1/n toward 1-1/alpha until the root is bracketed.
PabSolution equilibrium(const CostVector& costs, AlphaParam alpha);

// Equilibrium social cost divided by min cost.
double poa(const CostVector& costs, AlphaParam alpha);

// Outer function g(d) whose unique root is d_star; exposed so tests can probe
// its strict monotonicity.
double outer_g(const CostVector& costs, AlphaParam alpha, double d);

struct PoaScanReport {
    std::vector<double> argmax_costs;  // pinned scan: c_1 = 1, one coordinate = C
    double argmax_poa = 0.0;
    double corner_poa = 0.0;           // poa at (1, C, ..., C)
    bool corner_dominates = false;     // argmax_poa <= corner_poa + 1e-6
    std::vector<double> unpinned_argmax_costs;  // free scan over the whole box
    double unpinned_argmax_poa = 0.0;
    long long points_scanned = 0;
};

// Grid scan of equilibrium PoA over cost vectors (1, g_2, ..., g_n) with
// g_i in [1, C]; the primary scan pins the last coordinate to C, the
// unpinned scan covers the whole box for exploration above alpha = 5.
// Parallel kernel with a _serial reference twin.
PoaScanReport worst_case_scan(int n, double C, AlphaParam alpha, int grid_points);
PoaScanReport worst_case_scan_serial(int n, double C, AlphaParam alpha, int grid_points);

// Psi(x) = (f(x) - x f'(x)) / f(x)^2, strictly decreasing on (0, 1-1/alpha);
// the engine of the worst-case corner argument.
double psi(double x, double alpha);

// Phi_alpha(a) = 1/(alpha a) + 1/(alpha(1-a) - 1).
double phi(double a, double alpha);

// Minimizer (alpha-1)/(2 alpha) and minimum value 4/(alpha-1).
std::pair<double, double> phi_min(double alpha);

// Equilibrium social cost along the ray c = (1, r, ..., r), r on r_grid;
// strictly increasing in r for alpha <= 5.  Rows computed independently.
std::vector<std::pair<double, double>> h_along_ray(int n, AlphaParam alpha,
                                                   const std::vector<double>& r_grid);

} // namespace procure::pab
