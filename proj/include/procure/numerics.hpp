#pragma once

#include <functional>
#include <span>
#include <vector>

#include "procure/errors.hpp"

namespace procure::numerics {

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct SolverConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_iter = 200;

    void validate() const;
};

// Root of a continuous f on [bracket.lo, bracket.hi] with a sign change.
// Bisection with secant acceleration; a forced bisection whenever the bracket
// fails to halve keeps convergence guaranteed.  Returns x inside the bracket
// with |f(x)| <= abs_tol or final bracket width <= abs_tol.
// Throws NoSignChange / NoConvergence.
double find_root_bracketed(const std::function<double(double)>& f, Bracket bracket,
                           const SolverConfig& cfg = {});

// Integral of g over [a, b] by adaptive Simpson subdivision with local error
// control.  Helper for the improper-tail routine, exposed because payment
// code also needs finite pieces.
double integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                          double tol, int max_depth = 48);

// Integral of g over [lower, inf) for g decaying like t^{-alpha}, alpha > 1.
// Substitutes u = 1/t and sums geometrically graded segments toward u = 0
// until the geometric tail bound drops below tolerance.
// Throws Divergent (alpha <= 1), DomainError (lower <= 0), NoConvergence.
double integrate_tail(const std::function<double(double)>& g, double lower, double alpha,
                      const SolverConfig& cfg = {});

struct SimplexGridResult {
    std::vector<double> point;  // coordinates k_i / M, sum exactly 1 in exact arithmetic
    double value = 0.0;
    long long points_scanned = 0;
};

// Minimum of obj over the grid { k/M : k in Z^n_{>=0}, sum k = M } with
// M = round(1/resolution).  Ties broken lexicographically on the integer
// compositions.  The default entry point runs the OpenMP kernel (parallel
// over the leading coordinate); the _serial twin is the reference
// implementation and must produce bit-identical results.
SimplexGridResult minimize_on_simplex_grid(
    const std::function<double(std::span<const double>)>& obj, int n, double resolution);
SimplexGridResult minimize_on_simplex_grid_serial(
    const std::function<double(std::span<const double>)>& obj, int n, double resolution);

} // namespace procure::numerics
