#include "procure/paid_as_bid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace procure::pab {

namespace {

double domain_cap(double alpha) {
    if (alpha <= 1.0)
        throw DomainError("f_alpha needs alpha > 1, got " + std::to_string(alpha));
    return 1.0 - 1.0 / alpha;
}

double eq1_bid(double cost, double share, double alpha) {
    return alpha * cost * (1.0 - share) / (alpha * (1.0 - share) - 1.0);
}

} // namespace

double f_alpha(double x, double alpha) {
    const double cap = domain_cap(alpha);
    if (!(x >= 0.0) || x >= cap)
        throw DomainError("f_alpha domain is [0, " + std::to_string(cap) + "), got x = " +
                          std::to_string(x));
    if (x == 0.0) return 0.0;
    return std::pow(x, 1.0 / alpha) * (1.0 - x) / (alpha * (1.0 - x) - 1.0);
}

double f_inverse(double y, double alpha, double rel_tol, double abs_floor) {
    const double cap = domain_cap(alpha);
    if (!(y >= 0.0)) throw DomainError("f_inverse needs y >= 0");
    if (y == 0.0) return 0.0;

    // approach the pole geometrically until f exceeds y
    double gap = cap;
    double hi = cap - 0.5 * gap;
    int guard = 0;
    while (f_alpha(hi, alpha) < y) {
        gap *= 0.5;
        hi = cap - 0.5 * gap;
        if (++guard > 1000 || !(hi < cap))
            throw NoConvergence("f_inverse: y = " + std::to_string(y) +
                                " not reachable in double precision");
    }

    const double target = std::max(abs_floor, rel_tol * y);
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // machine-width bracket
        const double fm = f_alpha(mid, alpha);
        if (std::abs(fm - y) <= target) return mid;
        if (fm < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct OuterG {
    const std::vector<double>& costs;
    double cmin;
    double alpha;
    double inner_rel;

    // share of agent i when a minimal-cost agent holds share d
    double share(std::size_t i, double d) const {
        const double ratio = cmin / costs[i];
        if (ratio == 1.0) return d;
        return f_inverse(ratio * f_alpha(d, alpha), alpha, inner_rel, 0.01 * inner_rel);
    }

    double operator()(double d) const {
        double s = 0.0;
        for (std::size_t i = 0; i < costs.size(); ++i) s += share(i, d);
        return s;
    }
};

} // namespace

double outer_g(const CostVector& costs, AlphaParam alpha, double d) {
    OuterG g{costs.costs(), costs.min(), alpha.value, 1e-14};
    return g(d);
}

PabSolution equilibrium(const CostVector& costs, AlphaParam alpha) {
    const std::size_t n = costs.size();
    const double a = alpha.value;
    const double nd = static_cast<double>(n);
    if (a <= nd / (nd - 1.0))
        throw AlphaTooSmall("paid-as-bid PNE needs alpha > n/(n-1) = " +
                            std::to_string(nd / (nd - 1.0)) + ", got " + std::to_string(a));

    const double cap = 1.0 - 1.0 / a;
    const double outer_tol = 1e-12;
    OuterG g{costs.costs(), costs.min(), a, outer_tol * 0.01};  // inner 100x tighter

    // bracket the root of g(d) = 1: g(0+) = 0, and the upper endpoint starts
    // at 1/n (exact for uniform costs), expanding toward the pole otherwise
    double lo = 1e-15;
    double hi = 1.0 / nd;
    int nudges = 0;
    while (g(hi) < 1.0) {
        hi = cap - 0.5 * (cap - hi);
        if (++nudges > 64)
            throw NoConvergence("paid-as-bid: failed to bracket d*; alpha too close to n/(n-1)");
    }

    // bisect to a machine-width bracket: the bid formula amplifies d* error
    // by 1/(alpha(1 - x) - 1)^2 near the pole, so stopping at a loose
    // residual would poison the FOC check at extreme cost ratios
    int iterations = nudges;
    double d_best = hi;
    double resid_best = std::abs(g(hi) - 1.0);
    if (resid_best > 0.01 * outer_tol) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            ++iterations;
            const double gm = g(mid);
            const double resid = std::abs(gm - 1.0);
            if (resid < resid_best) {
                resid_best = resid;
                d_best = mid;
            }
            if (resid == 0.0) break;
            if (gm < 1.0)
                lo = mid;
            else
                hi = mid;
        }
    }
    const double d_star = d_best;

    std::vector<double> x(n), bids(n), pay(n), util(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = g.share(i, d_star);
        sum += x[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        bids[i] = eq1_bid(costs[i], x[i], a);
        pay[i] = bids[i] * x[i];
        util[i] = (bids[i] - costs[i]) * x[i];
    }

    // closed-loop FOC check: the allocation the bids induce, plugged back
    // into the first-order condition, must reproduce the bids
    Allocation induced = apar::allocate(BidVector(bids), alpha);
    double foc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double again = eq1_bid(costs[i], induced[i], a);
        foc = std::max(foc, std::abs(bids[i] - again) / bids[i]);
    }

    Allocation alloc(x);
    double sc = social_cost(costs, alloc);
    PabSolution sol{Allocation(x), std::move(bids),  d_star,
                    foc,           std::abs(sum - 1.0), iterations,
                    Outcome{std::move(alloc), std::move(pay), std::move(util), sc}};
    return sol;
}

double poa(const CostVector& costs, AlphaParam alpha) {
    return equilibrium(costs, alpha).outcome.social_cost / costs.min();
}

namespace {

std::vector<double> linear_grid(double C, int points) {
    std::vector<double> grid(points);
    for (int j = 0; j < points; ++j)
        grid[j] = 1.0 + (C - 1.0) * static_cast<double>(j) / (points - 1);
    return grid;
}

double poa_at_tail(int n, double alpha, const std::vector<double>& tail) {
    std::vector<double> costs;
    costs.reserve(n);
    costs.push_back(1.0);
    costs.insert(costs.end(), tail.begin(), tail.end());
    return poa(CostVector(std::move(costs)), AlphaParam(alpha));
}

struct FlatScan {
    long long total = 0;
    double best_v = -1.0;
    long long best_flat = 0;
};

// enumerate tail vectors indexed in base grid.size(); pinned scans append C
template <typename Decode>
FlatScan scan_flat(long long total, const Decode& decode, bool parallel) {
    FlatScan out;
    out.total = total;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel
        {
            double lv = -1.0;
            long long lf = 0;
#pragma omp for schedule(dynamic, 4) nowait
            for (long long flat = 0; flat < total; ++flat) {
                const double v = decode(flat);
                if (v > lv) {
                    lv = v;
                    lf = flat;
                }
            }
#pragma omp critical(procure_pab_scan_merge)
            {
                if (lv > out.best_v || (lv == out.best_v && lf < out.best_flat)) {
                    out.best_v = lv;
                    out.best_flat = lf;
                }
            }
        }
        return out;
    }
#endif
    (void)parallel;
    for (long long flat = 0; flat < total; ++flat) {
        const double v = decode(flat);
        if (v > out.best_v) {
            out.best_v = v;
            out.best_flat = flat;
        }
    }
    return out;
}

PoaScanReport scan_impl(int n, double C, AlphaParam alpha, int grid_points, bool parallel) {
    if (n < 2) throw DomainError("worst_case_scan needs n >= 2");
    if (!(C >= 1.0)) throw DomainError("worst_case_scan needs C >= 1");
    if (grid_points < 2) throw DomainError("worst_case_scan needs >= 2 grid points");
    const double a = alpha.value;
    const std::vector<double> grid = linear_grid(C, grid_points);
    const long long G = grid_points;

    const auto decode_tail = [&](long long flat, int free_coords,
                                 bool pin_last) -> std::vector<double> {
        std::vector<double> tail(n - 1);
        long long rem = flat;
        for (int p = free_coords - 1; p >= 0; --p) {
            tail[p] = grid[rem % G];
            rem /= G;
        }
        if (pin_last) tail[n - 2] = C;
        return tail;
    };

    // pinned: last tail coordinate fixed at C, n-2 free
    long long pinned_total = 1;
    for (int p = 0; p < n - 2; ++p) pinned_total *= G;
    const auto pinned_value = [&](long long flat) {
        return poa_at_tail(n, a, decode_tail(flat, n - 2, true));
    };
    FlatScan pinned = scan_flat(pinned_total, pinned_value, parallel);

    // unpinned: the whole box, n-1 free
    long long box_total = 1;
    for (int p = 0; p < n - 1; ++p) box_total *= G;
    const auto box_value = [&](long long flat) {
        return poa_at_tail(n, a, decode_tail(flat, n - 1, false));
    };
    FlatScan box = scan_flat(box_total, box_value, parallel);

    PoaScanReport rep;
    rep.points_scanned = pinned_total + box_total;
    rep.argmax_poa = pinned.best_v;
    rep.argmax_costs = {1.0};
    for (double t : decode_tail(pinned.best_flat, n - 2, true)) rep.argmax_costs.push_back(t);
    rep.unpinned_argmax_poa = box.best_v;
    rep.unpinned_argmax_costs = {1.0};
    for (double t : decode_tail(box.best_flat, n - 1, false))
        rep.unpinned_argmax_costs.push_back(t);

    std::vector<double> corner(n, C);
    corner[0] = 1.0;
    rep.corner_poa = poa(CostVector(std::move(corner)), alpha);
    rep.corner_dominates = rep.argmax_poa <= rep.corner_poa + 1e-6 &&
                           rep.unpinned_argmax_poa <= rep.corner_poa + 1e-6;
    return rep;
}

} // namespace

PoaScanReport worst_case_scan(int n, double C, AlphaParam alpha, int grid_points) {
    return scan_impl(n, C, alpha, grid_points, true);
}

PoaScanReport worst_case_scan_serial(int n, double C, AlphaParam alpha, int grid_points) {
    return scan_impl(n, C, alpha, grid_points, false);
}

double psi(double x, double alpha) {
    const double cap = domain_cap(alpha);
    if (!(x > 0.0) || x >= cap)
        throw DomainError("psi domain is (0, 1 - 1/alpha), got x = " + std::to_string(x));
    const double f = f_alpha(x, alpha);
    // f'(x)/f(x) = 1/(alpha x) + 1/((1-x)(alpha(1-x)-1))
    const double logderiv =
        1.0 / (alpha * x) + 1.0 / ((1.0 - x) * (alpha * (1.0 - x) - 1.0));
    return (1.0 - x * logderiv) / f;
}

double phi(double a, double alpha) {
    const double cap = domain_cap(alpha);
    if (!(a > 0.0) || a >= cap)
        throw DomainError("phi domain is (0, 1 - 1/alpha), got a = " + std::to_string(a));
    return 1.0 / (alpha * a) + 1.0 / (alpha * (1.0 - a) - 1.0);
}

std::pair<double, double> phi_min(double alpha) {
    if (alpha <= 1.0) throw DomainError("phi_min needs alpha > 1");
    return {(alpha - 1.0) / (2.0 * alpha), 4.0 / (alpha - 1.0)};
}

std::vector<std::pair<double, double>> h_along_ray(int n, AlphaParam alpha,
                                                   const std::vector<double>& r_grid) {
    if (n < 2) throw DomainError("h_along_ray needs n >= 2");
    for (double r : r_grid)
        if (!(r >= 1.0)) throw DomainError("ray parameter r must be >= 1");

    std::vector<std::pair<double, double>> rows(r_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 2)
#endif
    for (long long k = 0; k < static_cast<long long>(r_grid.size()); ++k) {
        std::vector<double> costs(n, r_grid[k]);
        costs[0] = 1.0;
        rows[k] = {r_grid[k],
                   equilibrium(CostVector(std::move(costs)), alpha).outcome.social_cost};
    }
    return rows;
}

} // namespace procure::pab
