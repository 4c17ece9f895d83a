#include "procure/dsic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace procure::dsic {

double myerson_payment(std::size_t i, const BidVector& bids, AlphaParam alpha,
                       const numerics::SolverConfig& cfg) {
    const auto& b = bids.bids();
    if (b.size() < 2) throw DomainError("myerson_payment needs n >= 2");
    if (i >= b.size()) throw DomainError("agent index out of range");
    if (alpha.value <= 1.0)
        throw DivergentPayment("payment integral diverges for alpha = " +
                               std::to_string(alpha.value) + " (need alpha > 1)");

    const double a = alpha.value;
    double D = 0.0;  // sum over rivals of b_j^{-alpha}
    for (std::size_t j = 0; j < b.size(); ++j)
        if (j != i) D += std::exp(-a * std::log(b[j]));

    const double x_i = apar::allocate(bids, alpha)[i];
    const auto integrand = [D, a](double t) { return 1.0 / (1.0 + D * std::pow(t, a)); };
    return b[i] * x_i + numerics::integrate_tail(integrand, b[i], a, cfg);
}

Outcome outcome(const CostVector& reported, const CostVector& true_costs, AlphaParam alpha,
                const numerics::SolverConfig& cfg) {
    if (reported.size() != true_costs.size())
        throw LengthMismatch("outcome: reported and true cost sizes differ");
    BidVector bids(reported.costs());
    Allocation alloc = apar::allocate(bids, alpha);

    const std::size_t n = reported.size();
    std::vector<double> pay(n), util(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        pay[i] = myerson_payment(static_cast<std::size_t>(i), bids, alpha, cfg);
    for (std::size_t i = 0; i < n; ++i) util[i] = pay[i] - true_costs[i] * alloc[i];

    double sc = social_cost(true_costs, alloc);
    return Outcome{std::move(alloc), std::move(pay), std::move(util), sc};
}

double social_cost_closed_form(const CostVector& costs, AlphaParam alpha) {
    const double a = alpha.value;
    double num = 0.0, den = 0.0;
    for (double c : costs.costs()) {
        num += std::pow(c, 1.0 - a);
        den += std::pow(c, -a);
    }
    return num / den;
}

double worst_case_r(int n, double alpha, const numerics::SolverConfig& cfg) {
    if (n < 2) throw DomainError("worst_case_r needs n >= 2");
    if (alpha <= 1.0)
        throw DomainError("worst-case ratio defined for alpha > 1, got " +
                          std::to_string(alpha));
    const auto B = [n, alpha](double x) {
        return alpha + x * (1.0 - alpha) + (n - 1) * std::pow(x, 1.0 - alpha);
    };
    // B(1) = n > 0 and B is strictly decreasing; the right endpoint is past
    // the sign change for every n, alpha
    const double hi = 2.0 * (alpha + n) / (alpha - 1.0) + 2.0;
    return numerics::find_root_bracketed(B, {1.0, hi}, cfg);
}

DsicWorstCase worst_case_social_cost(int n, double alpha,
                                     const numerics::SolverConfig& cfg) {
    DsicWorstCase w;
    w.n = n;
    w.alpha = alpha;
    w.r_star = worst_case_r(n, alpha, cfg);
    const double t = (n - 1) * std::pow(w.r_star, 1.0 - alpha);
    w.worst_social_cost = (1.0 + t) / (1.0 + t / w.r_star);
    w.upper_bound = 1.0 + std::pow(n / alpha, 1.0 / alpha);
    return w;
}

namespace {

double tail_social_cost(double alpha, const std::vector<double>& grid,
                        const std::vector<int>& idx) {
    double num = 1.0, den = 1.0;  // leading cost fixed at 1
    for (int j : idx) {
        num += std::pow(grid[j], 1.0 - alpha);
        den += std::pow(grid[j], -alpha);
    }
    return num / den;
}

WorstCaseScanReport scan_finish(const std::vector<double>& grid, int n, double best_v,
                                long long best_flat, long long total) {
    WorstCaseScanReport rep;
    rep.max_social_cost = best_v;
    rep.points_scanned = total;
    rep.argmax_costs.assign(1, 1.0);
    std::vector<int> idx(n - 1);
    long long rem = best_flat;
    for (int p = n - 2; p >= 0; --p) {
        idx[p] = static_cast<int>(rem % grid.size());
        rem /= static_cast<long long>(grid.size());
    }
    for (int j : idx) rep.argmax_costs.push_back(grid[j]);
    const auto [mn, mx] =
        std::minmax_element(rep.argmax_costs.begin() + 1, rep.argmax_costs.end());
    rep.tail_spread = *mx - *mn;
    double step = 0.0;
    for (std::size_t j = 1; j < grid.size(); ++j)
        step = std::max(step, grid[j] - grid[j - 1]);
    rep.tail_equal = rep.tail_spread <= step + 1e-12;
    return rep;
}

void validate_scan_grid(int n, double alpha, const std::vector<double>& grid) {
    if (n < 2) throw DomainError("worst_case_scan needs n >= 2");
    if (alpha <= 1.0) throw DomainError("worst_case_scan needs alpha > 1");
    if (grid.size() < 2) throw DomainError("worst_case_scan needs >= 2 grid values");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw DomainError("scan grid must be sorted ascending");
    for (double g : grid)
        if (!(g >= 1.0)) throw DomainError("scan grid values must be >= 1");
}

} // namespace

WorstCaseScanReport worst_case_scan_serial(int n, double alpha,
                                           const std::vector<double>& grid) {
    validate_scan_grid(n, alpha, grid);
    const long long G = static_cast<long long>(grid.size());
    long long total = 1;
    for (int p = 0; p < n - 1; ++p) total *= G;

    double best_v = -1.0;
    long long best_flat = 0;
    std::vector<int> idx(n - 1);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (int p = n - 2; p >= 0; --p) {
            idx[p] = static_cast<int>(rem % G);
            rem /= G;
        }
        const double v = tail_social_cost(alpha, grid, idx);
        if (v > best_v) {
            best_v = v;
            best_flat = flat;
        }
    }
    return scan_finish(grid, n, best_v, best_flat, total);
}

WorstCaseScanReport worst_case_scan(int n, double alpha, const std::vector<double>& grid) {
    validate_scan_grid(n, alpha, grid);
    const long long G = static_cast<long long>(grid.size());
    long long total = 1;
    for (int p = 0; p < n - 1; ++p) total *= G;

    double best_v = -1.0;
    long long best_flat = 0;
#ifdef _OPENMP
#pragma omp parallel
    {
        double lv = -1.0;
        long long lf = 0;
        std::vector<int> idx(n - 1);
#pragma omp for schedule(static) nowait
        for (long long flat = 0; flat < total; ++flat) {
            long long rem = flat;
            for (int p = n - 2; p >= 0; --p) {
                idx[p] = static_cast<int>(rem % G);
                rem /= G;
            }
            const double v = tail_social_cost(alpha, grid, idx);
            if (v > lv || (v == lv && flat < lf)) {
                lv = v;
                lf = flat;
            }
        }
#pragma omp critical(procure_dsic_scan_merge)
        {
            // larger value wins; exact ties resolve to the smaller flat
            // index, matching the serial first-hit rule
            if (lv > best_v || (lv == best_v && lf < best_flat)) {
                best_v = lv;
                best_flat = lf;
            }
        }
    }
#else
    std::vector<int> idx(n - 1);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (int p = n - 2; p >= 0; --p) {
            idx[p] = static_cast<int>(rem % G);
            rem /= G;
        }
        const double v = tail_social_cost(alpha, grid, idx);
        if (v > best_v) {
            best_v = v;
            best_flat = flat;
        }
    }
#endif
    return scan_finish(grid, n, best_v, best_flat, total);
}

SybilReport sybil_counterexample(const CostVector& costs, AlphaParam alpha, int duplicates) {
    if (duplicates < 1) throw DomainError("duplicates must be >= 1");
    const auto& c = costs.costs();

    SybilReport rep;
    rep.single_allocation = apar::allocate(BidVector(c), alpha)[0];

    std::vector<double> split;
    split.assign(duplicates, c[0]);
    split.insert(split.end(), c.begin() + 1, c.end());
    Allocation x = apar::allocate(BidVector(std::move(split)), alpha);
    for (int j = 0; j < duplicates; ++j) rep.sybil_allocation += x[j];

    rep.profitable = rep.sybil_allocation > rep.single_allocation;
    return rep;
}

} // namespace procure::dsic
