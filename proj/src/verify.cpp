#include "procure/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "procure/alpha_par.hpp"
#include "procure/dsic.hpp"
#include "procure/numerics.hpp"

namespace procure::verify {

UtilityFunctional UtilityFunctional::dsic(double alpha) {
    return {Mechanism::Dsic, alpha, 0.0};
}

UtilityFunctional UtilityFunctional::tullock(double budget) {
    return {Mechanism::Tullock, 0.0, budget};
}

UtilityFunctional UtilityFunctional::paid_as_bid(double alpha) {
    return {Mechanism::PaidAsBid, alpha, 0.0};
}

const char* UtilityFunctional::name() const {
    switch (mechanism) {
        case Mechanism::Dsic: return "dsic";
        case Mechanism::Tullock: return "tullock";
        default: return "paid-as-bid";
    }
}

namespace {

std::vector<double> join(double own, std::span<const double> opposing) {
    std::vector<double> bids;
    bids.reserve(opposing.size() + 1);
    bids.push_back(own);
    bids.insert(bids.end(), opposing.begin(), opposing.end());
    return bids;
}

// limit payment of the zero bid: integral of 1/(1 + D t^alpha) over (0, inf),
// split at the knee D^{-1/alpha} so both halves are tame
double dsic_zero_bid_payment(std::span<const double> opposing, double alpha) {
    double D = 0.0;
    for (double b : opposing) D += std::exp(-alpha * std::log(b));
    const double knee = std::exp(-std::log(D) / alpha);
    const auto integrand = [D, alpha](double t) {
        return 1.0 / (1.0 + D * std::exp(alpha * std::log(t)));
    };
    return numerics::integrate_adaptive(integrand, 0.0, knee, 1e-12) +
           numerics::integrate_tail(integrand, knee, alpha);
}

} // namespace

double UtilityFunctional::operator()(double own_bid, std::span<const double> opposing,
                                     double own_cost) const {
    if (own_bid < 0.0) throw NonPositiveBid("own bid must be >= 0 in utility probes");
    if (opposing.empty()) throw LengthMismatch("utility probe needs at least one rival");

    switch (mechanism) {
        case Mechanism::Tullock: {
            if (own_bid == 0.0) return 0.0;
            double total = own_bid;
            for (double b : opposing) total += b;
            const double x = own_bid / total;
            return x * (budget - own_cost) - own_bid;
        }
        case Mechanism::PaidAsBid: {
            if (own_bid == 0.0) return -own_cost;  // wins everything at zero price
            Allocation x = apar::allocate(BidVector(join(own_bid, opposing)),
                                          apar::AlphaParam(alpha));
            return (own_bid - own_cost) * x[0];
        }
        default: {
            if (own_bid == 0.0)
                return dsic_zero_bid_payment(opposing, alpha) - own_cost;
            BidVector bids(join(own_bid, opposing));
            const apar::AlphaParam a(alpha);
            const double p = dsic::myerson_payment(0, bids, a);
            return p - own_cost * apar::allocate(bids, a)[0];
        }
    }
}

namespace {

struct GridBest {
    double bid = 0.0;
    double utility = 0.0;
    int index = -1;  // -1 marks the zero bid
};

GridBest scan_grid(const UtilityFunctional& u, std::span<const double> opposing,
                   double own_cost, double lo, double hi, int grid_size,
                   std::vector<double>& grid) {
    grid.resize(grid_size);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < grid_size; ++k)
        grid[k] = std::exp(llo + (lhi - llo) * k / (grid_size - 1));

    GridBest best{0.0, u(0.0, opposing, own_cost), -1};
    for (int k = 0; k < grid_size; ++k) {
        const double v = u(grid[k], opposing, own_cost);
        if (v > best.utility) best = {grid[k], v, k};
    }
    return best;
}

} // namespace

BestResponseReport best_response(const UtilityFunctional& u,
                                 std::span<const double> opposing, double own_cost,
                                 double search_lo, double search_hi, int grid_size) {
    if (!(search_lo > 0.0) || !(search_hi > search_lo))
        throw DomainError("best_response needs 0 < search_lo < search_hi");
    if (grid_size < 4) throw DomainError("best_response needs grid_size >= 4");

    double lo = search_lo, hi = search_hi;
    std::vector<double> grid;
    GridBest best = scan_grid(u, opposing, own_cost, lo, hi, grid_size, grid);

    // widen when the argmax sits on a window edge
    for (int w = 0; w < 3 && best.index == 0; ++w) {
        lo /= 10.0;
        best = scan_grid(u, opposing, own_cost, lo, hi, grid_size, grid);
    }
    for (int w = 0; w < 3 && best.index == grid_size - 1; ++w) {
        hi *= 10.0;
        best = scan_grid(u, opposing, own_cost, lo, hi, grid_size, grid);
    }

    BestResponseReport rep;
    rep.grid_size = grid_size;
    rep.best_bid = best.bid;
    rep.best_utility = best.utility;
    if (best.index >= 0) {
        // golden-section refinement between the grid neighbours
        double a = grid[std::max(best.index - 1, 0)];
        double b = grid[std::min(best.index + 1, grid_size - 1)];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = u(x1, opposing, own_cost), f2 = u(x2, opposing, own_cost);
        for (int it = 0; it < 200 && b - a > 1e-10 * std::max(1.0, b); ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = u(x2, opposing, own_cost);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = u(x1, opposing, own_cost);
            }
        }
        const double mid = 0.5 * (a + b);
        const double fm = u(mid, opposing, own_cost);
        if (fm > rep.best_utility) {
            rep.best_bid = mid;
            rep.best_utility = fm;
        }
    }
    return rep;
}

std::vector<BestResponseReport> check_pne(const UtilityFunctional& u,
                                          const std::vector<double>& candidate_bids,
                                          const CostVector& costs, double tolerance,
                                          int grid_size) {
    const std::size_t n = costs.size();
    if (candidate_bids.size() != n)
        throw LengthMismatch("check_pne: bids and costs must have equal length");
    (void)tolerance;

    std::vector<BestResponseReport> reports(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        std::vector<double> opposing;
        opposing.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != static_cast<std::size_t>(i)) opposing.push_back(candidate_bids[j]);

        const double c = costs[static_cast<std::size_t>(i)];
        const double bid = candidate_bids[static_cast<std::size_t>(i)];
        double lo = c / 10.0, hi = 100.0 * c;
        if (bid > 0.0) {
            lo = std::min(lo, 0.5 * bid);
            hi = std::max(hi, 2.0 * bid);
        }
        BestResponseReport rep = best_response(u, opposing, c, lo, hi, grid_size);
        rep.tested_bid = bid;
        rep.tested_utility = u(bid, opposing, c);
        rep.relative_gap = (rep.best_utility - rep.tested_utility) /
                           std::max(std::abs(rep.best_utility), 1e-12);
        reports[static_cast<std::size_t>(i)] = rep;
    }
    return reports;
}

SafetyReport ex_post_safety_check(const UtilityFunctional& u, double cost, int samples,
                                  std::uint64_t seed) {
    if (!(cost > 0.0)) throw DomainError("safety check needs a positive cost");
    if (samples < 1) throw DomainError("safety check needs at least one sample");

    std::mt19937_64 rng(seed);
    const auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

    SafetyReport rep;
    rep.mechanism = u.name();
    rep.samples = samples;
    rep.min_utility = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const int rivals = 1 + static_cast<int>(rng() % 4);
        std::vector<double> opposing(rivals);
        for (double& b : opposing) b = 1e-3 * cost * std::pow(1e6, unit());
        const double util = u(cost, opposing, cost);
        rep.min_utility = std::min(rep.min_utility, util);
        if (util < -1e-12) ++rep.violations;
    }
    rep.violation_fraction = static_cast<double>(rep.violations) / samples;
    return rep;
}

} // namespace procure::verify
