#include "procure/tullock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace procure::tullock {

Budget::Budget(double b) : value(b) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw DomainError("budget must be positive, got " + std::to_string(b));
}

std::vector<double> values(const CostVector& costs, Budget budget) {
    std::vector<double> v(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i)
        v[i] = std::max(budget.value - costs[i], 0.0);
    return v;
}

TullockSolution equilibrium(const CostVector& costs, Budget budget) {
    const std::size_t n = costs.size();
    std::vector<double> v = values(costs, budget);

    // sort value indices descending, input order on ties
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });

    std::size_t positive = 0;
    while (positive < n && v[order[positive]] > 0.0) ++positive;
    if (positive < 2)
        throw NoEquilibrium("Tullock contest needs >= 2 agents with B > c_i, found " +
                            std::to_string(positive));

    // active prefix: v* = (k-1)/sum_{i<=k} 1/v_i with v* < v_k and
    // (k == last positive or v* >= v_{k+1})
    double v_star = 0.0;
    std::size_t active = 0;
    double inv_sum = 1.0 / v[order[0]];
    for (std::size_t k = 2; k <= positive; ++k) {
        inv_sum += 1.0 / v[order[k - 1]];
        const double cand = (k - 1) / inv_sum;
        if (cand < v[order[k - 1]] && (k == positive || cand >= v[order[k]])) {
            v_star = cand;
            active = k;
            break;
        }
    }
    if (active == 0)
        throw NoConvergence("Tullock active-prefix search failed");  // unreachable

    std::vector<double> x(n, 0.0), bids(n, 0.0), pay(n, 0.0), util(n, 0.0);
    for (std::size_t rank = 0; rank < active; ++rank) {
        const std::size_t i = order[rank];
        x[i] = std::max(1.0 - v_star / v[i], 0.0);
        bids[i] = x[i] * v_star;
        pay[i] = budget.value * x[i] - bids[i];
        util[i] = x[i] * v[i] - bids[i];
    }

    double f_at_root = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] > 0.0) f_at_root += std::max(1.0 - v_star / v[i], 0.0);

    TullockSolution sol{std::move(v),
                        v_star,
                        Allocation(x),
                        std::move(bids),
                        Outcome{Allocation(x), std::move(pay), std::move(util),
                                social_cost(costs, Allocation(x))},
                        static_cast<int>(active),
                        std::abs(f_at_root - 1.0)};
    return sol;
}

double poa_bound(const CostVector& costs, Budget budget) {
    return (budget.value / costs.min() + 3.0) / 4.0;
}

std::vector<BudgetSweepRow> budget_sweep(const CostVector& costs,
                                         const std::vector<double>& budgets) {
    std::vector<BudgetSweepRow> rows(budgets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long r = 0; r < static_cast<long long>(budgets.size()); ++r) {
        BudgetSweepRow& row = rows[r];
        row.budget = budgets[r];
        try {
            Budget b(budgets[r]);
            TullockSolution sol = equilibrium(costs, b);
            row.ok = true;
            row.allocation = sol.allocation.shares();
            row.social_cost = sol.outcome.social_cost;
            row.poa = row.social_cost / costs.min();
            row.poa_bound = poa_bound(costs, b);
        } catch (const InputError&) {
            row.ok = false;
        }
    }
    return rows;
}

double contest_utility(double cost, double bid, Budget budget, double beta) {
    if (bid < 0.0 || beta < 0.0) throw DomainError("bids must be nonnegative");
    if (bid + beta == 0.0) return 0.0;
    return (budget.value - cost) * bid / (bid + beta) - bid;
}

SybilEquivalenceReport sybil_equivalence(double cost, Budget budget,
                                         const std::vector<double>& split, double beta) {
    if (split.empty()) throw DomainError("split must be nonempty");
    double total = 0.0;
    for (double b : split) {
        if (b < 0.0) throw DomainError("split entries must be nonnegative");
        total += b;
    }
    SybilEquivalenceReport rep;
    if (total + beta == 0.0) return rep;
    for (double b : split)
        rep.split_utility += (budget.value - cost) * b / (total + beta) - b;
    rep.merged_utility = (budget.value - cost) * total / (total + beta) - total;
    return rep;
}

double negative_utility_witness(double cost, double bid, Budget budget) {
    if (bid < 0.0) throw DomainError("bid must be nonnegative");
    return 2.0 * std::max(budget.value - cost - bid, bid);
}

} // namespace procure::tullock
