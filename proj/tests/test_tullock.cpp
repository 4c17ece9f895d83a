#include <doctest.h>

#include <cmath>

#include "procure/tullock.hpp"

using namespace procure;
using tullock::Budget;

TEST_CASE("budget and value validation") {
    CHECK_THROWS_AS(Budget(0.0), DomainError);
    CHECK_THROWS_AS(Budget(-5.0), DomainError);

    auto v = tullock::values(CostVector({1.0, 3.0, 7.0}), Budget(5.0));
    CHECK(v[0] == 4.0);
    CHECK(v[1] == 2.0);
    CHECK(v[2] == 0.0);
}

TEST_CASE("contest equilibrium") {
    SUBCASE("asymmetric two-bidder instance, exact") {
        auto s = tullock::equilibrium(CostVector({1.0, 3.0}), Budget(5.0));
        CHECK(s.v_star == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
        CHECK(s.outcome.allocation[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(s.outcome.allocation[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(s.bids[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
        CHECK(s.bids[1] == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
        CHECK(s.active_count == 2);
        CHECK(s.f_residual <= 1e-12);
        CHECK(s.outcome.social_cost == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("symmetric instance") {
        auto s = tullock::equilibrium(CostVector({1.0, 1.0}), Budget(5.0));
        CHECK(s.v_star == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(s.bids[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(s.outcome.payments[0] == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(s.outcome.utilities[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("low-value agents drop out") {
        // values (9, 8, 7): close enough that all three stay active
        auto s3 = tullock::equilibrium(CostVector({1.0, 2.0, 3.0}), Budget(10.0));
        CHECK(s3.active_count == 3);
        // values (9, 8, 0.1): the third agent is driven out
        auto s2 = tullock::equilibrium(CostVector({1.0, 2.0, 9.9}), Budget(10.0));
        CHECK(s2.active_count == 2);
        CHECK(s2.bids[2] == 0.0);
        CHECK(s2.outcome.allocation[2] == 0.0);
        CHECK(s2.outcome.utilities[2] == 0.0);
    }
    SUBCASE("no equilibrium with fewer than two positive values") {
        CHECK_THROWS_AS(tullock::equilibrium(CostVector({1.0, 10.0}), Budget(5.0)),
                        NoEquilibrium);
        CHECK_THROWS_AS(tullock::equilibrium(CostVector({6.0, 10.0}), Budget(5.0)),
                        NoEquilibrium);
    }
    SUBCASE("large budget equalizes the allocation") {
        auto s = tullock::equilibrium(CostVector({1.0, 2.0, 3.0}), Budget(1e6));
        for (int i = 0; i < 3; ++i)
            CHECK(s.outcome.allocation[i] == doctest::Approx(1.0 / 3.0).epsilon(3e-6));
    }
}

TEST_CASE("price of anarchy bound") {
    CostVector c({1.0, 3.0});
    CHECK(tullock::poa_bound(c, Budget(5.0)) == doctest::Approx(2.0).epsilon(1e-15));

    auto s = tullock::equilibrium(c, Budget(5.0));
    const double poa = s.outcome.social_cost / optimal_social_cost(c);
    CHECK(poa == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(poa <= tullock::poa_bound(c, Budget(5.0)));
}

TEST_CASE("budget sweep flags failures instead of dropping rows") {
    auto rows = tullock::budget_sweep(CostVector({1.0, 4.0}), {2.0, 5.0, 50.0});
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].ok);  // only one positive value at B = 2
    CHECK(rows[1].ok);
    CHECK(rows[2].ok);
    CHECK(rows[2].allocation[0] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(rows[1].poa <= rows[1].poa_bound);
}

TEST_CASE("sybil equivalence") {
    auto rep = tullock::sybil_equivalence(2.0, Budget(5.0), {0.3, 0.2, 0.1}, 1.5);
    CHECK(rep.split_utility == doctest::Approx(rep.merged_utility).epsilon(1e-15));

    // identity splitting changes nothing, matching the direct formula
    const double direct = tullock::contest_utility(2.0, 0.6, Budget(5.0), 1.5);
    CHECK(rep.merged_utility == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("no ex-post safety: a losing rival aggregate always exists") {
    SUBCASE("witness drives the utility negative") {
        const double beta = tullock::negative_utility_witness(1.0, 1.0, Budget(5.0));
        CHECK(beta == doctest::Approx(6.0).epsilon(1e-15));
        CHECK(tullock::contest_utility(1.0, 1.0, Budget(5.0), beta) < 0.0);

        const double beta2 = tullock::negative_utility_witness(4.0, 0.5, Budget(5.0));
        CHECK(beta2 == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(tullock::contest_utility(4.0, 0.5, Budget(5.0), beta2) ==
              doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
    }
    SUBCASE("witness works across a bid range") {
        for (double b : {0.1, 0.5, 1.0, 2.0}) {
            const double beta = tullock::negative_utility_witness(2.0, b, Budget(6.0));
            CHECK(tullock::contest_utility(2.0, b, Budget(6.0), beta) < 0.0);
        }
    }
}
