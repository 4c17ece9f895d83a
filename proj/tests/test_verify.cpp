#include <doctest.h>

#include <cmath>
#include <vector>

#include "procure/paid_as_bid.hpp"
#include "procure/tullock.hpp"
#include "procure/verify.hpp"

using namespace procure;
using verify::UtilityFunctional;

TEST_CASE("utility functionals") {
    SUBCASE("tullock matches the contest formula") {
        const UtilityFunctional u = UtilityFunctional::tullock(5.0);
        const std::vector<double> opp{0.5};
        // x = 1/(1 + 0.5), value 4
        CHECK(u(1.0, opp, 1.0) == doctest::Approx(4.0 * 2.0 / 3.0 - 1.0).epsilon(1e-14));
        CHECK(u(0.0, opp, 1.0) == 0.0);
    }
    SUBCASE("paid-as-bid pays the bid on the realized share") {
        const UtilityFunctional u = UtilityFunctional::paid_as_bid(2.0);
        const std::vector<double> opp{2.0};
        // shares (0.8, 0.2) at bids (1, 2)
        CHECK(u(1.0, opp, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(u(2.0, opp, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(u(0.0, opp, 1.0) == -1.0);
    }
    SUBCASE("dsic utility peaks at the truthful bid") {
        const UtilityFunctional u = UtilityFunctional::dsic(2.0);
        const std::vector<double> opp{2.0};
        const double at_truth = u(1.0, opp, 1.0);
        for (double b : {0.25, 0.5, 2.0, 4.0}) CHECK(at_truth >= u(b, opp, 1.0) - 1e-10);
        // the zero bid is the full-allocation limit, also dominated
        CHECK(at_truth >= u(0.0, opp, 1.0) - 1e-10);
    }
    SUBCASE("rejects negative bids and empty rivals") {
        const UtilityFunctional u = UtilityFunctional::tullock(5.0);
        CHECK_THROWS_AS(u(-1.0, std::vector<double>{1.0}, 1.0), NonPositiveBid);
        CHECK_THROWS_AS(u(1.0, std::vector<double>{}, 1.0), LengthMismatch);
    }
}

TEST_CASE("best response search") {
    SUBCASE("tullock first-order condition") {
        // against beta = 0.5 with value 4: maximize 4 b/(b+0.5) - b,
        // optimum at b = sqrt(2) - 0.5
        const UtilityFunctional u = UtilityFunctional::tullock(5.0);
        auto rep = verify::best_response(u, std::vector<double>{0.5}, 1.0, 0.1, 100.0);
        CHECK(rep.best_bid == doctest::Approx(std::sqrt(2.0) - 0.5).epsilon(1e-6));
    }
    SUBCASE("paid-as-bid symmetric equilibrium bid is a fixed point") {
        const UtilityFunctional u = UtilityFunctional::paid_as_bid(5.0);
        auto rep = verify::best_response(u, std::vector<double>{5.0 / 3.0}, 1.0, 0.1, 100.0);
        CHECK(rep.best_bid == doctest::Approx(5.0 / 3.0).epsilon(1e-5));
    }
    SUBCASE("window widening finds an optimum outside the window") {
        const UtilityFunctional u = UtilityFunctional::tullock(1000.0);
        // best response to beta = 1 with value 999 is near sqrt(999) - 1 ~ 30.6
        auto rep = verify::best_response(u, std::vector<double>{1.0}, 1.0, 0.01, 1.0);
        CHECK(rep.best_bid == doctest::Approx(std::sqrt(999.0) - 1.0).epsilon(1e-4));
    }
    SUBCASE("validation") {
        const UtilityFunctional u = UtilityFunctional::tullock(5.0);
        CHECK_THROWS_AS(verify::best_response(u, std::vector<double>{1.0}, 1.0, 0.0, 1.0),
                        DomainError);
        CHECK_THROWS_AS(verify::best_response(u, std::vector<double>{1.0}, 1.0, 2.0, 1.0),
                        DomainError);
    }
}

TEST_CASE("equilibrium certification") {
    SUBCASE("tullock equilibrium passes") {
        CostVector c({1.0, 3.0});
        auto s = tullock::equilibrium(c, tullock::Budget(5.0));
        auto reports = verify::check_pne(UtilityFunctional::tullock(5.0), s.bids, c, 1e-6);
        for (const auto& r : reports) {
            CHECK(r.pass(1e-6));
            CHECK(r.relative_gap <= 1e-6);
        }
    }
    SUBCASE("a non-equilibrium profile fails") {
        CostVector c({1.0, 1.0});
        auto reports =
            verify::check_pne(UtilityFunctional::paid_as_bid(5.0), {1.0, 1.0}, c, 1e-6);
        bool any_fail = false;
        for (const auto& r : reports) any_fail = any_fail || !r.pass(1e-6);
        CHECK(any_fail);
    }
    SUBCASE("paid-as-bid equilibrium passes") {
        CostVector c({1.0, 2.0, 3.0});
        auto s = pab::equilibrium(c, apar::AlphaParam(3.0));
        auto reports =
            verify::check_pne(UtilityFunctional::paid_as_bid(3.0), s.bids, c, 1e-6);
        for (const auto& r : reports) CHECK(r.pass(1e-6));
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(verify::check_pne(UtilityFunctional::tullock(5.0), {1.0},
                                          CostVector({1.0, 2.0}), 1e-6),
                        LengthMismatch);
    }
}

TEST_CASE("ex-post safety probe") {
    SUBCASE("same seed, same report") {
        const UtilityFunctional u = UtilityFunctional::tullock(5.0);
        auto a = verify::ex_post_safety_check(u, 1.0, 300, 99);
        auto b = verify::ex_post_safety_check(u, 1.0, 300, 99);
        CHECK(a.violations == b.violations);
        CHECK(a.min_utility == b.min_utility);
        auto c = verify::ex_post_safety_check(u, 1.0, 300, 100);
        CHECK(a.min_utility != c.min_utility);
    }
    SUBCASE("paid-as-bid at own cost never loses") {
        auto rep = verify::ex_post_safety_check(UtilityFunctional::paid_as_bid(3.0), 2.0,
                                                500, 7);
        CHECK(rep.violations == 0);
        CHECK(rep.min_utility >= -1e-12);
    }
    SUBCASE("tullock at own cost loses against unlucky rivals") {
        auto rep =
            verify::ex_post_safety_check(UtilityFunctional::tullock(5.0), 1.0, 500, 7);
        CHECK(rep.violations > 0);
        CHECK(rep.min_utility < 0.0);
        CHECK(rep.violation_fraction > 0.0);
    }
}
