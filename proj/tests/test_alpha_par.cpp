#include <doctest.h>

#include <cmath>

#include "procure/alpha_par.hpp"

using namespace procure;
using apar::AlphaParam;

TEST_CASE("alpha parameter validation") {
    CHECK_NOTHROW(AlphaParam(0.5));
    CHECK_THROWS_AS(AlphaParam(0.0), DomainError);
    CHECK_THROWS_AS(AlphaParam(-1.0), DomainError);
}

TEST_CASE("proportional allocation closed form") {
    SUBCASE("two bidders, alpha 2") {
        Allocation x = apar::allocate(BidVector({1.0, 2.0}), AlphaParam(2.0));
        CHECK(x[0] == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(x[1] == doctest::Approx(0.2).epsilon(1e-14));
    }
    SUBCASE("three bidders, alpha 1") {
        Allocation x = apar::allocate(BidVector({1.0, 2.0, 4.0}), AlphaParam(1.0));
        CHECK(x[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
        CHECK(x[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
        CHECK(x[2] == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    }
    SUBCASE("equal bids split evenly") {
        Allocation x = apar::allocate(BidVector({3.0, 3.0, 3.0, 3.0}), AlphaParam(7.0));
        for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("huge alpha is winner-take-all without overflow") {
        Allocation x = apar::allocate(BidVector({1.0, 1.5}), AlphaParam(1e3));
        CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::isfinite(x[1]));
    }
    SUBCASE("tiny alpha approaches an even split") {
        Allocation x = apar::allocate(BidVector({1.0, 100.0}), AlphaParam(1e-6));
        CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-4));
    }
    SUBCASE("scale invariance") {
        Allocation a = apar::allocate(BidVector({1.0, 2.0, 5.0}), AlphaParam(3.0));
        Allocation b = apar::allocate(BidVector({10.0, 20.0, 50.0}), AlphaParam(3.0));
        for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
    }
    SUBCASE("lower bid never gets a smaller share") {
        Allocation x = apar::allocate(BidVector({1.0, 1.2, 0.7}), AlphaParam(2.5));
        CHECK(x[2] > x[0]);
        CHECK(x[0] > x[1]);
    }
}

TEST_CASE("scaled objective and grid optimality") {
    CostVector c({1.0, 2.0, 4.0});
    const AlphaParam a(2.0);

    SUBCASE("closed form value matches a direct evaluation") {
        Allocation x = apar::allocate(BidVector(c.costs()), a);
        double direct = 0.0;
        for (int i = 0; i < 3; ++i) direct += c[i] * std::pow(x[i], 1.5);
        CHECK(apar::scaled_objective(c, x, a) == doctest::Approx(direct).epsilon(1e-14));
    }
    SUBCASE("grid search lands on the closed form") {
        auto rep = apar::verify_optimality(c, a, 0.01);
        CHECK(rep.max_coord_gap <= 0.01);
        CHECK(rep.closed_form_value <= rep.grid_min_value + 1e-12);
    }
}
