#include <doctest.h>

#include <cmath>

#include "procure/dsic.hpp"

using namespace procure;
using apar::AlphaParam;

namespace {

// two-bidder alpha = 2 payment in closed form
double arctan_payment(double own, double rival) {
    const double D = 1.0 / (rival * rival);
    const double sd = std::sqrt(D);
    const double x = (1.0 / (own * own)) / (1.0 / (own * own) + D);
    return own * x + (std::asin(1.0) - std::atan(sd * own)) / sd;
}

} // namespace

TEST_CASE("myerson payment") {
    SUBCASE("matches the arctangent closed form") {
        const double p = dsic::myerson_payment(0, BidVector({1.0, 2.0}), AlphaParam(2.0));
        CHECK(p == doctest::Approx(3.0142974355881806).epsilon(1e-9));
        CHECK(p == doctest::Approx(arctan_payment(1.0, 2.0)).epsilon(1e-9));

        const double q = dsic::myerson_payment(0, BidVector({1.0, 1.0}), AlphaParam(2.0));
        CHECK(q == doctest::Approx(0.5 + std::atan(1.0)).epsilon(1e-9));
    }
    SUBCASE("rejects alpha <= 1") {
        CHECK_THROWS_AS(dsic::myerson_payment(0, BidVector({1.0, 2.0}), AlphaParam(1.0)),
                        DivergentPayment);
    }
    SUBCASE("rejects out-of-range index and single bids") {
        CHECK_THROWS_AS(dsic::myerson_payment(2, BidVector({1.0, 2.0}), AlphaParam(2.0)),
                        DomainError);
        CHECK_THROWS_AS(dsic::myerson_payment(0, BidVector({1.0}), AlphaParam(2.0)),
                        DomainError);
    }
    SUBCASE("payment beats cost share at truth") {
        Outcome o = dsic::outcome(CostVector({1.0, 2.0, 5.0}), CostVector({1.0, 2.0, 5.0}),
                                  AlphaParam(3.0));
        for (double u : o.utilities) CHECK(u >= -1e-10);
    }
    SUBCASE("truthful reporting dominates spot deviations") {
        const CostVector truth({1.0, 2.0});
        const AlphaParam a(2.0);
        const double honest = dsic::outcome(truth, truth, a).utilities[0];
        for (double m : {0.5, 0.8, 1.25, 2.0}) {
            Outcome dev = dsic::outcome(CostVector({m * 1.0, 2.0}), truth, a);
            CHECK(honest >= dev.utilities[0] - 1e-9);
        }
    }
}

TEST_CASE("closed-form social cost") {
    // (1, 2.5, 3) at alpha 2: (1 + 1/2.5 + 1/3) / (1 + 1/6.25 + 1/9) = 15/11
    const double sc =
        dsic::social_cost_closed_form(CostVector({1.0, 2.5, 3.0}), AlphaParam(2.0));
    CHECK(sc == doctest::Approx(15.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("worst-case social cost") {
    SUBCASE("n = 2, alpha = 2 in closed form") {
        auto w = dsic::worst_case_social_cost(2, 2.0);
        CHECK(w.r_star == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
        CHECK(w.worst_social_cost == doctest::Approx(1.2071067811865477).epsilon(1e-12));
        CHECK(w.upper_bound == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("n = 2, alpha = 3 satisfies its cubic") {
        const double r = dsic::worst_case_r(2, 3.0);
        CHECK(r == doctest::Approx(1.6776506988040598).epsilon(1e-11));
        CHECK(2.0 * r * r * r - 3.0 * r * r - 1.0 == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("bound holds with slack on a grid") {
        for (int n : {2, 4, 8, 16})
            for (double a : {1.5, 2.0, 3.0, 4.0, 5.0}) {
                auto w = dsic::worst_case_social_cost(n, a);
                CHECK(w.worst_social_cost <= w.upper_bound);
                CHECK(w.worst_social_cost >= 1.0);
            }
    }
    SUBCASE("worst case is interior, not at the boundary") {
        auto w = dsic::worst_case_social_cost(2, 4.0);
        CHECK(w.worst_social_cost == doctest::Approx(1.0830249175076245).epsilon(1e-11));
        const double far = dsic::social_cost_closed_form(CostVector({1.0, 10.0}),
                                                         AlphaParam(4.0));
        CHECK(far == doctest::Approx(1.000899910008999).epsilon(1e-12));
        CHECK(w.worst_social_cost > far);
    }
    SUBCASE("rejects alpha <= 1 and n < 2") {
        CHECK_THROWS_AS(dsic::worst_case_social_cost(2, 1.0), DomainError);
        CHECK_THROWS_AS(dsic::worst_case_social_cost(1, 2.0), DomainError);
    }
}

TEST_CASE("worst-case grid scan") {
    const std::vector<double> grid{1.0, 1.5, 2.0, 2.5, 3.0};

    auto rep = dsic::worst_case_scan(3, 2.0, grid);
    CHECK(rep.points_scanned == 25);
    CHECK(rep.max_social_cost == doctest::Approx(15.0 / 11.0).epsilon(1e-14));
    REQUIRE(rep.argmax_costs.size() == 3);
    CHECK(rep.argmax_costs[0] == 1.0);
    CHECK(rep.argmax_costs[1] == 2.5);
    CHECK(rep.argmax_costs[2] == 2.5);
    CHECK(rep.tail_equal);

    auto ser = dsic::worst_case_scan_serial(3, 2.0, grid);
    CHECK(ser.argmax_costs == rep.argmax_costs);
    CHECK(ser.max_social_cost == rep.max_social_cost);
    CHECK(ser.points_scanned == rep.points_scanned);
}

TEST_CASE("sybil counterexample") {
    auto rep = dsic::sybil_counterexample(CostVector({1.0, 2.0}), AlphaParam(2.0), 2);
    CHECK(rep.single_allocation == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(rep.sybil_allocation == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(rep.profitable);
}
