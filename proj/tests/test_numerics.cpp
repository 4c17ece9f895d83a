#include <doctest.h>

#include <cmath>
#include <span>

#include "procure/numerics.hpp"

using namespace procure;
using namespace procure::numerics;

TEST_CASE("bracketed root finding") {
    SUBCASE("square root of two") {
        const double r =
            find_root_bracketed([](double x) { return x * x - 2.0; }, {1.0, 2.0});
        CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(r * r == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("root at an endpoint") {
        const double r = find_root_bracketed([](double x) { return x; }, {0.0, 1.0});
        CHECK(r == 0.0);
    }
    SUBCASE("transcendental") {
        const double r =
            find_root_bracketed([](double x) { return std::cos(x) - x; }, {0.0, 1.0});
        CHECK(std::cos(r) == doctest::Approx(r).epsilon(1e-12));
    }
    SUBCASE("rejects a bracket without a sign change") {
        CHECK_THROWS_AS(
            find_root_bracketed([](double x) { return x * x + 1.0; }, {0.0, 1.0}),
            NoSignChange);
    }
    SUBCASE("rejects a bad config") {
        SolverConfig cfg;
        cfg.max_iter = 0;
        CHECK_THROWS_AS(
            find_root_bracketed([](double x) { return x - 0.5; }, {0.0, 1.0}, cfg),
            DomainError);
    }
}

TEST_CASE("adaptive quadrature") {
    SUBCASE("arctangent integrand") {
        const double v =
            integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-12);
        CHECK(v == doctest::Approx(0.7853981633974483).epsilon(1e-12));
    }
    SUBCASE("polynomial") {
        const double v = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
        CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    }
    SUBCASE("exponential") {
        const double v =
            integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
        CHECK(v == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    }
}

TEST_CASE("tail quadrature on [L, inf)") {
    SUBCASE("payment-style integrand, alpha = 2") {
        // integral of 1/(1 + 4 t^2) from 1: (pi/2 - atan 2)/2
        const double v =
            integrate_tail([](double t) { return 1.0 / (1.0 + 4.0 * t * t); }, 1.0, 2.0);
        CHECK(v == doctest::Approx(0.2318238045004031).epsilon(1e-9));
    }
    SUBCASE("pure power law") {
        const double v =
            integrate_tail([](double t) { return 1.0 / (t * t); }, 1.0, 2.0);
        CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("wide tail, alpha = 1.2") {
        // integral of t^{-1.2} from 1 is 5
        const double v = integrate_tail([](double t) { return std::pow(t, -1.2); }, 1.0, 1.2);
        CHECK(v == doctest::Approx(5.0).epsilon(1e-9));
    }
    SUBCASE("alpha <= 1 diverges") {
        CHECK_THROWS_AS(integrate_tail([](double t) { return 1.0 / t; }, 1.0, 1.0),
                        Divergent);
    }
    SUBCASE("needs a positive lower endpoint") {
        CHECK_THROWS_AS(integrate_tail([](double t) { return 1.0 / (t * t); }, 0.0, 2.0),
                        DomainError);
    }
}

namespace {

double quad_at(std::span<const double> x, double target) {
    const double d = x[0] - target;
    return d * d;
}

} // namespace

TEST_CASE("simplex grid minimizer") {
    SUBCASE("two coordinates") {
        auto r = minimize_on_simplex_grid([](std::span<const double> x) { return quad_at(x, 0.25); },
                                          2, 0.25);
        CHECK(r.point[0] == doctest::Approx(0.25));
        CHECK(r.point[1] == doctest::Approx(0.75));
        CHECK(r.points_scanned == 5);
    }
    SUBCASE("three coordinates, count") {
        auto r = minimize_on_simplex_grid([](std::span<const double>) { return 0.0; }, 3, 0.25);
        CHECK(r.points_scanned == 15);  // compositions of 4 into 3 parts
    }
    SUBCASE("serial and parallel agree bitwise") {
        const auto obj = [](std::span<const double> x) {
            double v = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                v += (x[i] - 0.1 * static_cast<double>(i + 1)) * x[i];
            return v;
        };
        auto a = minimize_on_simplex_grid(obj, 3, 0.01);
        auto b = minimize_on_simplex_grid_serial(obj, 3, 0.01);
        CHECK(a.value == b.value);
        CHECK(a.point == b.point);
        CHECK(a.points_scanned == b.points_scanned);
    }
    SUBCASE("validation") {
        const auto obj = [](std::span<const double>) { return 0.0; };
        CHECK_THROWS_AS(minimize_on_simplex_grid(obj, 1, 0.25), DomainError);
        CHECK_THROWS_AS(minimize_on_simplex_grid(obj, 2, 0.0), DomainError);
        CHECK_THROWS_AS(minimize_on_simplex_grid(obj, 2, 0.8), DomainError);
    }
}
