// Times the OpenMP kernels against their serial reference twins and checks
// that both produce identical results.

#include <chrono>
#include <cstdio>
#include <span>
#include <vector>

#include "procure/alpha_par.hpp"
#include "procure/dsic.hpp"
#include "procure/numerics.hpp"
#include "procure/paid_as_bid.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%-6.2f %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "identical" : "MISMATCH");
}

} // namespace

int main() {
    using namespace procure;

    std::printf("%-28s %13s %13s   %-7s %s\n", "kernel", "serial", "parallel", "speedup",
                "result");

    {
        const std::vector<double> costs{1.0, 2.0, 4.0};
        const std::span<const double> cost_span(costs);
        const auto objective = [&](std::span<const double> x) {
            return apar::scaled_objective(cost_span, x, 2.0);
        };
        numerics::SimplexGridResult serial, parallel;
        const double ts = time_ms(
            [&] { serial = numerics::minimize_on_simplex_grid_serial(objective, 3, 1e-3); });
        const double tp =
            time_ms([&] { parallel = numerics::minimize_on_simplex_grid(objective, 3, 1e-3); });
        const bool match =
            serial.point == parallel.point && serial.value == parallel.value &&
            serial.points_scanned == parallel.points_scanned;
        report("simplex-grid n=3 res=1e-3", ts, tp, match);
    }

    {
        std::vector<double> grid;
        for (int k = 0; k < 220; ++k) grid.push_back(1.0 + 9.0 * k / 219.0);
        dsic::WorstCaseScanReport serial, parallel;
        const double ts = time_ms([&] { serial = dsic::worst_case_scan_serial(4, 3.0, grid); });
        const double tp = time_ms([&] { parallel = dsic::worst_case_scan(4, 3.0, grid); });
        const bool match = serial.argmax_costs == parallel.argmax_costs &&
                           serial.max_social_cost == parallel.max_social_cost;
        report("dsic-scan n=4 |grid|=220", ts, tp, match);
    }

    {
        pab::PoaScanReport serial, parallel;
        const apar::AlphaParam alpha(4.0);
        const double ts =
            time_ms([&] { serial = pab::worst_case_scan_serial(3, 3.0, alpha, 15); });
        const double tp = time_ms([&] { parallel = pab::worst_case_scan(3, 3.0, alpha, 15); });
        const bool match = serial.argmax_costs == parallel.argmax_costs &&
                           serial.argmax_poa == parallel.argmax_poa &&
                           serial.unpinned_argmax_poa == parallel.unpinned_argmax_poa;
        report("pab-poa-scan n=3 grid=15", ts, tp, match);
    }

    return 0;
}
