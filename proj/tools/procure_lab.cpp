#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "procure/cli.hpp"
#include "procure/errors.hpp"

namespace {

struct RangeSpec {
    double lo = 1.0;
    double hi = 10.0;
    int steps = 10;
};

RangeSpec parse_range(const std::string& text) {
    RangeSpec r;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &r.lo, &r.hi, &r.steps) != 3)
        throw procure::InputError("--range expects lo:hi:steps, got '" + text + "'");
    return r;
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw procure::InputError("cannot open config file '" + path + "'");
    const auto trim = [](const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos || eq == 0)
            throw procure::InputError("config line is not key=value: '" + stripped + "'");
        kv.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return kv;
}

// config keys become --key=value tokens; anything already on the command
// line wins
void apply_config(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw procure::InputError("--config expects a path");
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return;
    for (const auto& [key, value] : read_config(path)) {
        const std::string flag = "--" + key;
        const std::string flag_eq = flag + "=";
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag_eq, 0) == 0;
        });
        if (!given) args.push_back(flag_eq + value);
    }
}

} // namespace

int main(int argc, char** argv) {
    using procure::cli::Mech;

    CLI::App app{"procure-lab: equilibria, verification and worst-case analysis "
                 "for budget-feasible procurement mechanisms"};
    app.require_subcommand(1);

    std::string mechanism = "dsic";
    std::vector<double> costs;
    std::vector<double> bids;
    double alpha = 2.0;
    double budget = 5.0;
    double tolerance = 1e-6;
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
    int fig_id = 1;
    std::string fig_dir = ".";
    std::string param = "budget";
    std::string range_text = "1:10:10";
    bool log_scale = false;
    int n = 0;
    double C = 2.0;
    int grid_pts = 15;
    std::vector<double> scan_grid;
    std::string cfg_path;

    const auto add_costs = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--costs", costs, "comma-separated agent costs")
                        ->delimiter(',');
        if (required) opt->required();
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mechanism", mechanism, "dsic | tullock | pab")->required();
        sub->add_option("--alpha", alpha, "allocation sharpness (dsic, pab)");
        sub->add_option("--budget", budget, "contest budget (tullock)");
        sub->add_option("--format", format, "json | csv");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--seed", seed, "rng seed");
        sub->add_option("--config", cfg_path, "key=value config file; flags override");
    };

    auto* alloc_cmd = app.add_subcommand("allocate", "print the alpha-proportional allocation");
    add_costs(alloc_cmd, true);
    alloc_cmd->add_option("--alpha", alpha, "allocation sharpness")->required();
    alloc_cmd->add_option("--config", cfg_path, "key=value config file; flags override");

    auto* solve_cmd = app.add_subcommand("solve", "solve a mechanism on a cost vector");
    add_costs(solve_cmd, true);
    add_common(solve_cmd);

    auto* verify_cmd =
        app.add_subcommand("verify", "certify a bid profile as a pure Nash equilibrium");
    add_costs(verify_cmd, true);
    add_common(verify_cmd);
    verify_cmd->add_option("--bids", bids, "profile to test (default: the solved one)")
        ->delimiter(',');
    verify_cmd->add_option("--tolerance", tolerance, "relative best-response gap");

    auto* figure_cmd = app.add_subcommand("figure", "emit a figure dataset as CSV");
    figure_cmd->add_option("--id", fig_id, "figure id, 1..5")->required();
    figure_cmd->add_option("--out", fig_dir, "output directory");
    figure_cmd->add_option("--budget", budget, "contest budget for figure 2");
    figure_cmd->add_option("--config", cfg_path, "key=value config file; flags override");

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep as a CSV table");
    sweep_cmd->add_option("--mechanism", mechanism, "dsic | tullock | pab")->required();
    sweep_cmd->add_option("--param", param, "alpha | budget | C")->required();
    sweep_cmd->add_option("--range", range_text, "lo:hi:steps")->required();
    sweep_cmd->add_flag("--log", log_scale, "log-spaced sweep values");
    add_costs(sweep_cmd, false);
    sweep_cmd->add_option("--n", n, "number of agents for aggregate sweeps");
    sweep_cmd->add_option("--alpha", alpha, "fixed alpha for C sweeps");
    sweep_cmd->add_option("--out", out_path, "output file (default stdout)");
    sweep_cmd->add_option("--config", cfg_path, "key=value config file; flags override");

    auto* worst_cmd = app.add_subcommand("worst-case", "worst-case social cost / PoA report");
    worst_cmd->add_option("--mechanism", mechanism, "dsic | pab")->required();
    worst_cmd->add_option("--n", n, "number of agents")->required();
    worst_cmd->add_option("--alpha", alpha, "allocation sharpness")->required();
    worst_cmd->add_option("--C", C, "cost-ratio box upper corner (pab)");
    worst_cmd->add_option("--grid-points", grid_pts, "grid points per coordinate (pab)");
    worst_cmd->add_option("--scan-grid", scan_grid, "cost grid for the exhaustive dsic scan")
        ->delimiter(',');
    worst_cmd->add_option("--config", cfg_path, "key=value config file; flags override");

    auto* selftest_cmd =
        app.add_subcommand("selftest", "run the built-in invariant suite");
    selftest_cmd->add_option("--seed", seed, "rng seed");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        apply_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const procure::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (alloc_cmd->parsed())
            return procure::cli::cmd_allocate(costs, alpha, std::cout, std::cerr);

        if (solve_cmd->parsed() || verify_cmd->parsed()) {
            procure::cli::RunConfig rc;
            rc.mechanism = procure::cli::parse_mechanism(mechanism);
            rc.costs = costs;
            rc.alpha = alpha;
            rc.budget = budget;
            rc.tolerance = tolerance;
            rc.format = format;
            rc.out_path = out_path;
            rc.seed = seed;
            if (solve_cmd->parsed())
                return procure::cli::cmd_solve(rc, std::cout, std::cerr);
            return procure::cli::cmd_verify(rc, bids, std::cout, std::cerr);
        }

        if (figure_cmd->parsed())
            return procure::cli::cmd_figure(fig_id, fig_dir, budget, std::cout, std::cerr);

        if (sweep_cmd->parsed()) {
            const RangeSpec r = parse_range(range_text);
            procure::cli::SweepSpec spec;
            spec.mechanism = procure::cli::parse_mechanism(mechanism);
            spec.param = param;
            spec.lo = r.lo;
            spec.hi = r.hi;
            spec.steps = r.steps;
            spec.log_scale = log_scale;
            spec.costs = costs;
            spec.n = n;
            spec.alpha = alpha;
            return procure::cli::cmd_sweep(spec, out_path, std::cout, std::cerr);
        }

        if (worst_cmd->parsed()) {
            procure::cli::WorstCaseSpec spec;
            spec.mechanism = procure::cli::parse_mechanism(mechanism);
            spec.n = n;
            spec.alpha = alpha;
            spec.C = C;
            spec.grid_points = grid_pts;
            spec.scan_grid = scan_grid;
            return procure::cli::cmd_worst_case(spec, std::cout, std::cerr);
        }

        return procure::cli::cmd_selftest(seed, std::cout, std::cerr);
    } catch (const procure::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const procure::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}
