#include "procure/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "procure/alpha_par.hpp"
#include "procure/dsic.hpp"
#include "procure/paid_as_bid.hpp"
#include "procure/tullock.hpp"
#include "procure/verify.hpp"

namespace procure::cli {

using nlohmann::json;

Mech parse_mechanism(const std::string& name) {
    if (name == "dsic") return Mech::Dsic;
    if (name == "tullock") return Mech::Tullock;
    if (name == "pab") return Mech::Pab;
    throw InputError("unknown mechanism '" + name + "' (expected dsic, tullock or pab)");
}

const char* mech_name(Mech m) {
    switch (m) {
        case Mech::Dsic: return "dsic";
        case Mech::Tullock: return "tullock";
        default: return "pab";
    }
}

namespace {

std::string g9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string f9(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// one numeric CSV row: optional mechanism tag, data columns, error flag
struct Row {
    std::string tag;
    std::vector<double> cols;
    bool error = false;
};

std::string emit_rows(const std::string& header, const std::vector<Row>& rows,
                      bool* any_error) {
    std::ostringstream os;
    os << header << ",error\n";
    bool flagged = false;
    for (const Row& r : rows) {
        if (!r.tag.empty()) os << r.tag << ',';
        for (double c : r.cols) os << g9(c) << ',';
        os << (r.error ? '1' : '0') << '\n';
        flagged = flagged || r.error;
    }
    if (any_error) *any_error = flagged;
    return os.str();
}

std::vector<double> grid_points(double lo, double hi, int steps, bool log_scale) {
    if (steps < 2) throw InputError("sweep needs at least two steps");
    if (!(lo < hi)) throw InputError("sweep needs lo < hi");
    if (log_scale && !(lo > 0.0)) throw InputError("log sweep needs lo > 0");
    std::vector<double> g(steps);
    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / (steps - 1);
        g[k] = log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                         : lo + t * (hi - lo);
    }
    return g;
}

// run `fill` for every row index, catching per-point failures so one bad
// point flags its row instead of aborting the sweep
void compute_rows(std::vector<Row>& rows, int width,
                  const std::function<void(long long, Row&)>& fill) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 2)
#endif
    for (long long k = 0; k < static_cast<long long>(rows.size()); ++k) {
        Row& r = rows[k];
        r.cols.assign(width, kNaN);
        try {
            fill(k, r);
        } catch (const std::exception&) {
            r.error = true;
        }
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output path '" + path + "'");
    out << text;
}

} // namespace

std::string allocate_line(const std::vector<double>& costs, double alpha) {
    CostVector cv(costs);  // validates positivity with the cost-side message
    Allocation x = apar::allocate(BidVector(cv.costs()), apar::AlphaParam(alpha));
    std::string line;
    for (std::size_t i = 0; i < x.shares().size(); ++i) {
        if (i) line += ',';
        line += f9(x[i]);
    }
    return line;
}

namespace {

json outcome_json(const Outcome& o) {
    json j;
    j["allocation"] = o.allocation.shares();
    j["payments"] = o.payments;
    j["utilities"] = o.utilities;
    j["social_cost"] = o.social_cost;
    return j;
}

struct Solved {
    Outcome outcome;
    std::vector<double> bids;
    double poa = 0.0;
    json diagnostics;
};

Solved solve_dispatch(const RunConfig& rc) {
    CostVector costs(rc.costs);
    switch (rc.mechanism) {
        case Mech::Dsic: {
            Outcome o = dsic::outcome(costs, costs, apar::AlphaParam(rc.alpha));
            const double poa = o.social_cost / optimal_social_cost(costs);
            json diag;
            diag["residuals"] = json::object();
            diag["iterations"] = 0;
            return {std::move(o), costs.costs(), poa, std::move(diag)};
        }
        case Mech::Tullock: {
            tullock::TullockSolution s = tullock::equilibrium(costs, tullock::Budget(rc.budget));
            const double poa = s.outcome.social_cost / optimal_social_cost(costs);
            json diag;
            diag["residuals"] = {{"f_residual", s.f_residual}};
            diag["iterations"] = 0;
            diag["v_star"] = s.v_star;
            return {std::move(s.outcome), std::move(s.bids), poa, std::move(diag)};
        }
        default: {
            pab::PabSolution s = pab::equilibrium(costs, apar::AlphaParam(rc.alpha));
            const double poa = s.outcome.social_cost / optimal_social_cost(costs);
            json diag;
            diag["residuals"] = {{"foc", s.residual_foc}, {"sum", s.residual_sum}};
            diag["iterations"] = s.iterations;
            diag["d_star"] = s.d_star;
            return {std::move(s.outcome), std::move(s.bids), poa, std::move(diag)};
        }
    }
}

} // namespace

std::string solve_payload(const RunConfig& rc) {
    Solved s = solve_dispatch(rc);
    if (rc.format == "csv") {
        std::ostringstream os;
        os << "mechanism,agent,cost,bid,allocation,payment,utility,social_cost,poa\n";
        for (std::size_t i = 0; i < rc.costs.size(); ++i) {
            os << mech_name(rc.mechanism) << ',' << i << ',' << g9(rc.costs[i]) << ','
               << g9(s.bids[i]) << ',' << g9(s.outcome.allocation[i]) << ','
               << g9(s.outcome.payments[i]) << ',' << g9(s.outcome.utilities[i]) << ','
               << g9(s.outcome.social_cost) << ',' << g9(s.poa) << '\n';
        }
        return os.str();
    }
    if (rc.format != "json")
        throw InputError("unknown format '" + rc.format + "' (expected json or csv)");

    json j = outcome_json(s.outcome);
    j["mechanism"] = mech_name(rc.mechanism);
    j["costs"] = rc.costs;
    if (rc.mechanism == Mech::Tullock)
        j["budget"] = rc.budget;
    else
        j["alpha"] = rc.alpha;
    j["bids"] = s.bids;
    j["poa"] = s.poa;
    j["diagnostics"] = s.diagnostics;
    return j.dump(2) + "\n";
}

std::string figure_csv(int id, double fig2_budget, bool* any_error) {
    switch (id) {
        case 1: {
            const std::vector<double> alphas{1.0, 2.0, 4.0, 8.0};
            const std::vector<double> c2 = grid_points(1.0, 10.0, 200, true);
            std::vector<Row> rows(alphas.size() * c2.size());
            compute_rows(rows, 5, [&](long long k, Row& r) {
                const double a = alphas[k / c2.size()];
                const double c = c2[k % c2.size()];
                CostVector costs({1.0, c});
                Allocation x = apar::allocate(BidVector(costs.costs()), apar::AlphaParam(a));
                r.cols = {a, c, x[0], x[1], social_cost(costs, x)};
            });
            return emit_rows("alpha,c2,x1,x2,social_cost", rows, any_error);
        }
        case 2: {
            const std::vector<int> ns{2, 4, 8};
            const std::vector<double> c2 = grid_points(1.0, 0.99 * fig2_budget, 200, false);
            std::vector<Row> rows(ns.size() * c2.size());
            compute_rows(rows, 4, [&](long long k, Row& r) {
                const int n = ns[k / c2.size()];
                const double c = c2[k % c2.size()];
                std::vector<double> costs(n, c);
                costs[0] = 1.0;
                auto s = tullock::equilibrium(CostVector(std::move(costs)),
                                              tullock::Budget(fig2_budget));
                r.cols = {static_cast<double>(n), c, s.outcome.allocation[n - 1],
                          s.outcome.social_cost};
            });
            return emit_rows("n,c2,x2,social_cost", rows, any_error);
        }
        case 3: {
            const double a = 5.0;
            const std::vector<double> c2 = grid_points(1.0, 1000.0, 200, true);
            std::vector<Row> rows(c2.size());
            compute_rows(rows, 9, [&](long long k, Row& r) {
                const double c = c2[k];
                CostVector costs({1.0, c});
                Allocation hx =
                    apar::allocate(BidVector(costs.costs()), apar::AlphaParam(a));
                auto s = pab::equilibrium(costs, apar::AlphaParam(a));
                r.cols = {c,    1.0,       c,         hx[0],     hx[1],
                          s.bids[0], s.bids[1], s.outcome.allocation[0],
                          s.outcome.allocation[1]};
            });
            return emit_rows("c2,honest_b1,honest_b2,honest_x1,honest_x2,eq_b1,eq_b2,eq_x1,eq_x2",
                             rows, any_error);
        }
        case 4: {
            const std::vector<double> alphas{2.0, 3.0, 5.0};
            const std::vector<double> c2 = grid_points(1.0, 1000.0, 200, true);
            std::vector<Row> rows(alphas.size() * c2.size());
            compute_rows(rows, 7, [&](long long k, Row& r) {
                const double a = alphas[k / c2.size()];
                const double c = c2[k % c2.size()];
                r.cols[0] = a;
                r.cols[1] = c;
                r.cols[5] = 1.0 / a;
                r.cols[6] = 1.0 - 1.0 / a;
                auto s = pab::equilibrium(CostVector({1.0, c}), apar::AlphaParam(a));
                r.cols[2] = s.outcome.allocation[0];
                r.cols[3] = s.outcome.allocation[1];
                r.cols[4] = s.outcome.social_cost;
            });
            return emit_rows("alpha,c2,x1,x2,social_cost,ref_inv_alpha,ref_cap", rows,
                             any_error);
        }
        case 5: {
            const double a = 4.0;
            const std::vector<int> ns{2, 4, 8, 16};
            const std::vector<double> Cs = grid_points(1.1, 100.0, 40, true);
            std::vector<Row> rows(ns.size() * Cs.size());
            compute_rows(rows, 5, [&](long long k, Row& r) {
                const int n = ns[k / Cs.size()];
                const double C = Cs[k % Cs.size()];
                std::vector<double> costs(n, C);
                costs[0] = 1.0;
                const double p =
                    pab::poa(CostVector(std::move(costs)), apar::AlphaParam(a));
                r.cols = {static_cast<double>(n), C, p, C, C / a};
            });
            return emit_rows("n,C,poa,ref_C,ref_C_over_alpha", rows, any_error);
        }
        default:
            throw InputError("figure id must be 1..5, got " + std::to_string(id));
    }
}

std::string sweep_csv(const SweepSpec& spec, bool* any_error) {
    const std::vector<double> values =
        grid_points(spec.lo, spec.hi, spec.steps, spec.log_scale);

    if (spec.mechanism == Mech::Tullock && spec.param == "budget") {
        CostVector costs(spec.costs);
        const std::size_t n = costs.size();
        std::vector<Row> rows(values.size() * n);
        compute_rows(rows, 10, [&](long long k, Row& r) {
            r.tag = "tullock";
            const double B = values[k / n];
            const std::size_t i = k % n;
            r.cols[0] = B;
            r.cols[1] = static_cast<double>(i);
            r.cols[2] = costs[i];
            auto s = tullock::equilibrium(costs, tullock::Budget(B));
            const double poa = s.outcome.social_cost / optimal_social_cost(costs);
            r.cols[3] = s.outcome.allocation[i];
            r.cols[4] = s.bids[i];
            r.cols[5] = s.outcome.payments[i];
            r.cols[6] = s.outcome.utilities[i];
            r.cols[7] = s.outcome.social_cost;
            r.cols[8] = poa;
            r.cols[9] = tullock::poa_bound(costs, tullock::Budget(B));
        });
        return emit_rows(
            "mechanism,budget,agent,cost,allocation,bid,payment,utility,social_cost,poa,poa_bound",
            rows, any_error);
    }

    if (spec.mechanism == Mech::Pab && spec.param == "alpha") {
        CostVector costs(spec.costs);
        const std::size_t n = costs.size();
        std::vector<Row> rows(values.size() * n);
        compute_rows(rows, 9, [&](long long k, Row& r) {
            r.tag = "pab";
            const double a = values[k / n];
            const std::size_t i = k % n;
            r.cols[0] = a;
            r.cols[1] = static_cast<double>(i);
            r.cols[2] = costs[i];
            auto s = pab::equilibrium(costs, apar::AlphaParam(a));
            const double poa = s.outcome.social_cost / optimal_social_cost(costs);
            r.cols[3] = s.outcome.allocation[i];
            r.cols[4] = s.bids[i];
            r.cols[5] = s.outcome.payments[i];
            r.cols[6] = s.outcome.utilities[i];
            r.cols[7] = s.outcome.social_cost;
            r.cols[8] = poa;
        });
        return emit_rows(
            "mechanism,alpha,agent,cost,allocation,bid,payment,utility,social_cost,poa",
            rows, any_error);
    }

    if (spec.mechanism == Mech::Dsic && spec.param == "alpha") {
        const int n = spec.n > 0 ? spec.n : static_cast<int>(spec.costs.size());
        if (n < 2) throw InputError("dsic alpha sweep needs --n >= 2 (or costs)");
        std::vector<Row> rows(values.size());
        compute_rows(rows, 5, [&](long long k, Row& r) {
            r.tag = "dsic";
            r.cols[0] = values[k];
            r.cols[1] = static_cast<double>(n);
            auto w = dsic::worst_case_social_cost(n, values[k]);
            r.cols[2] = w.r_star;
            r.cols[3] = w.worst_social_cost;
            r.cols[4] = w.upper_bound;
        });
        return emit_rows("mechanism,alpha,n,r_star,worst_social_cost,bound", rows,
                         any_error);
    }

    if (spec.mechanism == Mech::Pab && spec.param == "C") {
        const int n = spec.n > 0 ? spec.n : static_cast<int>(spec.costs.size());
        if (n < 2) throw InputError("pab C sweep needs --n >= 2 (or costs)");
        std::vector<Row> rows(values.size());
        compute_rows(rows, 3, [&](long long k, Row& r) {
            r.tag = "pab";
            r.cols[0] = values[k];
            r.cols[1] = static_cast<double>(n);
            std::vector<double> costs(n, values[k]);
            costs[0] = 1.0;
            r.cols[2] =
                pab::poa(CostVector(std::move(costs)), apar::AlphaParam(spec.alpha));
        });
        return emit_rows("mechanism,C,n,poa", rows, any_error);
    }

    throw InputError(std::string("unsupported sweep: mechanism ") +
                     mech_name(spec.mechanism) + " with param '" + spec.param + "'");
}

std::string worst_case_payload(const WorstCaseSpec& spec) {
    json j;
    if (spec.mechanism == Mech::Dsic) {
        auto w = dsic::worst_case_social_cost(spec.n, spec.alpha);
        j["mechanism"] = "dsic";
        j["n"] = w.n;
        j["alpha"] = w.alpha;
        j["r_star"] = w.r_star;
        j["worst_social_cost"] = w.worst_social_cost;
        j["upper_bound"] = w.upper_bound;
        if (!spec.scan_grid.empty()) {
            auto s = dsic::worst_case_scan(spec.n, spec.alpha, spec.scan_grid);
            j["scan"] = {{"argmax_costs", s.argmax_costs},
                         {"max_social_cost", s.max_social_cost},
                         {"tail_spread", s.tail_spread},
                         {"tail_equal", s.tail_equal},
                         {"points_scanned", s.points_scanned}};
        }
    } else if (spec.mechanism == Mech::Pab) {
        auto s = pab::worst_case_scan(spec.n, spec.C, apar::AlphaParam(spec.alpha),
                                      spec.grid_points);
        j["mechanism"] = "pab";
        j["n"] = spec.n;
        j["alpha"] = spec.alpha;
        j["C"] = spec.C;
        j["grid_points"] = spec.grid_points;
        j["argmax_costs"] = s.argmax_costs;
        j["argmax_poa"] = s.argmax_poa;
        j["corner_poa"] = s.corner_poa;
        j["corner_dominates"] = s.corner_dominates;
        j["unpinned_argmax_costs"] = s.unpinned_argmax_costs;
        j["unpinned_argmax_poa"] = s.unpinned_argmax_poa;
        j["points_scanned"] = s.points_scanned;
    } else {
        throw InputError("worst-case supports mechanisms dsic and pab");
    }
    return j.dump(2) + "\n";
}

namespace {

int guard(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

void deliver(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << payload;
    else
        write_text(out_path, payload);
}

} // namespace

int cmd_allocate(const std::vector<double>& costs, double alpha, std::ostream& out,
                 std::ostream& err) {
    return guard(err, [&] {
        out << allocate_line(costs, alpha) << '\n';
        return 0;
    });
}

int cmd_solve(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        deliver(solve_payload(rc), rc.out_path, out);
        return 0;
    });
}

int cmd_verify(const RunConfig& rc, const std::vector<double>& bids, std::ostream& out,
               std::ostream& err) {
    return guard(err, [&] {
        CostVector costs(rc.costs);
        std::vector<double> candidate = bids;
        verify::UtilityFunctional u = verify::UtilityFunctional::dsic(rc.alpha);
        switch (rc.mechanism) {
            case Mech::Dsic:
                if (candidate.empty()) candidate = costs.costs();
                break;
            case Mech::Tullock:
                u = verify::UtilityFunctional::tullock(rc.budget);
                if (candidate.empty())
                    candidate = tullock::equilibrium(costs, tullock::Budget(rc.budget)).bids;
                break;
            case Mech::Pab:
                u = verify::UtilityFunctional::paid_as_bid(rc.alpha);
                if (candidate.empty())
                    candidate = pab::equilibrium(costs, apar::AlphaParam(rc.alpha)).bids;
                break;
        }

        auto reports = verify::check_pne(u, candidate, costs, rc.tolerance);
        bool all_pass = true;
        if (rc.format == "csv") {
            std::ostringstream os;
            os << "agent,tested_bid,tested_utility,best_bid,best_utility,relative_gap,pass\n";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const auto& r = reports[i];
                const bool ok = r.pass(rc.tolerance);
                all_pass = all_pass && ok;
                os << i << ',' << g9(r.tested_bid) << ',' << g9(r.tested_utility) << ','
                   << g9(r.best_bid) << ',' << g9(r.best_utility) << ','
                   << g9(r.relative_gap) << ',' << (ok ? 1 : 0) << '\n';
            }
            deliver(os.str(), rc.out_path, out);
        } else {
            json j;
            j["mechanism"] = mech_name(rc.mechanism);
            j["tolerance"] = rc.tolerance;
            json arr = json::array();
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const auto& r = reports[i];
                const bool ok = r.pass(rc.tolerance);
                all_pass = all_pass && ok;
                arr.push_back({{"agent", i},
                               {"tested_bid", r.tested_bid},
                               {"tested_utility", r.tested_utility},
                               {"best_bid", r.best_bid},
                               {"best_utility", r.best_utility},
                               {"relative_gap", r.relative_gap},
                               {"pass", ok}});
            }
            j["reports"] = arr;
            j["all_pass"] = all_pass;
            deliver(j.dump(2) + "\n", rc.out_path, out);
        }
        return all_pass ? 0 : 3;
    });
}

int cmd_figure(int id, const std::string& out_dir, double fig2_budget, std::ostream& out,
               std::ostream& err) {
    return guard(err, [&] {
        bool any_error = false;
        const std::string csv = figure_csv(id, fig2_budget, &any_error);
        std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
        std::filesystem::create_directories(dir);
        const std::string path = (dir / ("fig" + std::to_string(id) + ".csv")).string();
        write_text(path, csv);
        out << path << '\n';
        if (any_error) {
            err << "numerical failure: figure " << id
                << " has rows flagged in the error column\n";
            return 2;
        }
        return 0;
    });
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    return guard(err, [&] {
        bool any_error = false;
        deliver(sweep_csv(spec, &any_error), out_path, out);
        if (any_error) {
            err << "numerical failure: sweep has rows flagged in the error column\n";
            return 2;
        }
        return 0;
    });
}

namespace {

struct SelfTest {
    std::ostream& out;
    int failures = 0;

    void row(const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS  " : "FAIL  ") << name;
        if (!detail.empty()) out << "  (" << detail << ")";
        out << '\n';
        if (!ok) ++failures;
    }
};

} // namespace

int cmd_selftest(std::uint64_t seed, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        SelfTest t{out};
        std::mt19937_64 rng(seed == 0 ? 0x5eedULL : seed);
        const auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

        {
            double min_slack = std::numeric_limits<double>::infinity();
            for (int n : {2, 4, 8, 16})
                for (double a : {1.5, 2.0, 3.0, 4.0, 5.0}) {
                    auto w = dsic::worst_case_social_cost(n, a);
                    min_slack = std::min(min_slack, w.upper_bound - w.worst_social_cost);
                }
            t.row("theorem1-bound-grid", min_slack >= -1e-9,
                  "min slack " + g9(min_slack));
        }
        {
            double worst_gap = 0.0;
            for (double a : {2.0, 4.0}) {
                std::vector<double> c{1.0, 1.0 + 4.0 * unit(), 1.0 + 4.0 * unit()};
                auto rep = apar::verify_optimality(CostVector(c), apar::AlphaParam(a), 0.005);
                worst_gap = std::max(worst_gap, rep.max_coord_gap);
            }
            t.row("alpha-par-grid-optimality", worst_gap <= 0.005,
                  "max gap " + g9(worst_gap));
        }
        {
            double worst_rel = 0.0;
            for (int k = 0; k < 5; ++k) {
                BidVector b({0.5 + 4.0 * unit(), 0.5 + 4.0 * unit()});
                const double p = dsic::myerson_payment(0, b, apar::AlphaParam(2.0));
                const double D = 1.0 / (b.bids()[1] * b.bids()[1]);
                const double sd = std::sqrt(D), b0 = b.bids()[0];
                const double exact = b0 / (1.0 + D * b0 * b0) +
                                     (std::atan(1.0) * 2.0 - std::atan(sd * b0)) / sd;
                worst_rel = std::max(worst_rel, std::abs(p - exact) / exact);
            }
            t.row("myerson-arctan-oracle", worst_rel <= 1e-8, "max rel " + g9(worst_rel));
        }
        {
            CostVector c({1.0 + unit(), 1.0 + 2.0 * unit(), 1.0 + 3.0 * unit()});
            auto reps = verify::check_pne(verify::UtilityFunctional::dsic(2.5),
                                          c.costs(), c, 1e-5);
            double gap = 0.0;
            for (const auto& r : reps) gap = std::max(gap, r.relative_gap);
            t.row("dsic-truthful-pne", gap <= 1e-5, "max gap " + g9(gap));
        }
        {
            auto s = tullock::equilibrium(CostVector({1.0, 3.0}), tullock::Budget(5.0));
            const double e1 = std::abs(s.v_star - 4.0 / 3.0);
            const double e2 = std::abs(s.bids[0] - 8.0 / 9.0);
            const double e3 = std::abs(s.bids[1] - 4.0 / 9.0);
            t.row("tullock-closed-form", std::max({e1, e2, e3}) <= 1e-10,
                  "max err " + g9(std::max({e1, e2, e3})));
            auto reps = verify::check_pne(verify::UtilityFunctional::tullock(5.0), s.bids,
                                          CostVector({1.0, 3.0}), 1e-6);
            double gap = 0.0;
            for (const auto& r : reps) gap = std::max(gap, r.relative_gap);
            t.row("tullock-pne-cert", gap <= 1e-6, "max gap " + g9(gap));
        }
        {
            auto s1 = pab::equilibrium(CostVector({1.0, 1.0}), apar::AlphaParam(5.0));
            auto s2 = pab::equilibrium(CostVector({1.0, 1.0, 1.0}), apar::AlphaParam(2.0));
            const double e1 = std::abs(s1.bids[0] - 5.0 / 3.0);
            const double e2 = std::abs(s2.bids[0] - 4.0);
            t.row("pab-symmetric-bids", std::max(e1, e2) <= 1e-9,
                  "max err " + g9(std::max(e1, e2)));

            CostVector rc({1.0, 1.0 + 2.0 * unit(), 1.0 + 4.0 * unit()});
            auto s3 = pab::equilibrium(rc, apar::AlphaParam(3.0 + 2.0 * unit()));
            double xmax = 0.0;
            for (double x : s3.allocation.shares()) xmax = std::max(xmax, x);
            t.row("pab-foc-and-cap",
                  s3.residual_foc <= 1e-9 && xmax < 1.0 - 1.0 / 3.0,
                  "foc " + g9(s3.residual_foc));
            auto reps = verify::check_pne(verify::UtilityFunctional::paid_as_bid(3.0),
                                          pab::equilibrium(rc, apar::AlphaParam(3.0)).bids,
                                          rc, 1e-6);
            double gap = 0.0;
            for (const auto& r : reps) gap = std::max(gap, r.relative_gap);
            t.row("pab-pne-cert", gap <= 1e-6, "max gap " + g9(gap));
        }
        {
            bool ok = true;
            double detail = 0.0;
            for (double a : {2.0, 3.0, 4.0, 5.0}) {
                const double amin = pab::phi_min(a).first;
                detail = std::max(detail, std::abs(pab::phi(amin, a) - 4.0 / (a - 1.0)));
                ok = ok && detail <= 1e-9;
                const double cap = 1.0 - 1.0 / a;
                double prev = pab::psi(0.01, a);
                for (int k = 1; k < 50; ++k) {
                    const double x = 0.01 + (cap - 0.02) * k / 49.0;
                    const double cur = pab::psi(x, a);
                    ok = ok && cur < prev;
                    prev = cur;
                }
            }
            t.row("psi-phi-shape", ok, "phi err " + g9(detail));
        }
        {
            auto rep = tullock::sybil_equivalence(2.0, tullock::Budget(5.0), {0.3, 0.2},
                                                  1.0);
            const double diff = std::abs(rep.split_utility - rep.merged_utility);
            auto dsic_rep = dsic::sybil_counterexample(CostVector({1.0, 2.0}),
                                                       apar::AlphaParam(2.0), 2);
            t.row("sybil-contrast", diff <= 1e-12 && dsic_rep.profitable,
                  "tullock diff " + g9(diff) + ", dsic share " +
                      g9(dsic_rep.sybil_allocation));
        }
        {
            auto pab_rep = verify::ex_post_safety_check(
                verify::UtilityFunctional::paid_as_bid(3.0), 2.0, 200, 42);
            auto tul_rep = verify::ex_post_safety_check(
                verify::UtilityFunctional::tullock(5.0), 1.0, 200, 42);
            t.row("ex-post-safety", pab_rep.violations == 0 && tul_rep.violations > 0,
                  "pab min u " + g9(pab_rep.min_utility) + ", tullock violations " +
                      std::to_string(tul_rep.violations));
        }

        out << (t.failures == 0 ? "selftest: all checks passed\n"
                                : "selftest: " + std::to_string(t.failures) +
                                      " check(s) failed\n");
        return t.failures == 0 ? 0 : 3;
    });
}

int cmd_worst_case(const WorstCaseSpec& spec, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        out << worst_case_payload(spec);
        return 0;
    });
}

} // namespace procure::cli
