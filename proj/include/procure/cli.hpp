#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace procure::cli {

enum class Mech { Dsic, Tullock, Pab };

Mech parse_mechanism(const std::string& name);  // "dsic" | "tullock" | "pab"
const char* mech_name(Mech m);

// Everything a solve/verify run needs.  Flags override config-file values;
// the parser in tools/ handles that and hands the merged result here.
struct RunConfig {
    Mech mechanism = Mech::Dsic;
    std::vector<double> costs;
    double alpha = 2.0;      // dsic / pab
    double budget = 5.0;     // tullock
    double tolerance = 1e-6; // verify gate
    std::string format = "json";  // "json" | "csv"
    std::string out_path;         // empty = stdout
    std::uint64_t seed = 0;
};

struct SweepSpec {
    Mech mechanism = Mech::Tullock;
    std::string param = "budget";  // "alpha" | "budget" | "C"
    double lo = 1.0;
    double hi = 10.0;
    int steps = 10;
    bool log_scale = false;
    std::vector<double> costs;  // alpha/budget sweeps
    int n = 0;                  // C sweeps; 0 = take costs.size()
    double alpha = 4.0;         // fixed alpha for C sweeps
};

struct WorstCaseSpec {
    Mech mechanism = Mech::Dsic;  // dsic or pab
    int n = 2;
    double alpha = 2.0;
    double C = 2.0;        // pab
    int grid_points = 15;  // pab
    std::vector<double> scan_grid;  // dsic: optional exhaustive scan
};

// Pure payload builders (deterministic; unit tests call these directly).
std::string allocate_line(const std::vector<double>& costs, double alpha);
std::string solve_payload(const RunConfig& rc);   // JSON or CSV per rc.format
std::string figure_csv(int id, double fig2_budget, bool* any_error = nullptr);
std::string sweep_csv(const SweepSpec& spec, bool* any_error = nullptr);
std::string worst_case_payload(const WorstCaseSpec& spec);

// Subcommand entry points; return the process exit code
// (0 ok, 1 domain error, 2 numerical failure, 3 verification failure).
int cmd_allocate(const std::vector<double>& costs, double alpha, std::ostream& out,
                 std::ostream& err);
int cmd_solve(const RunConfig& rc, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& rc, const std::vector<double>& bids, std::ostream& out,
               std::ostream& err);
int cmd_figure(int id, const std::string& out_dir, double fig2_budget, std::ostream& out,
               std::ostream& err);
int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& out,
              std::ostream& err);
int cmd_worst_case(const WorstCaseSpec& spec, std::ostream& out, std::ostream& err);
int cmd_selftest(std::uint64_t seed, std::ostream& out, std::ostream& err);

} // namespace procure::cli
