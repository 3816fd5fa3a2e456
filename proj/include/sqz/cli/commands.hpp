#pragma once

#include "sqz/cli/output.hpp"
#include "sqz/oracle.hpp"

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace sqz::cli {

enum ExitCode : int { ok = 0, validation = 1, verification = 2, numerical = 3 };

// Maps the library's exception types to exit codes and prints the message.
int report_exception(std::ostream& err);

// Output sample times 0, dt, 2 dt, ... with tau_max appended if missed.
std::vector<double> output_times(double tau_max, double dt);

Trajectory analytic_trajectory(const RunConfig& config);
// Rows are appended as the propagation proceeds, so a DomainEscapeError
// leaves the rows computed before the packet reached the edge.
void oracle_trajectory(const RunConfig& config, Trajectory& rows);

// Largest deviation of the grid oracle from the model over the given times:
// absolute for the means, relative for the variances.
struct OracleDeviation {
    double x_abs = 0.0, p_abs = 0.0;
    double var_x_rel = 0.0, var_p_rel = 0.0;
};
OracleDeviation oracle_deviation(const Model& model, InitialPhasePoint point, Squeeze z,
                                 const oracle::SpatialGrid& grid, double dt,
                                 const std::vector<double>& times);
// True when the predicted packet stays resolved on the grid at every time.
bool oracle_admissible(const Model& model, InitialPhasePoint point, Squeeze z,
                       const oracle::SpatialGrid& grid, const std::vector<double>& times);

// Catalog system with every parameter drawn uniformly from [lo, hi].
SystemSpec draw_system(SystemKind kind, std::mt19937_64& rng, double lo, double hi);

struct SimulateResult {
    std::vector<std::string> files;
};
SimulateResult cmd_simulate(const RunConfig& config, std::ostream& log);

struct VerifyOptions {
    bool skip_oracle = false;
    double tol = 1e-9;            // analytic identities
    double ehrenfest_tol = 1e-6;  // finite differences at h = 1e-4
    double oracle_abs_tol = 1e-5;
    double oracle_rel_tol = 1e-4;
    std::size_t samples = 200;
    unsigned seed = 20240601;
    // Test hook: replaces transfer_matrix inside the Ehrenfest and symplectic checks.
    std::function<Symplectic2(const AuxiliaryBasis&, double)> transfer;
};

struct CheckResult {
    std::string check;
    std::string system;
    bool passed = false;
    double max_error = 0.0;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> results;
    bool all_passed() const;
    void print(std::ostream& out) const;
};

VerifyReport run_verification(const VerifyOptions& options);
int cmd_verify(const VerifyOptions& options, std::ostream& out);

// "name=a:b:n" (n evenly spaced values) or "name=v1,v2,...".
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};
SweepAxis parse_sweep_axis(const std::string& spec);

struct SweepRow {
    double param1, param2, product_max, product_final;
};

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                                unsigned threads = 0);
void write_sweep_csv(const std::string& path, const std::vector<SweepAxis>& axes,
                     const std::vector<SweepRow>& rows);
SimulateResult cmd_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                         std::ostream& log);

} // namespace sqz::cli
