#pragma once

// Application layer behind the command-line tool: result records, CSV
// emission, single solves, sweeps and the oracle validation suite.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gradcontact/config.hpp"
#include "gradcontact/hertz.hpp"
#include "gradcontact/table_cache.hpp"

namespace gradcontact {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_solver = 3, exit_validation = 4 };

struct ResultRecord {
    ContactProblem<double> input;  // as configured (caller's body numbering)
    bool ok = false;
    std::string error_code;        // empty on success
    std::string error_message;
    bool swapped = false;
    std::string branch;
    double b = 0;
    double delta = 0;
    double p0 = 0;
    std::optional<double> b_star;
    int crossings = 0;
    double endpoint_residual = 0;
    double load_balance_error = 0;
    double truncation_tail = 0;
    double rcond = 0;
    double defining_residual = 0;  // re-verified before the record is written
    int root_iterations = 0;
    int sign_changes = 0;
    long kernel_terms = 0;
    std::vector<std::string> warnings;
    double seconds = 0;
};

/// Model residual of a solution, normalized so it is compared with `tolerance`.
struct ResidualCheck {
    double value;
    double tolerance;
    bool passed() const { return value <= tolerance; }
};

/// Hertz: endpoint series relative to the sum of its term magnitudes (1e-8).
/// JKR: relative stationarity residual (1e-8 closed form, 1e-6 spectral).
ResidualCheck defining_residual(const ContactSolution<double>& s, const KernelTables<double>* tables);

/// Solve one configured problem; failures are captured in the record.
ResultRecord solve_record(const ContactProblem<double>& input, TableCache& cache,
                          std::optional<ContactSolution<double>>* solution = nullptr);

std::string csv_header();
std::string csv_row(const ResultRecord& r);

/// 12-significant-digit rendering used in every CSV file.
std::string fmt12(double v);

/// Writes summary.csv plus traces when requested. Returns an ExitCode.
int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out, TableCache& cache, std::ostream& log);

/// Solves the Cartesian product of the sweep axes with `workers` threads.
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, int workers, TableCache& cache,
              std::ostream& log);

/// Problems for each sweep point, in row order (first axis varies slowest).
std::vector<RunConfig> expand_sweep(const RunConfig& cfg);

struct ValidationCheck {
    std::string name;
    double worst_error = 0;
    double tolerance = 0;
    bool passed = false;
    double seconds = 0;
};

/// Names accepted by the perturbation hook of cmd_validate.
const std::vector<std::string>& validation_check_names();

/// Runs the oracle cross-check suite. `perturb` names one check whose
/// production value is scaled by (1 + 1e-3) before comparison.
std::vector<ValidationCheck> run_validation(const std::string& perturb = "");

int cmd_validate(const std::string& perturb, std::ostream& log);

}  // namespace gradcontact
