#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chromlc/compiler.hpp"
#include "chromlc/hamiltonian.hpp"

namespace chromlc {

// Worker count for trial-level parallelism: CHROMLC_THREADS if set and
// positive, else the hardware concurrency.
int default_thread_count();

// ---- compile convergence ----------------------------------------------------

struct ConvergenceRow {
  double epsilon = 0;
  double error = 0;  // spectral distance, or the fidelity proxy above 6 qubits
  std::size_t steps = 0;
  double weighted_depth = 0;
  double index_gap = 0;  // |weighted depth - I|
  double wall_seconds = 0;
};

struct ConvergenceOptions {
  double reference_tol = 1e-10;
  int fidelity_states = 20;  // used when n > 6
  std::uint64_t seed = 0;
  // Samples per segment for the reference value of I (exact for
  // piecewise-constant schedules regardless).
  int index_samples = 2048;
  int threads = 1;
};

struct ConvergenceStudy {
  // "spectral" (operator-norm distance of full unitaries) or "fidelity"
  // (max state distance over random inputs; a lower bound on the former).
  std::string metric;
  double integrated_index = 0;
  double index_error = 0;
  std::vector<ConvergenceRow> rows;
};

// Throws BadParams unless epsilons are positive and strictly decreasing.
ConvergenceStudy convergence_study(const HamiltonianSchedule& s, const std::vector<double>& epsilons,
                                   const ConvergenceOptions& options = {});

struct RatioCheck {
  bool passed = true;
  std::vector<double> ratios;  // error[i] / error[i+1] for the checked pairs
  std::string message;
};

// First-order convergence: every consecutive ratio error[i]/error[i+1] with
// error[i] below `active_below` must lie in [lo, hi]. Pairs where both errors
// sit under `floor` are exact and skipped.
RatioCheck check_ratios(const std::vector<double>& errors, double lo = 1.7, double hi = 2.3,
                        double active_below = 1e-2, double floor = 1e-9);

// ---- variance bound ---------------------------------------------------------

struct VarianceTrialRecord {
  std::uint64_t seed = 0;
  int n = 0;
  double alpha = 0;  // integrated chromatic index of the evolved schedule
  double variance = 0;
  double bound = 0;
  double slack = 0;
};

// n / (1 - 2 alpha)^4
double variance_bound(int n, double alpha);

struct VarianceOptions {
  bool random_product_states = false;  // default: |0...0>
  double tol = 1e-10;
  int threads = 1;
};

// Random 4-segment Erdos-Renyi (p = 0.4) schedules with unit-norm pair terms,
// scaled in strength so that I equals alpha; random norm-1 mean-field
// observables. Throws BadParams unless 0 <= alpha < 1/2 and 2 <= n <= 12.
std::vector<VarianceTrialRecord> variance_bound_experiment(int n, double alpha, int trials, std::uint64_t seed,
                                                           const VarianceOptions& options = {});

// ---- Trotter baseline vs chromatic compilation ------------------------------

struct MethodRow {
  std::string method;  // "trotter" or "compile"
  double parameter = 0;  // m or epsilon
  std::size_t steps = 0;
  double weighted_depth = 0;
  double error = 0;
};

struct TrotterComparison {
  double integrated_index = 0;
  std::vector<MethodRow> rows;
};

TrotterComparison trotter_comparison(const HamiltonianSchedule& s, const std::vector<int>& m_list,
                                     const std::vector<double>& epsilons, double reference_tol = 1e-10);

// ---- output -----------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_number(double x);
std::string to_csv(const Table& table);  // RFC 4180 quoting, CRLF-free

Table to_table(const ConvergenceStudy& study, bool with_timing = false);
Table to_table(const std::vector<VarianceTrialRecord>& records);
Table to_table(const TrotterComparison& comparison);

// {"study": name, "params": <params_json>, "rows": [{header: value}...]}
// `params_json` must be a JSON object literal.
std::string json_summary(const std::string& study, const std::string& params_json, const Table& table);

}  // namespace chromlc
