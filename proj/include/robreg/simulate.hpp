#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robreg/data.hpp"
#include "robreg/inference.hpp"

namespace robreg {

// Monte Carlo design: p i.i.d. standard normal controls; one treatment
//   d_i = x_i'b1 + g_i + e1_i,   b1_k = 10 for columns 6..10 (1-based),
// outcome
//   y_i = alpha d_i + x_i'b + g_i + e_i,  b_k = 10 for columns 1..5,
// with e, e1 i.i.d. standard normal and a common shift g_i = z on outlier
// rows, flagged by the indicator x_{11,i} >= Phi^-1(1 - eps) (so a fraction
// eps of rows carries the shift in both equations). alpha is configurable;
// bias and coverage are location equivariant, so its value does not matter
// and 1.0 is the default.
struct SimulationConfig {
  int n = 500;
  int p = 500;
  double eps = 0.0;        // outlier propensity, in [0, 1)
  double z = 0.0;          // outlier shift magnitude
  double alpha_true = 1.0;
  int reps = 1000;
  std::uint64_t seed = 0;
  double c_const = 1.01;
  double level = 0.95;
  int outer_iters = 10;
  // Multiplier on the default penalty levels. The study runs at half the
  // defaults, i.e. lambda_beta = c sqrt(2 n log p) and
  // lambda_gamma = c sqrt(2 log n): a 10-sparse signal is recoverable only
  // while k (lambda_beta / n)^2 < 1, and the factor-2 slack in the defaults
  // tips the outcome equation past that bound for n <= 500.
  double penalty_scale = 0.5;
  bool include_biased_baseline = true;
  int threads = 1;  // replication workers; results identical for any count
};

void validate_config(const SimulationConfig& cfg);

// Shift vectors actually applied in one draw, for tests.
struct DgpTruth {
  VectorXd gamma_y;
  VectorXd gamma_d;
};

// Draws replication `rep_index` of the design above. The stream is keyed by
// (cfg.seed, rep_index) only: the same pair always yields a bit-identical
// Dataset regardless of worker scheduling.
Dataset generate_dgp(const SimulationConfig& cfg, std::uint64_t rep_index,
                     DgpTruth* truth = nullptr);

struct RepRecord {
  std::uint64_t rep = 0;
  bool ok = false;
  std::string error;  // set when !ok
  double alpha_robust = 0.0, ci_lo_robust = 0.0, ci_hi_robust = 0.0;
  bool hit_robust = false;
  bool converged_robust = false;
  double alpha_biased = 0.0, ci_lo_biased = 0.0, ci_hi_biased = 0.0;
  bool hit_biased = false;
  bool converged_biased = false;
};

struct EstimatorStats {
  double bias = 0.0;
  double variance = 0.0;  // divisor = completed reps, so mse = bias^2 + variance
  double mse = 0.0;
  double coverage = 0.0;
};

struct MonteCarloReport {
  SimulationConfig config;
  EstimatorStats robust;
  EstimatorStats biased;  // meaningful only when the baseline was run
  int reps_completed = 0;
  int failed_reps = 0;
  double wall_seconds = 0.0;
  std::vector<RepRecord> records;  // indexed by replication
};

// Runs cfg.reps replications: robust two-step fit with the default penalty
// levels, plus (optionally) the non-robust baseline with the shift penalty
// set to zero. Failed replications are excluded from the aggregates and
// counted; more than 5% failures raises SolverError.
MonteCarloReport run_monte_carlo(const SimulationConfig& cfg);

}  // namespace robreg
