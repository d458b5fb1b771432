#pragma once

#include <vector>

#include <Eigen/Core>

#include "robreg/data.hpp"

namespace robreg {

// Knobs of the alternating first-stage solver.
struct SolverOptions {
  int max_outer_iters = 10;
  double lasso_tol = 1e-8;      // inner KKT tolerance
  int lasso_max_sweeps = 1000;
  double s_floor = 1e-10;       // lower clamp on the scale iterate s
  double objective_tol = 1e-9;  // stop when the relative objective decrease
                                // falls below this
};

// Result of one outlier-robust square-root-lasso regression
//   min_{b,c} sqrt(Q(b,c)) + (lambda_beta/n) ||Psi b||_1 + (lambda_gamma/n) ||c||_1,
//   Q(b,c) = (1/n) sum_i (response_i - x_i'b - c_i)^2.
struct FirstStageFit {
  VectorXd beta_hat;   // length p
  VectorXd gamma_hat;  // length n, per-observation shifts
  VectorXd xi_hat;     // response - X beta_hat - gamma_hat
  double sigma_hat = 0.0;  // sqrt(Q) at the solution
  std::vector<int> outlier_set;   // i with gamma_hat_i != 0
  std::vector<double> trace;      // objective after each outer iteration
                                  // (trace[0] is the all-zero start)
  bool converged = false;
  bool perfect_fit = false;  // sqrt(Q) fell below s_floor
  int outer_iters = 0;
};

// Default penalty levels
//   lambda_beta  = 2 c sqrt(n) sqrt(2 ln p)   (0 when p == 0)
//   lambda_gamma = 2 c sqrt(2 ln n)
struct PenaltyPair {
  double lambda_beta = 0.0;
  double lambda_gamma = 0.0;
};
PenaltyPair default_penalties(int n, int p, double c_const);

// Same formula on real-valued arguments (used by tests and by callers that
// want penalties for hypothetical sizes).
double default_lambda_beta(double n, double p, double c_const);
double default_lambda_gamma(double n, double c_const);

// Default plan for a dataset with K treatments: every regression k = 0..K
// gets the same default pair.
PenaltyPlan make_default_plan(int n, int p, Eigen::Index K, double c_const);

// Value of the penalized square-root objective at (b, c).
double objective_eq4(const VectorXd& b, const VectorXd& c,
                     const VectorXd& response, const MatrixXd& X,
                     const ColumnScaler& scaler, double lambda_beta,
                     double lambda_gamma);

// Alternating solver: from (b, c) = (0, 0) repeat
//   1. b <- weighted lasso on (X, response - c) with level 2 lambda_beta s / n,
//   2. c_i <- soft_threshold(response_i - x_i'b, lambda_gamma s / n),
//   3. s <- max(sqrt(Q(b, c)), s_floor),
// until the objective stalls or max_outer_iters is reached. Each step is an
// exact block minimization of the equivalent program
//   min_{b,c,s>0} s/2 + Q(b,c)/(2s) + penalties,
// so the objective trace is non-increasing.
//
// lambda_gamma == 0 requests the plain square-root lasso: the shift update is
// skipped and gamma_hat stays identically zero (at level zero the shrinkage
// step would reproduce the residual and zero out Q instead).
FirstStageFit fit_first_stage(const VectorXd& response, const MatrixXd& X,
                              const ColumnScaler& scaler, double lambda_beta,
                              double lambda_gamma,
                              const SolverOptions& opts = {});

}  // namespace robreg
