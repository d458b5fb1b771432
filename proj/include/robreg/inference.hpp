#pragma once

#include <vector>

#include <Eigen/Core>

#include "robreg/data.hpp"
#include "robreg/sqrt_lasso.hpp"

namespace robreg {

// Output of the two-step estimator: K+1 first-stage fits, OLS of the outcome
// residuals on the treatment residuals, and asymptotic normal confidence
// intervals. Critical values are normal, not t, and sigma_hat^2 uses
// divisor n with no degrees-of-freedom correction.
struct InferenceResult {
  VectorXd alpha_hat;    // length K
  double sigma_hat = 0.0;
  MatrixXd sigma_xi_hat;  // K x K residual second-moment matrix
  VectorXd std_errors;
  VectorXd ci_lower;
  VectorXd ci_upper;
  double level = 0.95;
  std::vector<FirstStageFit> first_stages;  // index 0: outcome, 1..K: treatments
  bool all_converged = true;
};

// OLS coefficients of xi0 on the columns of E via rank-revealing QR.
// Throws CollinearityError when E'E is numerically singular (condition
// number above 1e12).
VectorXd ols_on_residuals(const VectorXd& xi0, const MatrixXd& E);

struct CiBounds {
  VectorXd lower;
  VectorXd upper;
};

// Two-sided normal intervals alpha_k -+ z_{(1+level)/2} sigma sqrt((Sigma^-1)_kk / n).
CiBounds confidence_intervals(const VectorXd& alpha_hat, double sigma_hat,
                              const MatrixXd& sigma_xi_hat, Eigen::Index n,
                              double level);

// Full pipeline: K+1 robust square-root-lasso first stages, OLS on the
// residuals, normal confidence intervals.
InferenceResult two_step_fit(const Dataset& data, const PenaltyPlan& plan,
                             const SolverOptions& opts = {},
                             double level = 0.95);

}  // namespace robreg
