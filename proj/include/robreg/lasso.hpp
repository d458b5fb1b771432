#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "robreg/errors.hpp"

namespace robreg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Scalar soft-thresholding: 0 when |r| <= tau, else r shrunk toward zero by
// tau. This is the exact minimizer of c -> (r - c)^2 + 2 tau |c|.
inline double soft_threshold(double r, double tau) {
  const double a = std::abs(r) - tau;
  return a > 0.0 ? std::copysign(a, r) : 0.0;
}

// Weighted lasso problem
//   min_b (1/n) ||response - design b||_2^2 + lambda * sum_j weights_j |b_j|
// solved by cyclic coordinate descent. Convergence is certified through the
// subgradient (KKT) conditions of this objective, not coefficient change.
struct LassoProblem {
  const MatrixXd* design = nullptr;  // n x p, column-major
  VectorXd response;                 // length n
  VectorXd weights;                  // length p, nonnegative
  double lambda = 0.0;
  double tol = 1e-8;      // max allowed KKT violation
  int max_sweeps = 1000;
  std::optional<VectorXd> warm_start;
  bool record_objective = false;  // fill LassoSolution::objective_trace
};

struct LassoSolution {
  VectorXd coef;
  int sweeps_used = 0;
  double max_kkt_violation = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // per sweep, when recorded
};

// KKT violation of the weighted-lasso objective at `coef` given the current
// residual r = response - design*coef:
//   active j:   |(2/n) x_j'r - lambda w_j sign(b_j)|
//   inactive j: max(0, |(2/n) x_j'r| - lambda w_j)
double lasso_kkt_violation(const MatrixXd& design, const VectorXd& residual,
                           const VectorXd& coef, const VectorXd& weights,
                           double lambda);

LassoSolution lasso_fit(const LassoProblem& problem);

// Variant reusing precomputed (1/n)||x_j||^2 across repeated solves on the
// same design (the alternating outer loop hits the same X every iteration).
LassoSolution lasso_fit(const LassoProblem& problem, const VectorXd& col_sq_means);

}  // namespace robreg
