#pragma once

#include <Eigen/Core>

#include "robreg/errors.hpp"

namespace robreg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// One regression problem: outcome y (n), treatments D (n x K), controls X
// (n x p). Immutable after construction; there is no intercept anywhere —
// callers wanting one append a constant column to X.
struct Dataset {
  VectorXd y;
  MatrixXd D;
  MatrixXd X;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index num_treatments() const { return D.cols(); }
  Eigen::Index num_controls() const { return X.cols(); }
};

// Checks shapes and finiteness; throws ValidationError naming the offending
// row/column. Never drops rows. Validating an already valid Dataset returns
// an identical copy.
Dataset validate_dataset(VectorXd y, MatrixXd D, MatrixXd X);

// Per-column root-mean-square scales of X: psi_j = sqrt(mean of X(:,j)^2).
// These are the diagonal entries of the penalty scaling matrix applied to
// control coefficients. psi_j == 0 exactly when column j is identically zero;
// such columns are excluded from penalization and pinned to coefficient 0 by
// the solvers.
struct ColumnScaler {
  VectorXd psi;
};

ColumnScaler column_scaler(const MatrixXd& X);

// Penalty levels for the K+1 penalized regressions; index 0 is the outcome
// regression, 1..K the treatment regressions. c_const is the constant the
// default levels were derived from.
struct PenaltyPlan {
  VectorXd lambda_beta;   // length K+1
  VectorXd lambda_gamma;  // length K+1
  double c_const = 1.01;
};

// Shape/positivity checks for a plan against a dataset with K treatments.
void validate_plan(const PenaltyPlan& plan, Eigen::Index K);

}  // namespace robreg
