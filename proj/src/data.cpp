#include "robreg/data.hpp"

#include <cmath>
#include <string>

#include "robreg/kernels.hpp"

namespace robreg {

namespace {

void check_finite_vector(const VectorXd& v, const char* name) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i))) {
      throw ValidationError(std::string(name) + " has a non-finite entry at row " +
                            std::to_string(i));
    }
  }
}

void check_finite_matrix(const MatrixXd& m, const char* name) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        throw ValidationError(std::string(name) + " has a non-finite entry at row " +
                              std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }
}

}  // namespace

Dataset validate_dataset(VectorXd y, MatrixXd D, MatrixXd X) {
  const Eigen::Index n = y.size();
  if (n < 2) {
    throw ValidationError("need at least 2 observations, got " +
                          std::to_string(n));
  }
  if (D.cols() < 1) {
    throw ValidationError("need at least 1 treatment column");
  }
  if (D.rows() != n) {
    throw ValidationError("row count mismatch: y has " + std::to_string(n) +
                          " rows, D has " + std::to_string(D.rows()));
  }
  if (X.cols() > 0 && X.rows() != n) {
    throw ValidationError("row count mismatch: y has " + std::to_string(n) +
                          " rows, X has " + std::to_string(X.rows()));
  }
  check_finite_vector(y, "y");
  check_finite_matrix(D, "D");
  check_finite_matrix(X, "X");
  if (X.cols() == 0) X.resize(n, 0);
  return Dataset{std::move(y), std::move(D), std::move(X)};
}

ColumnScaler column_scaler(const MatrixXd& X) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  VectorXd psi(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    psi(j) = std::sqrt(kernels::sum_sq(X.col(j).data(), n) / double(n));
  }
  return ColumnScaler{std::move(psi)};
}

void validate_plan(const PenaltyPlan& plan, Eigen::Index K) {
  if (plan.lambda_beta.size() != K + 1 || plan.lambda_gamma.size() != K + 1) {
    throw ValidationError("penalty plan must provide K+1 = " +
                          std::to_string(K + 1) + " levels per penalty");
  }
  if ((plan.lambda_beta.array() < 0).any() ||
      (plan.lambda_gamma.array() < 0).any()) {
    throw ValidationError("penalty levels must be nonnegative");
  }
  if (!(plan.c_const > 1.0)) {
    throw ValidationError("penalty constant must exceed 1");
  }
}

}  // namespace robreg
