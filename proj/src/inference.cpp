#include "robreg/inference.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "robreg/kernels.hpp"
#include "robreg/normal.hpp"

namespace robreg {

namespace {

constexpr double kMaxConditionNumber = 1e12;

// E'E with exact symmetry (each off-diagonal entry computed once).
MatrixXd gram_matrix(const MatrixXd& E) {
  const auto n = E.rows();
  const auto K = E.cols();
  MatrixXd gram(K, K);
  for (Eigen::Index j = 0; j < K; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      gram(i, j) = kernels::dot(E.col(i).data(), E.col(j).data(), n);
      gram(j, i) = gram(i, j);
    }
  }
  return gram;
}

// Throws when the K x K Gram matrix is numerically singular.
void check_conditioning(const MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxConditionNumber) {
    throw CollinearityError("first-stage residuals collinear");
  }
}

}  // namespace

VectorXd ols_on_residuals(const VectorXd& xi0, const MatrixXd& E) {
  const auto n = E.rows();
  const auto K = E.cols();
  if (xi0.size() != n) {
    throw ValidationError("ols_on_residuals: length mismatch");
  }
  if (n <= K) {
    throw ValidationError("ols_on_residuals: need more rows than columns");
  }
  check_conditioning(gram_matrix(E));
  Eigen::ColPivHouseholderQR<MatrixXd> qr(E);
  return qr.solve(xi0);
}

CiBounds confidence_intervals(const VectorXd& alpha_hat, double sigma_hat,
                              const MatrixXd& sigma_xi_hat, Eigen::Index n,
                              double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw ValidationError("confidence level must lie in (0, 1)");
  }
  const auto K = alpha_hat.size();
  if (sigma_xi_hat.rows() != K || sigma_xi_hat.cols() != K) {
    throw ValidationError("sigma_xi_hat must be K x K");
  }
  check_conditioning(sigma_xi_hat);
  const MatrixXd inv = sigma_xi_hat.ldlt().solve(MatrixXd::Identity(K, K));
  const double z = norm_quantile(0.5 * (1.0 + level));
  CiBounds ci{VectorXd(K), VectorXd(K)};
  for (Eigen::Index k = 0; k < K; ++k) {
    const double half = z * sigma_hat * std::sqrt(inv(k, k) / double(n));
    ci.lower(k) = alpha_hat(k) - half;
    ci.upper(k) = alpha_hat(k) + half;
  }
  return ci;
}

InferenceResult two_step_fit(const Dataset& data, const PenaltyPlan& plan,
                             const SolverOptions& opts, double level) {
  const auto n = data.n();
  const auto K = data.num_treatments();
  validate_plan(plan, K);
  if (!(level > 0.0 && level < 1.0)) {
    throw ValidationError("confidence level must lie in (0, 1)");
  }

  const ColumnScaler scaler = column_scaler(data.X);

  InferenceResult res;
  res.level = level;
  res.first_stages.reserve(K + 1);
  res.first_stages.push_back(fit_first_stage(data.y, data.X, scaler,
                                             plan.lambda_beta(0),
                                             plan.lambda_gamma(0), opts));
  for (Eigen::Index k = 0; k < K; ++k) {
    res.first_stages.push_back(
        fit_first_stage(data.D.col(k), data.X, scaler, plan.lambda_beta(k + 1),
                        plan.lambda_gamma(k + 1), opts));
  }
  for (const auto& fs : res.first_stages) {
    res.all_converged = res.all_converged && fs.converged;
  }

  const VectorXd& xi0 = res.first_stages[0].xi_hat;
  MatrixXd E(n, K);
  for (Eigen::Index k = 0; k < K; ++k) E.col(k) = res.first_stages[k + 1].xi_hat;

  res.alpha_hat = ols_on_residuals(xi0, E);

  const VectorXd u = xi0 - E * res.alpha_hat;
  res.sigma_hat = std::sqrt(kernels::sum_sq(u.data(), n) / double(n));
  res.sigma_xi_hat = gram_matrix(E) / double(n);

  const CiBounds ci = confidence_intervals(res.alpha_hat, res.sigma_hat,
                                           res.sigma_xi_hat, n, level);
  res.ci_lower = ci.lower;
  res.ci_upper = ci.upper;

  const MatrixXd inv =
      res.sigma_xi_hat.ldlt().solve(MatrixXd::Identity(K, K));
  res.std_errors.resize(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    res.std_errors(k) = res.sigma_hat * std::sqrt(inv(k, k) / double(n));
  }
  return res;
}

}  // namespace robreg
