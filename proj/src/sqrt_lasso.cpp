#include "robreg/sqrt_lasso.hpp"

#include <cmath>
#include <string>

#include "robreg/kernels.hpp"
#include "robreg/lasso.hpp"

namespace robreg {

double default_lambda_beta(double n, double p, double c_const) {
  if (p <= 0.0) return 0.0;
  return 2.0 * c_const * std::sqrt(n) * std::sqrt(2.0 * std::log(p));
}

double default_lambda_gamma(double n, double c_const) {
  return 2.0 * c_const * std::sqrt(2.0 * std::log(n));
}

PenaltyPair default_penalties(int n, int p, double c_const) {
  if (n < 2) throw ValidationError("default_penalties: need n >= 2");
  if (p < 0) throw ValidationError("default_penalties: need p >= 0");
  if (!(c_const > 1.0)) {
    throw ValidationError("default_penalties: c_const must exceed 1");
  }
  return {default_lambda_beta(n, p, c_const),
          default_lambda_gamma(n, c_const)};
}

PenaltyPlan make_default_plan(int n, int p, Eigen::Index K, double c_const) {
  const PenaltyPair pair = default_penalties(n, p, c_const);
  PenaltyPlan plan;
  plan.lambda_beta = VectorXd::Constant(K + 1, pair.lambda_beta);
  plan.lambda_gamma = VectorXd::Constant(K + 1, pair.lambda_gamma);
  plan.c_const = c_const;
  return plan;
}

double objective_eq4(const VectorXd& b, const VectorXd& c,
                     const VectorXd& response, const MatrixXd& X,
                     const ColumnScaler& scaler, double lambda_beta,
                     double lambda_gamma) {
  const auto n = response.size();
  VectorXd r = response - c;
  if (X.cols() > 0) r.noalias() -= X * b;
  const double q = kernels::sum_sq(r.data(), n) / double(n);
  double obj = std::sqrt(q);
  if (b.size() > 0) {
    obj += lambda_beta / double(n) * b.cwiseAbs().dot(scaler.psi);
  }
  obj += lambda_gamma / double(n) * kernels::sum_abs(c.data(), n);
  return obj;
}

FirstStageFit fit_first_stage(const VectorXd& response, const MatrixXd& X,
                              const ColumnScaler& scaler, double lambda_beta,
                              double lambda_gamma, const SolverOptions& opts) {
  const auto n = response.size();
  const auto p = X.cols();
  if (n < 1) throw ValidationError("fit_first_stage: empty response");
  if (X.cols() > 0 && X.rows() != n) {
    throw ValidationError("fit_first_stage: response/X row mismatch");
  }
  if (scaler.psi.size() != p) {
    throw ValidationError("fit_first_stage: scaler length must equal X columns");
  }
  if (!(lambda_beta >= 0.0) || !(lambda_gamma >= 0.0)) {
    throw ValidationError("fit_first_stage: penalties must be >= 0");
  }
  if (opts.max_outer_iters < 1 || !(opts.s_floor > 0.0) ||
      !(opts.objective_tol > 0.0) || !(opts.lasso_tol > 0.0) ||
      opts.lasso_max_sweeps < 1) {
    throw ValidationError("fit_first_stage: solver options must be positive");
  }

  FirstStageFit fit;
  fit.beta_hat = VectorXd::Zero(p);
  fit.gamma_hat = VectorXd::Zero(n);

  const double inv_n = 1.0 / double(n);
  double q0 = kernels::sum_sq(response.data(), n) * inv_n;
  double s = std::sqrt(q0);
  double obj = s;  // objective at (0, 0)
  fit.trace.push_back(obj);

  if (s == 0.0) {
    // all-zero response: (0, 0) attains objective 0
    fit.xi_hat = response;
    fit.sigma_hat = 0.0;
    fit.converged = true;
    fit.perfect_fit = true;
    return fit;
  }
  s = std::max(s, opts.s_floor);

  VectorXd col_sq(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    col_sq(j) = kernels::sum_sq(X.col(j).data(), n) * inv_n;
  }

  VectorXd r(n);
  bool inner_converged = true;
  for (int t = 0; t < opts.max_outer_iters; ++t) {
    // step 1: weighted lasso in b at the current scale
    if (p > 0) {
      LassoProblem pb;
      pb.design = &X;
      pb.response = response - fit.gamma_hat;
      pb.weights = scaler.psi;
      pb.lambda = 2.0 * lambda_beta * s * inv_n;
      pb.tol = opts.lasso_tol;
      pb.max_sweeps = opts.lasso_max_sweeps;
      pb.warm_start = fit.beta_hat;
      LassoSolution inner = lasso_fit(pb, col_sq);
      fit.beta_hat = std::move(inner.coef);
      inner_converged = inner_converged && inner.converged;
    }

    // step 2: closed-form shift update (skipped for the plain square-root
    // lasso, lambda_gamma == 0). The threshold lambda_gamma * s is the exact
    // block minimizer of the joint objective: per observation it solves
    // min_c (r_i - c)^2 / (2 s n) + (lambda_gamma / n) |c|.
    r = response;
    if (p > 0) r.noalias() -= X * fit.beta_hat;
    if (lambda_gamma > 0.0) {
      kernels::soft_threshold_vec(r.data(), lambda_gamma * s,
                                  fit.gamma_hat.data(), n);
    }

    // step 3: rescale
    fit.xi_hat = r - fit.gamma_hat;
    const double q = kernels::sum_sq(fit.xi_hat.data(), n) * inv_n;
    const double sq = std::sqrt(q);
    if (!std::isfinite(sq)) {
      throw SolverError("fit_first_stage: non-finite scale at iteration " +
                        std::to_string(t + 1));
    }
    s = std::max(sq, opts.s_floor);
    fit.sigma_hat = sq;

    double new_obj = sq + lambda_gamma * inv_n *
                              kernels::sum_abs(fit.gamma_hat.data(), n);
    if (p > 0) {
      new_obj += lambda_beta * inv_n * fit.beta_hat.cwiseAbs().dot(scaler.psi);
    }
    fit.trace.push_back(new_obj);
    fit.outer_iters = t + 1;

    if (sq < opts.s_floor) {
      fit.perfect_fit = true;
      fit.converged = true;
      break;
    }
    if (obj - new_obj <= opts.objective_tol * obj) {
      fit.converged = true;
      obj = new_obj;
      break;
    }
    obj = new_obj;
  }

  fit.converged = fit.converged && inner_converged;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (fit.gamma_hat(i) != 0.0) fit.outlier_set.push_back(int(i));
  }
  return fit;
}

}  // namespace robreg
