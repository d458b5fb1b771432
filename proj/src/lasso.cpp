#include "robreg/lasso.hpp"

#include <cmath>
#include <string>

#include "robreg/kernels.hpp"

namespace robreg {

namespace {

VectorXd column_sq_means(const MatrixXd& X) {
  const auto n = X.rows();
  VectorXd out(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    out(j) = kernels::sum_sq(X.col(j).data(), n) / double(n);
  }
  return out;
}

void check_problem(const LassoProblem& pb) {
  if (pb.design == nullptr) throw ValidationError("lasso: design is null");
  const auto n = pb.design->rows();
  const auto p = pb.design->cols();
  if (pb.response.size() != n) {
    throw ValidationError("lasso: response length " +
                          std::to_string(pb.response.size()) +
                          " does not match design rows " + std::to_string(n));
  }
  if (pb.weights.size() != p) {
    throw ValidationError("lasso: weights length must equal design columns");
  }
  if (!(pb.tol > 0.0)) throw ValidationError("lasso: tol must be positive");
  if (pb.max_sweeps < 1) throw ValidationError("lasso: max_sweeps must be >= 1");
  if (!(pb.lambda >= 0.0)) throw ValidationError("lasso: lambda must be >= 0");
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!std::isfinite(pb.weights(j)) || pb.weights(j) < 0.0) {
      throw ValidationError("lasso: weight " + std::to_string(j) +
                            " must be finite and >= 0");
    }
  }
  if (pb.warm_start && pb.warm_start->size() != p) {
    throw ValidationError("lasso: warm start length must equal design columns");
  }
}

}  // namespace

double lasso_kkt_violation(const MatrixXd& design, const VectorXd& residual,
                           const VectorXd& coef, const VectorXd& weights,
                           double lambda) {
  const auto n = design.rows();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < design.cols(); ++j) {
    const double g =
        2.0 * kernels::dot(design.col(j).data(), residual.data(), n) / double(n);
    const double lw = lambda * weights(j);
    const double v = coef(j) != 0.0
                         ? std::abs(g - std::copysign(lw, coef(j)))
                         : std::max(0.0, std::abs(g) - lw);
    worst = std::max(worst, v);
  }
  return worst;
}

LassoSolution lasso_fit(const LassoProblem& pb) {
  check_problem(pb);
  return lasso_fit(pb, column_sq_means(*pb.design));
}

LassoSolution lasso_fit(const LassoProblem& pb, const VectorXd& col_sq_means) {
  const MatrixXd& X = *pb.design;
  const auto n = X.rows();
  const auto p = X.cols();

  LassoSolution sol;
  sol.coef = pb.warm_start ? *pb.warm_start : VectorXd::Zero(p);
  VectorXd& b = sol.coef;

  // residual r = response - X b, maintained incrementally
  VectorXd r = pb.response;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (col_sq_means(j) == 0.0) b(j) = 0.0;  // zero column: pinned
    if (b(j) != 0.0) kernels::axpy(-b(j), X.col(j).data(), r.data(), n);
  }

  const double inv_n = 1.0 / double(n);
  for (int sweep = 0; sweep < pb.max_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double q = col_sq_means(j);
      if (q == 0.0) continue;  // zero column: coefficient pinned at 0
      const double g = kernels::dot(X.col(j).data(), r.data(), n) * inv_n;
      const double z = g + q * b(j);
      const double bj = soft_threshold(z, 0.5 * pb.lambda * pb.weights(j)) / q;
      if (bj != b(j)) {
        kernels::axpy(b(j) - bj, X.col(j).data(), r.data(), n);
        b(j) = bj;
      }
    }
    sol.sweeps_used = sweep + 1;

    if (pb.record_objective) {
      const double obj = kernels::sum_sq(r.data(), n) * inv_n +
                         pb.lambda * b.cwiseAbs().dot(pb.weights);
      sol.objective_trace.push_back(obj);
    }

    sol.max_kkt_violation =
        lasso_kkt_violation(X, r, b, pb.weights, pb.lambda);
    if (!std::isfinite(sol.max_kkt_violation)) {
      throw SolverError("lasso: non-finite intermediate at sweep " +
                        std::to_string(sweep + 1));
    }
    if (sol.max_kkt_violation <= pb.tol) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

}  // namespace robreg
