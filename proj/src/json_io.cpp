#include "robreg/json_io.hpp"

#include <sstream>

#include "robreg/csv.hpp"

namespace robreg {

namespace {

nlohmann::json vector_to_json(const VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

nlohmann::json matrix_to_json(const MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json stats_to_json(const EstimatorStats& st) {
  return {{"bias", st.bias},
          {"variance", st.variance},
          {"mse", st.mse},
          {"coverage", st.coverage}};
}

}  // namespace

nlohmann::json inference_result_to_json(const InferenceResult& res) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t k = 0; k < res.first_stages.size(); ++k) {
    const FirstStageFit& fs = res.first_stages[k];
    int selected = 0;
    for (Eigen::Index j = 0; j < fs.beta_hat.size(); ++j) {
      if (fs.beta_hat(j) != 0.0) ++selected;
    }
    nlohmann::json shifts = nlohmann::json::array();
    for (int i : fs.outlier_set) shifts.push_back(fs.gamma_hat(i));
    stages.push_back({{"k", k},
                      {"role", k == 0 ? "outcome" : "treatment"},
                      {"n_selected_controls", selected},
                      {"outlier_rows", fs.outlier_set},
                      {"outlier_shifts", std::move(shifts)},
                      {"sigma_hat", fs.sigma_hat},
                      {"objective_trace", fs.trace},
                      {"outer_iters", fs.outer_iters},
                      {"converged", fs.converged},
                      {"perfect_fit", fs.perfect_fit}});
  }
  return {{"schema_version", 1},
          {"alpha_hat", vector_to_json(res.alpha_hat)},
          {"std_errors", vector_to_json(res.std_errors)},
          {"ci_lower", vector_to_json(res.ci_lower)},
          {"ci_upper", vector_to_json(res.ci_upper)},
          {"sigma_hat", res.sigma_hat},
          {"sigma_xi_hat", matrix_to_json(res.sigma_xi_hat)},
          {"level", res.level},
          {"all_converged", res.all_converged},
          {"first_stages", std::move(stages)}};
}

nlohmann::json monte_carlo_report_to_json(const MonteCarloReport& report) {
  const SimulationConfig& c = report.config;
  nlohmann::json j = {
      {"schema_version", 1},
      {"config",
       {{"n", c.n},
        {"p", c.p},
        {"eps", c.eps},
        {"z", c.z},
        {"alpha_true", c.alpha_true},
        {"reps", c.reps},
        {"seed", c.seed},
        {"c_const", c.c_const},
        {"level", c.level},
        {"outer_iters", c.outer_iters},
        {"include_biased_baseline", c.include_biased_baseline}}},
      {"robust", stats_to_json(report.robust)},
      {"reps_completed", report.reps_completed},
      {"failed_reps", report.failed_reps}};
  // wall time is reported on the console, not here, so identical runs
  // produce identical files
  if (c.include_biased_baseline) {
    j["biased"] = stats_to_json(report.biased);
  } else {
    j["biased"] = nullptr;
  }
  return j;
}

std::string rep_records_csv(const MonteCarloReport& report) {
  std::ostringstream out;
  out << "rep,ok,alpha_robust,ci_lo_robust,ci_hi_robust,hit_robust,"
         "converged_robust,alpha_biased,ci_lo_biased,ci_hi_biased,hit_biased,"
         "converged_biased\n";
  for (const auto& r : report.records) {
    out << r.rep << ',' << (r.ok ? 1 : 0) << ',' << format_double(r.alpha_robust)
        << ',' << format_double(r.ci_lo_robust) << ','
        << format_double(r.ci_hi_robust) << ',' << (r.hit_robust ? 1 : 0) << ','
        << (r.converged_robust ? 1 : 0) << ',' << format_double(r.alpha_biased)
        << ',' << format_double(r.ci_lo_biased) << ','
        << format_double(r.ci_hi_biased) << ',' << (r.hit_biased ? 1 : 0) << ','
        << (r.converged_biased ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace robreg
