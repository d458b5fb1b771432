// robreg: outlier-robust high-dimensional regression from the command line.
//
// Subcommands:
//   fit       two-step estimate from a CSV file, JSON/CSV report out
//   simulate  Monte Carlo study of the robust estimator and the non-robust
//             baseline on the built-in design
//   version   print the version string
//
// Exit codes: 0 success, 1 input/validation error, 2 solver failure,
// 3 collinear first-stage residuals.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robreg/csv.hpp"
#include "robreg/inference.hpp"
#include "robreg/json_io.hpp"
#include "robreg/simulate.hpp"
#include "robreg/version.hpp"

namespace {

using robreg::CollinearityError;
using robreg::SolverError;
using robreg::ValidationError;

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t pos = csv.find(',', start);
    const std::string item =
        csv.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!item.empty()) out.push_back(item);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& csv,
                                      const std::string& flag) {
  std::vector<double> out;
  for (const auto& item : split_names(csv)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

struct FitArgs {
  std::string data_path;
  std::string outcome;
  std::string treatments;
  std::string controls = "rest";
  double level = 0.95;
  double penalty_c = 1.01;
  int max_outer_iters = 10;
  double tol = 1e-8;
  std::string lambda_beta;
  std::string lambda_gamma;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_path;
  std::string format = "json";
};

int run_fit(const FitArgs& args) {
  const robreg::CsvTable table = robreg::read_numeric_csv_file(args.data_path);

  const std::vector<std::string> treat_names = split_names(args.treatments);
  if (treat_names.empty()) {
    throw ValidationError("--treatments must name at least one column");
  }
  std::vector<std::string> control_names;
  if (args.controls == "rest") {
    for (const auto& col : table.columns) {
      if (col == args.outcome) continue;
      if (std::find(treat_names.begin(), treat_names.end(), col) !=
          treat_names.end()) {
        continue;
      }
      control_names.push_back(col);
    }
  } else {
    control_names = split_names(args.controls);
  }

  // outcome, treatment and control sets must be disjoint
  std::vector<std::string> all{args.outcome};
  all.insert(all.end(), treat_names.begin(), treat_names.end());
  all.insert(all.end(), control_names.begin(), control_names.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) {
        throw ValidationError("column '" + all[i] +
                              "' used in more than one role");
      }
    }
  }

  const std::size_t n = table.rows.size();
  const std::size_t K = treat_names.size();
  const std::size_t p = control_names.size();

  const std::size_t y_idx = table.column_index(args.outcome);
  std::vector<std::size_t> d_idx, x_idx;
  for (const auto& name : treat_names) d_idx.push_back(table.column_index(name));
  for (const auto& name : control_names) x_idx.push_back(table.column_index(name));

  robreg::VectorXd y(n);
  robreg::MatrixXd D(n, K), X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    y(i) = table.rows[i][y_idx];
    for (std::size_t k = 0; k < K; ++k) D(i, k) = table.rows[i][d_idx[k]];
    for (std::size_t j = 0; j < p; ++j) X(i, j) = table.rows[i][x_idx[j]];
  }

  const robreg::Dataset data =
      robreg::validate_dataset(std::move(y), std::move(D), std::move(X));

  robreg::PenaltyPlan plan = robreg::make_default_plan(
      int(n), int(p), Eigen::Index(K), args.penalty_c);
  auto apply_override = [&](const std::string& text, const std::string& flag,
                            robreg::VectorXd& target) {
    if (text.empty()) return;
    const std::vector<double> vals = parse_double_list(text, flag);
    if (vals.size() == 1) {
      target.setConstant(vals[0]);
    } else if (vals.size() == K + 1) {
      for (std::size_t k = 0; k < vals.size(); ++k) target(k) = vals[k];
    } else {
      throw ValidationError(flag + ": expected 1 or K+1 = " +
                            std::to_string(K + 1) + " values");
    }
  };
  apply_override(args.lambda_beta, "--lambda-beta", plan.lambda_beta);
  apply_override(args.lambda_gamma, "--lambda-gamma", plan.lambda_gamma);

  robreg::SolverOptions opts;
  opts.max_outer_iters = args.max_outer_iters;
  opts.lasso_tol = args.tol;

  const robreg::InferenceResult res =
      robreg::two_step_fit(data, plan, opts, args.level);

  nlohmann::json report = robreg::inference_result_to_json(res);
  report["data"] = args.data_path;
  report["outcome"] = args.outcome;
  report["treatments"] = treat_names;
  report["controls"] = control_names;
  report["seed"] = args.seed;
  report["penalties"] = {{"c_const", args.penalty_c},
                         {"lambda_beta", nlohmann::json::array()},
                         {"lambda_gamma", nlohmann::json::array()}};
  for (Eigen::Index k = 0; k <= Eigen::Index(K); ++k) {
    report["penalties"]["lambda_beta"].push_back(plan.lambda_beta(k));
    report["penalties"]["lambda_gamma"].push_back(plan.lambda_gamma(k));
  }
  report["options"] = {{"max_outer_iters", opts.max_outer_iters},
                       {"lasso_tol", opts.lasso_tol},
                       {"level", args.level}};

  std::string text;
  if (args.format == "json") {
    text = report.dump(2) + "\n";
  } else {
    robreg::CsvTable out;
    out.columns = {"k", "alpha_hat", "std_error", "ci_lower", "ci_upper"};
    for (Eigen::Index k = 0; k < res.alpha_hat.size(); ++k) {
      out.rows.push_back({double(k + 1), res.alpha_hat(k), res.std_errors(k),
                          res.ci_lower(k), res.ci_upper(k)});
    }
    std::ostringstream ss;
    robreg::write_numeric_csv(ss, out);
    text = ss.str();
  }

  if (args.out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(args.out_path, text);
    for (std::size_t k = 0; k < K; ++k) {
      std::printf("%s: alpha_hat = %.6g, %g%% CI [%.6g, %.6g]\n",
                  treat_names[k].c_str(), res.alpha_hat(k), 100 * args.level,
                  res.ci_lower(k), res.ci_upper(k));
    }
    if (!res.all_converged) {
      std::fprintf(stderr,
                   "warning: at least one first stage did not converge\n");
    }
    std::printf("report written to %s\n", args.out_path.c_str());
  }
  return 0;
}

struct SimArgs {
  robreg::SimulationConfig cfg;
  std::string out_path;
  std::string per_rep_csv;
};

int run_simulate(const SimArgs& args) {
  const robreg::MonteCarloReport report = robreg::run_monte_carlo(args.cfg);

  auto print_stat = [&](const char* name, double r, double b) {
    if (args.cfg.include_biased_baseline) {
      std::printf("%-10s %12.6g %12.6g\n", name, r, b);
    } else {
      std::printf("%-10s %12.6g\n", name, r);
    }
  };
  if (args.cfg.include_biased_baseline) {
    std::printf("%-10s %12s %12s\n", "", "robust", "biased");
  } else {
    std::printf("%-10s %12s\n", "", "robust");
  }
  print_stat("bias", report.robust.bias, report.biased.bias);
  print_stat("var", report.robust.variance, report.biased.variance);
  print_stat("MSE", report.robust.mse, report.biased.mse);
  print_stat("Coverage", report.robust.coverage, report.biased.coverage);
  std::printf("%d/%d replications completed in %.1f s\n",
              report.reps_completed, args.cfg.reps, report.wall_seconds);
  if (report.failed_reps > 0) {
    std::printf("failed replications: %d\n", report.failed_reps);
  }

  if (!args.out_path.empty()) {
    write_text_file(args.out_path,
                    robreg::monte_carlo_report_to_json(report).dump(2) + "\n");
  }
  if (!args.per_rep_csv.empty()) {
    write_text_file(args.per_rep_csv, robreg::rep_records_csv(report));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outlier-robust high-dimensional regression"};
  app.require_subcommand(1);

  FitArgs fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "two-step estimate from a CSV file");
  fit_cmd->add_option("--data", fit.data_path, "input CSV path")->required();
  fit_cmd->add_option("--outcome", fit.outcome, "outcome column")->required();
  fit_cmd->add_option("--treatments", fit.treatments,
                      "comma-separated treatment columns (order fixes k)")
      ->required();
  fit_cmd->add_option("--controls", fit.controls,
                      "comma-separated control columns, or 'rest'");
  fit_cmd->add_option("--level", fit.level, "confidence level");
  fit_cmd->add_option("--penalty-c", fit.penalty_c,
                      "constant behind the default penalty levels");
  fit_cmd->add_option("--max-outer-iters", fit.max_outer_iters,
                      "outer iterations per first stage");
  fit_cmd->add_option("--tol", fit.tol, "inner KKT tolerance");
  fit_cmd->add_option("--lambda-beta", fit.lambda_beta,
                      "override: one value or K+1 comma-separated values");
  fit_cmd->add_option("--lambda-gamma", fit.lambda_gamma,
                      "override: one value or K+1 comma-separated values");
  fit_cmd->add_option("--seed", fit.seed, "echoed into the report");
  fit_cmd->add_option("--threads", fit.threads, "reserved; fit is sequential");
  fit_cmd->add_option("--out", fit.out_path,
                      "report path (default: print to stdout)");
  fit_cmd->add_option("--format", fit.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  SimArgs sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo study on the built-in design");
  sim_cmd->add_option("--n", sim.cfg.n, "observations per replication");
  sim_cmd->add_option("--p", sim.cfg.p, "number of controls");
  sim_cmd->add_option("--eps", sim.cfg.eps, "outlier propensity in [0,1)");
  sim_cmd->add_option("--z", sim.cfg.z, "outlier shift magnitude");
  sim_cmd->add_option("--alpha", sim.cfg.alpha_true, "true treatment effect");
  sim_cmd->add_option("--reps", sim.cfg.reps, "replications");
  sim_cmd->add_option("--seed", sim.cfg.seed, "RNG seed");
  sim_cmd->add_option("--penalty-c", sim.cfg.c_const,
                      "constant behind the default penalty levels");
  sim_cmd->add_option("--level", sim.cfg.level, "confidence level");
  sim_cmd->add_option("--max-outer-iters", sim.cfg.outer_iters,
                      "outer iterations per first stage");
  sim_cmd->add_option("--threads", sim.cfg.threads, "replication workers");
  sim_cmd->add_flag_callback(
      "--no-biased",
      [&] { sim.cfg.include_biased_baseline = false; },
      "skip the non-robust baseline");
  sim_cmd->add_option("--out", sim.out_path, "JSON report path");
  sim_cmd->add_option("--per-rep-csv", sim.per_rep_csv,
                      "per-replication CSV path");

  CLI::App* version_cmd = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (version_cmd->parsed()) {
      std::printf("robreg %s\n", robreg::kVersion);
      return 0;
    }
    if (fit_cmd->parsed()) return run_fit(fit);
    if (sim_cmd->parsed()) return run_simulate(sim);
  } catch (const CollinearityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
