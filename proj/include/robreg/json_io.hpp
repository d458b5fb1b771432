#pragma once

#include <string>

#include <json.hpp>

#include "robreg/inference.hpp"
#include "robreg/simulate.hpp"

namespace robreg {

// JSON views of the result types, schema_version 1. Matrices are row-major
// nested arrays; numbers are plain doubles.
nlohmann::json inference_result_to_json(const InferenceResult& res);
nlohmann::json monte_carlo_report_to_json(const MonteCarloReport& report);

// One row per replication:
// rep,ok,alpha_robust,ci_lo_robust,ci_hi_robust,hit_robust,converged_robust,
// alpha_biased,ci_lo_biased,ci_hi_biased,hit_biased,converged_biased
std::string rep_records_csv(const MonteCarloReport& report);

}  // namespace robreg
