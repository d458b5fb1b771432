#pragma once

namespace robreg {

// Standard normal CDF.
double norm_cdf(double x);

// Standard normal quantile (inverse CDF), Wichura's PPND16 algorithm,
// accurate to ~1e-15 for q in (0, 1). Returns +/-infinity at q = 1 / q = 0.
double norm_quantile(double q);

}  // namespace robreg
